//! Dual graph of the minimal log resolution of a (partially) extended
//! arrangement, obtained by simulating the blow-ups at every singular point.
//!
//! Points are processed fiber by fiber in ascending order, and within a point
//! along its cluster tree. The fibers removed by an [`ExtensionChoice`] stay in
//! the graph as components outside the boundary divisor, so that their
//! singular points are still resolved and fiber classes can be audited.

mod dot;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use dot::to_dot;

use crate::arrangement::{ArrangementSpec, ClusterTree, ExtensionChoice};
use crate::error::Result;
use crate::log_chern::LogChernPair;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentKind {
    Section { index: usize },
    /// The negative section `C_0`, numbered `d + 1`.
    ZeroSection,
    Fiber { index: usize },
    /// Exceptional curve of the blow-up at depth `depth` over the `point`-th
    /// singular point (1-based) of fiber `fiber`; `sections` pass through the
    /// center.
    Exceptional {
        fiber: usize,
        point: usize,
        depth: u64,
        sections: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    pub self_int: i64,
    pub genus: u64,
    /// Whether the component belongs to the boundary divisor `D`.
    pub in_divisor: bool,
    /// For exceptional curves, the earlier components whose strict
    /// transforms pass through the center of the blow-up.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub center_through: Vec<usize>,
}

impl Component {
    pub fn is_exceptional(&self) -> bool {
        matches!(self.kind, ComponentKind::Exceptional { .. })
    }

    pub fn label(&self) -> String {
        self.kind.to_string()
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Section { index } => write!(f, "S{index}"),
            ComponentKind::ZeroSection => f.write_str("C0"),
            ComponentKind::Fiber { index } => write!(f, "F{index}"),
            ComponentKind::Exceptional {
                fiber,
                point,
                depth,
                sections,
            } => {
                let s: Vec<String> = sections.iter().map(|s| s.to_string()).collect();
                write!(f, "E{fiber}.{point}.{depth}[{}]", s.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionGraph {
    pub genus: u64,
    pub components: Vec<Component>,
    /// Intersections between distinct components, `a < b`, over all
    /// components (including removed fibers).
    pub edges: Vec<Edge>,
    /// Number of blow-ups.
    pub s: u64,
    /// Nodes of the reduced boundary divisor.
    pub t2: u64,
}

struct Builder {
    components: Vec<Component>,
    edges: BTreeMap<(usize, usize), u64>,
}

impl Builder {
    fn add(&mut self, kind: ComponentKind, self_int: i64, genus: u64, in_divisor: bool) -> usize {
        self.components.push(Component {
            kind,
            self_int,
            genus,
            in_divisor,
            center_through: Vec::new(),
        });
        self.components.len() - 1
    }

    fn meet(&mut self, a: usize, b: usize) {
        let key = (a.min(b), a.max(b));
        *self.edges.entry(key).or_insert(0) += 1;
    }
}

pub fn build_resolution(spec: &ArrangementSpec, choice: &ExtensionChoice) -> Result<ResolutionGraph> {
    spec.ensure_valid()?;
    choice.check(spec)?;
    let d = spec.num_sections;
    let e = spec.degree as i64;
    let g = spec.genus;
    let mut b = Builder {
        components: Vec::new(),
        edges: BTreeMap::new(),
    };
    // indices 0..d are sections, d is C0, d+1.. are fibers
    for i in 1..=d {
        b.add(ComponentKind::Section { index: i }, e, g, true);
    }
    let zero = b.add(ComponentKind::ZeroSection, -e, g, true);
    let fiber_ids: Vec<usize> = (1..=spec.delta())
        .map(|j| b.add(ComponentKind::Fiber { index: j }, 0, 0, !choice.contains(j)))
        .collect();
    let section_id = |i: usize| i - 1;

    let mut s = 0;
    for (jdx, fiber) in spec.fibers.iter().enumerate() {
        let fid = fiber_ids[jdx];
        b.meet(fid, zero);
        let mut on_point = vec![false; d + 1];
        for (pdx, point) in fiber.points.iter().enumerate() {
            for &i in point.sections() {
                on_point[i] = true;
            }
            let tree = ClusterTree::new(point);
            // last exceptional of every cluster, filled in tree order
            let mut last_of: Vec<usize> = Vec::with_capacity(tree.nodes().len());
            for (cid, cluster) in tree.nodes().iter().enumerate() {
                let mut prev = cluster.parent.map(|p| last_of[p]);
                for depth in cluster.first_depth..=cluster.last_depth {
                    let mut through: Vec<usize> = cluster.members.iter().map(|&i| section_id(i)).collect();
                    if let Some(p) = prev {
                        through.push(p);
                    }
                    if depth == 1 {
                        through.push(fid);
                    }
                    for &c in &through {
                        b.components[c].self_int -= 1;
                    }
                    let ex = b.add(
                        ComponentKind::Exceptional {
                            fiber: jdx + 1,
                            point: pdx + 1,
                            depth,
                            sections: cluster.members.clone(),
                        },
                        -1,
                        0,
                        true,
                    );
                    b.components[ex].center_through = through;
                    s += 1;
                    match prev {
                        Some(p) => b.meet(p, ex),
                        None => b.meet(fid, ex),
                    }
                    prev = Some(ex);
                }
                let last = prev.expect("clusters have positive run length");
                last_of.push(last);
                for i in tree.leaving(cid) {
                    b.meet(section_id(i), last);
                }
            }
        }
        for i in 1..=d {
            if !on_point[i] {
                b.meet(fid, section_id(i));
            }
        }
    }

    let edges: Vec<Edge> = b
        .edges
        .into_iter()
        .map(|((a, c), count)| Edge { a, b: c, count })
        .collect();
    let t2 = edges
        .iter()
        .filter(|ed| b.components[ed.a].in_divisor && b.components[ed.b].in_divisor)
        .map(|ed| ed.count)
        .sum();
    Ok(ResolutionGraph {
        genus: g,
        components: b.components,
        edges,
        s,
        t2,
    })
}

impl ResolutionGraph {
    pub fn divisor(&self) -> impl Iterator<Item = (usize, &Component)> {
        self.components.iter().enumerate().filter(|(_, c)| c.in_divisor)
    }

    /// Edges between two boundary components.
    pub fn divisor_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges
            .iter()
            .filter(|e| self.components[e.a].in_divisor && self.components[e.b].in_divisor)
    }

    pub fn find(&self, kind: &ComponentKind) -> Option<usize> {
        self.components.iter().position(|c| &c.kind == kind)
    }

    pub fn neighbors(&self, id: usize) -> Vec<(usize, u64)> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e.a == id {
                    Some((e.b, e.count))
                } else if e.b == id {
                    Some((e.a, e.count))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Intersection number of two divisors given as coefficient vectors over
    /// the components.
    pub fn intersect(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut total: i64 = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| x[i] * y[i] * c.self_int)
            .sum();
        for e in &self.edges {
            let c = e.count as i64;
            total += c * (x[e.a] * y[e.b] + x[e.b] * y[e.a]);
        }
        total
    }

    /// Coefficients of the total transform of a divisor on the ruled surface
    /// given by its coefficients on the non-exceptional components.
    pub fn total_transform(&self, base: impl Fn(&Component) -> i64) -> Vec<i64> {
        let mut coeff = vec![0i64; self.components.len()];
        for (i, c) in self.components.iter().enumerate() {
            coeff[i] = if c.is_exceptional() {
                c.center_through.iter().map(|&k| coeff[k]).sum()
            } else {
                base(c)
            };
        }
        coeff
    }

    /// The same resolution with the boundary recomputed for another removal
    /// set. Removed fibers stay in the graph, so only the boundary flags and
    /// `t2` change.
    pub fn with_boundary(&self, choice: &ExtensionChoice) -> ResolutionGraph {
        let mut out = self.clone();
        for c in &mut out.components {
            if let ComponentKind::Fiber { index } = c.kind {
                c.in_divisor = !choice.contains(index);
            }
        }
        out.t2 = out.divisor_edges().map(|e| e.count).sum();
        out
    }

    /// Coefficient vector of the total transform of fiber `index`.
    pub fn fiber_class(&self, index: usize) -> Vec<i64> {
        self.total_transform(|c| i64::from(c.kind == ComponentKind::Fiber { index }))
    }
}

/// `(c1^2(Y), c2(Y)) = (8(1 - g) - s, 4(1 - g) + s)`.
pub fn chern_of_y(graph: &ResolutionGraph) -> (i64, i64) {
    let base = 1 - graph.genus as i64;
    (8 * base - graph.s as i64, 4 * base + graph.s as i64)
}

/// Log Chern numbers from the boundary divisor:
/// `c1^2(Y) - sum D_i^2 + 2 t2 + 4 sum (g_i - 1)` and
/// `c2(Y) + t2 + 2 sum (g_i - 1)`.
pub fn log_chern_via_graph(graph: &ResolutionGraph) -> LogChernPair {
    let (c1, c2) = chern_of_y(graph);
    let mut sum_sq: i64 = 0;
    let mut sum_genus: i64 = 0;
    for (_, comp) in graph.divisor() {
        sum_sq += comp.self_int;
        sum_genus += comp.genus as i64 - 1;
    }
    let t2 = graph.t2 as i64;
    LogChernPair::new(
        BigInt::from(c1 - sum_sq + 2 * t2 + 4 * sum_genus),
        BigInt::from(c2 + t2 + 2 * sum_genus),
    )
}
