use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PartitionSolution;
use crate::error::{Error, Result};
use crate::resolution::{ComponentKind, ResolutionGraph};

/// A multiplicity as a linear form in `x_1..x_d`, `x_{d+1}` and the `y_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    /// Coefficients of `x_1..x_d`.
    pub x: Vec<u64>,
    pub x_zero: u64,
    /// Coefficients of `y_j`, keyed by fiber index.
    pub y: BTreeMap<usize, u64>,
}

impl LinearForm {
    fn zero(d: usize) -> Self {
        LinearForm {
            x: vec![0; d],
            ..Default::default()
        }
    }

    fn add(&mut self, other: &LinearForm) {
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a += b;
        }
        self.x_zero += other.x_zero;
        for (&k, &v) in &other.y {
            *self.y.entry(k).or_insert(0) += v;
        }
    }

    fn minus(&self, other: &LinearForm) -> Option<LinearForm> {
        let mut out = self.clone();
        for (a, b) in out.x.iter_mut().zip(&other.x) {
            *a = a.checked_sub(*b)?;
        }
        out.x_zero = out.x_zero.checked_sub(other.x_zero)?;
        for (&k, &v) in &other.y {
            let slot = out.y.entry(k).or_insert(0);
            *slot = slot.checked_sub(v)?;
        }
        out.y.retain(|_, v| *v != 0);
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().all(|&c| c == 0) && self.x_zero == 0 && self.y.values().all(|&c| c == 0)
    }

    pub fn evaluate(&self, sol: &PartitionSolution) -> u64 {
        let mut total: u64 = self.x.iter().zip(&sol.x).map(|(c, v)| c * v).sum();
        total += self.x_zero * sol.x_zero;
        for (&fiber, &c) in &self.y {
            if let Some(pos) = sol.fibers.iter().position(|&f| f == fiber) {
                total += c * sol.y[pos];
            }
        }
        total
    }

    fn only_x(&self) -> bool {
        self.x_zero == 0 && self.y.values().all(|&c| c == 0)
    }

    fn single_x(&self) -> Option<usize> {
        if !self.only_x() {
            return None;
        }
        let nz: Vec<usize> = (0..self.x.len()).filter(|&i| self.x[i] != 0).collect();
        (nz.len() == 1 && self.x[nz[0]] == 1).then(|| nz[0])
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        let term = |c: u64, name: String| if c == 1 { name } else { format!("{c}{name}") };
        for (i, &c) in self.x.iter().enumerate() {
            if c != 0 {
                terms.push(term(c, format!("x{}", i + 1)));
            }
        }
        if self.x_zero != 0 {
            terms.push(term(self.x_zero, format!("x{}", self.x.len() + 1)));
        }
        for (&j, &c) in &self.y {
            if c != 0 {
                terms.push(term(c, format!("y{j}")));
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Multiplicity of every boundary component in the total transform of
/// `sum x_i S_i + sum y_j F_j`; `None` off the boundary.
pub fn multiplicity_forms(graph: &ResolutionGraph, d: usize) -> Vec<Option<LinearForm>> {
    let mut forms: Vec<Option<LinearForm>> = Vec::with_capacity(graph.components.len());
    for c in &graph.components {
        if !c.in_divisor {
            forms.push(None);
            continue;
        }
        let mut f = LinearForm::zero(d);
        match &c.kind {
            ComponentKind::Section { index } => f.x[index - 1] = 1,
            ComponentKind::ZeroSection => f.x_zero = 1,
            ComponentKind::Fiber { index } => {
                f.y.insert(*index, 1);
            }
            ComponentKind::Exceptional { .. } => {
                for &k in &c.center_through {
                    if let Some(g) = &forms[k] {
                        f.add(g);
                    }
                }
            }
        }
        forms.push(Some(f));
    }
    forms
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityAssignment {
    pub p: u64,
    /// Indexed like the graph components; `None` off the boundary.
    pub nu: Vec<Option<u64>>,
}

pub fn assign_multiplicities(graph: &ResolutionGraph, sol: &PartitionSolution) -> Result<MultiplicityAssignment> {
    let forms = multiplicity_forms(graph, sol.x.len());
    evaluate_forms(graph, &forms, sol)
}

pub(crate) fn evaluate_forms(
    graph: &ResolutionGraph,
    forms: &[Option<LinearForm>],
    sol: &PartitionSolution,
) -> Result<MultiplicityAssignment> {
    let mut nu = Vec::with_capacity(forms.len());
    for (i, f) in forms.iter().enumerate() {
        match f {
            None => nu.push(None),
            Some(f) => {
                let v = f.evaluate(sol);
                if v == 0 || v >= sol.p {
                    return Err(Error::MultiplicityOutOfRange {
                        component: graph.components[i].label(),
                        nu: v,
                        p: sol.p,
                    });
                }
                nu.push(Some(v));
            }
        }
    }
    Ok(MultiplicityAssignment { p: sol.p, nu })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NodeType {
    I,
    II,
    III,
    IV,
    V,
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A node of the reduced boundary with its symbolic multiplicities, ordered
/// as `(a, b)` in the type table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeTemplate {
    pub a: usize,
    pub b: usize,
    pub count: u64,
    pub node_type: NodeType,
    pub form_a: LinearForm,
    pub form_b: LinearForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub a: String,
    pub b: String,
    pub node_type: NodeType,
    pub nu_a: u64,
    pub nu_b: u64,
    pub count: u64,
    /// `p - nu_a^{-1} nu_b mod p`, in `1..p`.
    pub residue: u64,
}

fn untaggable(graph: &ResolutionGraph, a: usize, b: usize) -> Error {
    Error::UntaggableNode(graph.components[a].label(), graph.components[b].label())
}

/// Tags every boundary node with its type, verifying that the multiplicity
/// forms have the shape the type prescribes.
pub fn node_templates(graph: &ResolutionGraph, d: usize, e: u64) -> Result<Vec<NodeTemplate>> {
    let forms = multiplicity_forms(graph, d);
    let mut out = Vec::new();
    for edge in graph.divisor_edges() {
        let (i, j) = (edge.a, edge.b);
        let ki = &graph.components[i].kind;
        let kj = &graph.components[j].kind;
        use ComponentKind::*;
        let rank = |k: &ComponentKind| match k {
            Section { .. } => 0,
            ZeroSection => 1,
            Fiber { .. } => 2,
            Exceptional { .. } => 3,
        };
        // order so that the first component has the larger rank
        let (a0, b0) = if rank(ki) >= rank(kj) { (i, j) } else { (j, i) };
        let (ka, kb) = (&graph.components[a0].kind, &graph.components[b0].kind);
        let fa = forms[a0].clone().expect("boundary component");
        let fb = forms[b0].clone().expect("boundary component");
        let tagged = match (ka, kb) {
            (Section { .. }, Section { .. }) => Some((NodeType::I, a0, b0, fa, fb)),
            (Fiber { .. }, Section { .. }) => Some((NodeType::II, a0, b0, fa, fb)),
            (Fiber { .. }, ZeroSection) => Some((NodeType::III, a0, b0, fa, fb)),
            (Exceptional { .. }, Section { .. }) => {
                let k = fb.single_x().ok_or_else(|| untaggable(graph, a0, b0))?;
                let ok = fa.x_zero == 0
                    && fa.x.iter().all(|&c| c <= e)
                    && fa.x[k] != 0
                    && fa.y.len() <= 1
                    && fa.y.values().all(|&c| c == 1);
                ok.then_some((NodeType::IV, a0, b0, fa, fb))
            }
            (Exceptional { .. }, Fiber { .. }) | (Exceptional { .. }, Exceptional { .. }) => {
                // the shallower component plays the role of a
                let (a, b, fa, fb) = if fa.minus(&fb).is_some() {
                    (b0, a0, fb, fa)
                } else {
                    (a0, b0, fa, fb)
                };
                type_v(&fa, &fb, e).then_some((NodeType::V, a, b, fa, fb))
            }
            _ => None,
        };
        let (node_type, a, b, form_a, form_b) = tagged.ok_or_else(|| untaggable(graph, a0, b0))?;
        out.push(NodeTemplate {
            a,
            b,
            count: edge.count,
            node_type,
            form_a,
            form_b,
        });
    }
    Ok(out)
}

/// `nu_a = n sum_K x_k + z`, `nu_b = sum_K x_k + nu_a` with `0 <= n < e`,
/// `z != 0` free of the `x_k` in `K`, and the `x` coefficients of `z`
/// strictly between 0 and `e`.
fn type_v(fa: &LinearForm, fb: &LinearForm, e: u64) -> bool {
    let Some(diff) = fb.minus(fa) else {
        return false;
    };
    if !diff.only_x() || diff.x.iter().any(|&c| c > 1) {
        return false;
    }
    let k_set: Vec<usize> = (0..diff.x.len()).filter(|&i| diff.x[i] == 1).collect();
    if k_set.is_empty() || fa.x_zero != 0 {
        return false;
    }
    let n = fa.x[k_set[0]];
    if k_set.iter().any(|&k| fa.x[k] != n) || n >= e {
        return false;
    }
    let mut z = fa.clone();
    for &k in &k_set {
        z.x[k] = 0;
    }
    if z.is_zero() {
        return false;
    }
    z.x.iter().all(|&c| c == 0 || c < e) && z.y.values().all(|&c| c <= 1)
}

/// Residue `p - nu_a^{-1} nu_b` reduced into `1..p`.
pub fn node_residue(nu_a: u64, nu_b: u64, p: u64) -> Result<u64> {
    let inv = crate::number::mod_inverse(nu_a, p)?;
    let prod = (inv as u128 * nu_b as u128 % p as u128) as u64;
    let q = (p - prod) % p;
    if q == 0 {
        return Err(Error::NotInvertible { v: nu_b, p });
    }
    Ok(q)
}

pub fn classify_nodes(
    graph: &ResolutionGraph,
    d: usize,
    e: u64,
    assignment: &MultiplicityAssignment,
) -> Result<Vec<NodeRecord>> {
    node_templates(graph, d, e)?
        .into_iter()
        .map(|t| {
            let nu_a = assignment.nu[t.a].expect("boundary component");
            let nu_b = assignment.nu[t.b].expect("boundary component");
            Ok(NodeRecord {
                a: graph.components[t.a].label(),
                b: graph.components[t.b].label(),
                node_type: t.node_type,
                nu_a,
                nu_b,
                count: t.count,
                residue: node_residue(nu_a, nu_b, assignment.p)?,
            })
        })
        .collect()
}
