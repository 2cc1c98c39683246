//! Cluster trees of singular points.
//!
//! The sections through a point split into nested clusters according to their
//! pairwise contact orders: at depth `m` two sections belong to the same
//! cluster iff their contact is at least `m`. Each cluster with two or more
//! members is the center of one blow-up in the minimal separating sequence.
//!
//! A cluster whose membership does not change over several consecutive depths
//! (a tangency tower) is stored once, as a run `first_depth..=last_depth`.

use super::ContactPoint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    /// Sorted section indices.
    pub members: Vec<usize>,
    pub first_depth: u64,
    pub last_depth: u64,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

impl Cluster {
    /// Number of blow-up centers in this run.
    pub fn run_length(&self) -> u64 {
        self.last_depth - self.first_depth + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterTree {
    nodes: Vec<Cluster>,
}

impl ClusterTree {
    pub fn new(point: &ContactPoint) -> Self {
        let mut tree = ClusterTree { nodes: Vec::new() };
        tree.grow(point, point.sections().to_vec(), 1, None);
        tree
    }

    fn grow(&mut self, point: &ContactPoint, members: Vec<usize>, depth: u64, parent: Option<usize>) {
        debug_assert!(members.len() >= 2);
        let min_contact = pairs(&members)
            .map(|(a, b)| point.contact(a, b))
            .min()
            .unwrap_or(depth)
            .max(depth);
        let id = self.nodes.len();
        self.nodes.push(Cluster {
            members: members.clone(),
            first_depth: depth,
            last_depth: min_contact,
            parent,
            children: Vec::new(),
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(id);
        }
        for part in split(point, &members, min_contact + 1) {
            if part.len() >= 2 {
                self.grow(point, part, min_contact + 1, Some(id));
            }
        }
    }

    pub fn nodes(&self) -> &[Cluster] {
        &self.nodes
    }

    pub fn root(&self) -> &Cluster {
        &self.nodes[0]
    }

    /// Sum over blow-up centers of (sections through the center - 1).
    pub fn tau(&self) -> u64 {
        self.nodes
            .iter()
            .map(|c| (c.members.len() as u64 - 1) * c.run_length())
            .sum()
    }

    pub fn num_centers(&self) -> u64 {
        self.nodes.iter().map(Cluster::run_length).sum()
    }

    /// Clusters with at least two members present at depth `m`.
    pub fn clusters_at_depth(&self, m: u64) -> Vec<&[usize]> {
        self.nodes
            .iter()
            .filter(|c| c.first_depth <= m && m <= c.last_depth)
            .map(|c| c.members.as_slice())
            .collect()
    }

    /// Sections of `node` that are separated from every other member right
    /// after its last blow-up.
    pub fn leaving(&self, node: usize) -> Vec<usize> {
        let cluster = &self.nodes[node];
        cluster
            .members
            .iter()
            .copied()
            .filter(|s| {
                !cluster
                    .children
                    .iter()
                    .any(|&c| self.nodes[c].members.contains(s))
            })
            .collect()
    }
}

fn pairs(members: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    members
        .iter()
        .enumerate()
        .flat_map(move |(i, &a)| members[i + 1..].iter().map(move |&b| (a, b)))
}

/// Connected components of the relation `contact >= level`.
fn split(point: &ContactPoint, members: &[usize], level: u64) -> Vec<Vec<usize>> {
    let n = members.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        let mut j = i;
        while label[j] != r {
            let next = label[j];
            label[j] = r;
            j = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if point.contact(members[i], members[j]) >= level {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut label, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(members[i]);
    }
    groups
}
