//! Combinatorial arrangements of sections of a P^1-bundle over a curve.
//!
//! An arrangement is recorded by the genus `g` of the base curve, the degree
//! `e` of the line bundle, the number `d` of sections and, for every fiber
//! that carries singular points, the contact data of those points. Fibers are
//! numbered from 1 in the order they are listed; sections are numbered
//! `1..=d`, and index `d + 1` is reserved for the negative section `C_0`.

mod cluster;
mod point;
mod pullback;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use cluster::{Cluster, ClusterTree};
pub use point::{ContactPoint, RawPoint};
pub use validate::{ValidationReport, Violation};

use crate::error::{Error, Result};

/// The singular points lying on one fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiberData {
    pub points: Vec<ContactPoint>,
}

impl FiberData {
    pub fn new(points: Vec<ContactPoint>) -> Self {
        FiberData { points }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementSpec {
    pub label: String,
    pub genus: u64,
    pub degree: u64,
    #[serde(rename = "d")]
    pub num_sections: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_p: Option<u64>,
    pub fibers: Vec<FiberData>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    SimpleCrossing,
    Transversal,
    General,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::SimpleCrossing => "simple crossing",
            Classification::Transversal => "transversal",
            Classification::General => "general",
        })
    }
}

/// `k_o`: singular points on the fiber; `k`: points where the arrangement
/// meets the fiber, plus one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberStats {
    pub k_o: u64,
    pub k: u64,
}

/// The set of fibers dropped from the extended arrangement. The empty set is
/// the extended arrangement itself.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtensionChoice {
    pub removed: BTreeSet<usize>,
}

impl ExtensionChoice {
    pub fn extended() -> Self {
        Self::default()
    }

    pub fn removing(fibers: impl IntoIterator<Item = usize>) -> Self {
        ExtensionChoice {
            removed: fibers.into_iter().collect(),
        }
    }

    pub fn epsilon(&self) -> usize {
        self.removed.len()
    }

    pub fn is_extended(&self) -> bool {
        self.removed.is_empty()
    }

    pub fn contains(&self, fiber: usize) -> bool {
        self.removed.contains(&fiber)
    }

    /// Kept fibers in ascending order.
    pub fn kept(&self, delta: usize) -> Vec<usize> {
        (1..=delta).filter(|f| !self.removed.contains(f)).collect()
    }

    pub fn check(&self, spec: &ArrangementSpec) -> Result<()> {
        let delta = spec.delta();
        for &f in &self.removed {
            if f == 0 || f > delta {
                return Err(Error::FiberIndex { index: f, delta });
            }
            if !spec.is_removable(f)? {
                return Err(Error::NotRemovable(f));
            }
        }
        if self.epsilon() + 2 > delta && !self.is_extended() {
            return Err(Error::TooManyRemoved {
                removed: self.epsilon(),
                delta,
            });
        }
        Ok(())
    }
}

impl fmt::Display for ExtensionChoice {
    /// Compact fiber list with runs collapsed, e.g. `{F1..F8, F12}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.removed.is_empty() {
            return f.write_str("{}");
        }
        let v: Vec<usize> = self.removed.iter().copied().collect();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j + 1 < v.len() && v[j + 1] == v[j] + 1 {
                j += 1;
            }
            parts.push(match j - i {
                0 => format!("F{}", v[i]),
                1 => format!("F{}, F{}", v[i], v[j]),
                _ => format!("F{}..F{}", v[i], v[j]),
            });
            i = j + 1;
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl ArrangementSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("arrangement serializes")
    }

    /// Number of fibers carrying singular points.
    pub fn delta(&self) -> usize {
        self.fibers.len()
    }

    pub fn points(&self) -> impl Iterator<Item = &ContactPoint> {
        self.fibers.iter().flat_map(|f| f.points.iter())
    }

    pub fn fiber(&self, index: usize) -> Result<&FiberData> {
        index
            .checked_sub(1)
            .and_then(|i| self.fibers.get(i))
            .ok_or(Error::FiberIndex {
                index,
                delta: self.delta(),
            })
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(report))
        }
    }

    pub fn classify(&self) -> Result<Classification> {
        self.ensure_valid()?;
        if self.points().all(|p| p.pairs().all(|(_, _, c)| c == 1)) {
            return Ok(Classification::SimpleCrossing);
        }
        let transversal = self.points().all(|p| {
            p.pairs().all(|(i, j, m)| {
                m == 1
                    || p
                        .sections()
                        .iter()
                        .any(|&k| k != i && k != j && p.contact(i, k) == m - 1)
            })
        });
        Ok(if transversal {
            Classification::Transversal
        } else {
            Classification::General
        })
    }

    /// Sum over all blow-up centers of the minimal separating resolution of
    /// (number of sections through the center - 1).
    pub fn tau(&self) -> Result<u64> {
        self.ensure_valid()?;
        Ok(self.points().map(|p| ClusterTree::new(p).tau()).sum())
    }

    /// Total number of blow-ups in the minimal separating resolution.
    pub fn num_blowups(&self) -> Result<u64> {
        self.ensure_valid()?;
        Ok(self.points().map(|p| ClusterTree::new(p).num_centers()).sum())
    }

    pub fn fiber_stats(&self, index: usize) -> Result<FiberStats> {
        let fiber = self.fiber(index)?;
        let merged: u64 = fiber.points.iter().map(|p| p.len() as u64 - 1).sum();
        let k = (self.num_sections as u64).saturating_sub(merged) + 1;
        debug_assert!(k <= self.num_sections as u64);
        Ok(FiberStats {
            k_o: fiber.points.len() as u64,
            k,
        })
    }

    /// A fiber may be dropped when every singular point on it has two
    /// sections crossing transversally.
    pub fn is_removable(&self, index: usize) -> Result<bool> {
        let fiber = self.fiber(index)?;
        Ok(fiber
            .points
            .iter()
            .all(|p| p.pairs().any(|(_, _, c)| c == 1)))
    }

    pub fn removable_fibers(&self) -> Vec<usize> {
        (1..=self.delta())
            .filter(|&f| self.is_removable(f).unwrap_or(false))
            .collect()
    }

    /// Same arrangement with sections renamed by `perm` (a permutation of
    /// `1..=d`, given as `perm[i - 1] = new name of section i`) and fibers
    /// listed in the order `fiber_order` (0-based positions).
    pub fn relabeled(&self, perm: &[usize], fiber_order: &[usize]) -> Self {
        let fibers = fiber_order
            .iter()
            .map(|&f| FiberData {
                points: self.fibers[f]
                    .points
                    .iter()
                    .map(|p| p.relabel(|s| if s >= 1 && s <= perm.len() { perm[s - 1] } else { s }))
                    .collect(),
            })
            .collect();
        ArrangementSpec {
            fibers,
            ..self.clone()
        }
    }
}
