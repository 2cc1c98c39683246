use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The sections through one singular point together with their pairwise
/// local intersection multiplicities.
///
/// Sections are stored sorted; `contact` is the full symmetric matrix in that
/// order, with zeros on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint", into = "RawPoint")]
pub struct ContactPoint {
    sections: Vec<usize>,
    contact: Vec<Vec<u64>>,
}

/// Exchange form: `contact[i]` lists the contacts of `sections[i]` with
/// `sections[0..i]`, so the first row is empty.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawPoint {
    pub sections: Vec<usize>,
    pub contact: Vec<Vec<u64>>,
}

impl ContactPoint {
    /// Builds a point from a lower-triangular contact list in the order the
    /// sections are given.
    pub fn new(sections: Vec<usize>, lower: Vec<Vec<u64>>) -> Result<Self> {
        let n = sections.len();
        if n < 2 {
            return Err(Error::MalformedPoint(format!(
                "a singular point needs at least two sections, got {n}"
            )));
        }
        if lower.len() != n {
            return Err(Error::MalformedPoint(format!(
                "{} contact rows for {n} sections",
                lower.len()
            )));
        }
        for (i, row) in lower.iter().enumerate() {
            if row.len() != i {
                return Err(Error::MalformedPoint(format!(
                    "contact row {i} has {} entries, expected {i}",
                    row.len()
                )));
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| sections[i]);
        if order.windows(2).any(|w| sections[w[0]] == sections[w[1]]) {
            return Err(Error::MalformedPoint(format!(
                "repeated section in {sections:?}"
            )));
        }
        let entry = |i: usize, j: usize| -> u64 {
            match i.cmp(&j) {
                std::cmp::Ordering::Greater => lower[i][j],
                std::cmp::Ordering::Less => lower[j][i],
                std::cmp::Ordering::Equal => 0,
            }
        };
        let contact = order
            .iter()
            .map(|&i| order.iter().map(|&j| entry(i, j)).collect())
            .collect();
        let sections = order.iter().map(|&i| sections[i]).collect();
        Ok(ContactPoint { sections, contact })
    }

    /// Every pair of sections meets with the same contact order `m`.
    pub fn uniform(sections: Vec<usize>, m: u64) -> Result<Self> {
        Self::from_fn(sections, |_, _| m)
    }

    /// Contacts given by a function of the (smaller, larger) section pair.
    pub fn from_fn(sections: Vec<usize>, f: impl Fn(usize, usize) -> u64) -> Result<Self> {
        let lower = (0..sections.len())
            .map(|i| {
                (0..i)
                    .map(|j| {
                        let (a, b) = (sections[i].min(sections[j]), sections[i].max(sections[j]));
                        f(a, b)
                    })
                    .collect()
            })
            .collect();
        Self::new(sections, lower)
    }

    pub fn sections(&self) -> &[usize] {
        &self.sections
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    pub fn contains(&self, section: usize) -> bool {
        self.sections.binary_search(&section).is_ok()
    }

    /// Local intersection multiplicity of two sections here; 0 if either is
    /// absent or they coincide.
    pub fn contact(&self, a: usize, b: usize) -> u64 {
        match (self.sections.binary_search(&a), self.sections.binary_search(&b)) {
            (Ok(i), Ok(j)) => self.contact[i][j],
            _ => 0,
        }
    }

    /// Contact between the sections at positions `i` and `j` of `sections()`.
    pub(crate) fn contact_at(&self, i: usize, j: usize) -> u64 {
        self.contact[i][j]
    }

    /// All unordered pairs `(a, b, contact)` with `a < b`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        let n = self.sections.len();
        (0..n).flat_map(move |i| {
            (i + 1..n).map(move |j| (self.sections[i], self.sections[j], self.contact[i][j]))
        })
    }

    pub(crate) fn map_contacts(&self, f: impl Fn(u64) -> u64) -> Self {
        ContactPoint {
            sections: self.sections.clone(),
            contact: self
                .contact
                .iter()
                .map(|row| row.iter().map(|&c| if c == 0 { 0 } else { f(c) }).collect())
                .collect(),
        }
    }

    pub(crate) fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        let sections: Vec<usize> = self.sections.iter().map(|&s| map(s)).collect();
        let lower = (0..sections.len())
            .map(|i| (0..i).map(|j| self.contact[i][j]).collect())
            .collect();
        Self::new(sections, lower).expect("relabelling is a bijection")
    }
}

impl TryFrom<RawPoint> for ContactPoint {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self> {
        ContactPoint::new(raw.sections, raw.contact)
    }
}

impl From<ContactPoint> for RawPoint {
    fn from(p: ContactPoint) -> Self {
        let contact = (0..p.sections.len())
            .map(|i| p.contact[i][..i].to_vec())
            .collect();
        RawPoint {
            sections: p.sections,
            contact,
        }
    }
}
