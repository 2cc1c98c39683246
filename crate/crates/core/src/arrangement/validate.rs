use std::fmt;

use serde::{Deserialize, Serialize};

use super::ArrangementSpec;
use crate::number::is_prime;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TooFewSections { d: usize },
    ZeroDegree,
    TooFewFibers { delta: usize, required: usize },
    CharacteristicNotPrime { char_p: u64 },
    EmptyFiber { fiber: usize },
    ZeroSectionInPoint { fiber: usize },
    SectionOutOfRange { fiber: usize, section: usize },
    RepeatedSection { fiber: usize, section: usize },
    ContactOutOfRange { fiber: usize, a: usize, b: usize, contact: u64 },
    Ultrametric { fiber: usize, a: usize, b: usize, c: usize },
    FullIntersection { fiber: usize },
    PairSum { a: usize, b: usize, sum: u64, expected: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            TooFewSections { d } => write!(f, "d = {d}, need at least 3 sections"),
            ZeroDegree => write!(f, "degree e must be positive"),
            TooFewFibers { delta, required } => {
                write!(f, "{delta} singular fibers, need at least {required}")
            }
            CharacteristicNotPrime { char_p } => write!(f, "characteristic {char_p} is not prime"),
            EmptyFiber { fiber } => write!(f, "fiber F{fiber} lists no singular points"),
            ZeroSectionInPoint { fiber } => {
                write!(f, "fiber F{fiber}: the negative section C_0 cannot pass through a singular point")
            }
            SectionOutOfRange { fiber, section } => {
                write!(f, "fiber F{fiber}: section index {section} out of range")
            }
            RepeatedSection { fiber, section } => {
                write!(f, "fiber F{fiber}: section S{section} appears in more than one point")
            }
            ContactOutOfRange { fiber, a, b, contact } => {
                write!(f, "fiber F{fiber}: contact of S{a}, S{b} is {contact}, outside 1..=e")
            }
            Ultrametric { fiber, a, b, c } => write!(
                f,
                "fiber F{fiber}: contacts of S{a}, S{b}, S{c} do not attain their minimum twice"
            ),
            FullIntersection { fiber } => {
                write!(f, "fiber F{fiber}: a point lies on every section")
            }
            PairSum { a, b, sum, expected } => write!(
                f,
                "S{a}.S{b}: contacts sum to {sum}, expected {expected}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&lines.join("; "))
    }
}

pub(super) fn validate(spec: &ArrangementSpec) -> ValidationReport {
    let mut out = Vec::new();
    let d = spec.num_sections;
    let e = spec.degree;
    if d < 3 {
        out.push(Violation::TooFewSections { d });
    }
    if e == 0 {
        out.push(Violation::ZeroDegree);
    }
    let required = if spec.genus == 0 { 3 } else { 2 };
    if spec.delta() < required {
        out.push(Violation::TooFewFibers {
            delta: spec.delta(),
            required,
        });
    }
    if let Some(q) = spec.char_p {
        if !is_prime(q) {
            out.push(Violation::CharacteristicNotPrime { char_p: q });
        }
    }

    // pair sums indexed by a * (d + 1) + b
    let mut sums = vec![0u64; (d + 1) * (d + 1)];
    for (idx, fiber) in spec.fibers.iter().enumerate() {
        let fno = idx + 1;
        if fiber.points.is_empty() {
            out.push(Violation::EmptyFiber { fiber: fno });
        }
        let mut seen = vec![false; d + 2];
        for point in &fiber.points {
            for &s in point.sections() {
                if s == d + 1 {
                    out.push(Violation::ZeroSectionInPoint { fiber: fno });
                } else if s == 0 || s > d {
                    out.push(Violation::SectionOutOfRange { fiber: fno, section: s });
                } else if seen[s] {
                    out.push(Violation::RepeatedSection { fiber: fno, section: s });
                } else {
                    seen[s] = true;
                }
            }
            if d >= 1 && point.len() >= d && (1..=d).all(|s| point.contains(s)) {
                out.push(Violation::FullIntersection { fiber: fno });
            }
            for (a, b, c) in point.pairs() {
                if c == 0 || c > e {
                    out.push(Violation::ContactOutOfRange {
                        fiber: fno,
                        a,
                        b,
                        contact: c,
                    });
                }
                if b <= d {
                    sums[a * (d + 1) + b] += c;
                }
            }
            let s = point.sections();
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    for k in j + 1..s.len() {
                        let mut t = [point.contact_at(i, j), point.contact_at(i, k), point.contact_at(j, k)];
                        t.sort_unstable();
                        if t[0] != t[1] {
                            out.push(Violation::Ultrametric {
                                fiber: fno,
                                a: s[i],
                                b: s[j],
                                c: s[k],
                            });
                        }
                    }
                }
            }
        }
    }
    for a in 1..=d {
        for b in a + 1..=d {
            let sum = sums[a * (d + 1) + b];
            if sum != e {
                out.push(Violation::PairSum {
                    a,
                    b,
                    sum,
                    expected: e,
                });
            }
        }
    }
    ValidationReport { violations: out }
}
