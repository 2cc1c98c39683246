use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::nodes::{evaluate_forms, multiplicity_forms, node_residue, node_templates, LinearForm, NodeRecord, NodeTemplate};
use super::PartitionSolution;
use crate::arrangement::{ArrangementSpec, ExtensionChoice};
use crate::error::{Error, Result};
use crate::exact;
use crate::log_chern::{log_chern_partial, LogChernPair};
use crate::number::{hj_length, is_bad, twelve_p_dedekind};
use crate::resolution::{build_resolution, chern_of_y, ResolutionGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub p: u64,
    #[serde(with = "exact::big_rational")]
    pub c1sq: BigRational,
    #[serde(with = "exact::big_rational")]
    pub c2: BigRational,
    #[serde(with = "exact::big_rational")]
    pub ccf: BigRational,
    #[serde(with = "exact::big_rational")]
    pub lcf: BigRational,
    /// No node residue lies in the bad set.
    pub good: bool,
    /// Number of nodes (with multiplicity) whose residue is bad.
    pub bad_nodes: u64,
    #[serde(with = "exact::big_rational")]
    pub ratio: BigRational,
}

/// `(CCF, LCF) = (sum count c(q, p), sum count l(q, p))` over node residues.
pub fn ccf_lcf(nodes: &[NodeRecord], p: u64) -> Result<(BigRational, BigRational)> {
    let mut twelve_ps: i128 = 0;
    let mut lsum: i128 = 0;
    for n in nodes {
        let c = n.count as i128;
        twelve_ps += c * twelve_p_dedekind(n.residue, p)?;
        lsum += c * hj_length(n.residue, p)? as i128;
    }
    let lcf = BigRational::from_integer(BigInt::from(lsum));
    let ccf = BigRational::new(BigInt::from(twelve_ps), BigInt::from(p)) + &lcf;
    Ok((ccf, lcf))
}

/// Chern numbers of the `p`-th root cover from the log Chern numbers, the
/// Chern numbers of the resolution and the error terms.
pub fn root_cover_chern(
    log: &LogChernPair,
    y: (i64, i64),
    p: u64,
    ccf: &BigRational,
    lcf: &BigRational,
) -> (BigRational, BigRational) {
    let r = |n: &BigInt| BigRational::from_integer(n.clone());
    let pr = BigRational::from_integer(BigInt::from(p));
    let (bc1, bc2) = (r(&log.c1sq), r(&log.c2));
    let (c1, c2) = (
        BigRational::from_integer(BigInt::from(y.0)),
        BigRational::from_integer(BigInt::from(y.1)),
    );
    let two = BigRational::from_integer(BigInt::from(2));
    let x1 = &bc1 * &pr + &two * (&c2 - &bc2) + (&c1 - &bc1 + &two * &bc2 - &two * &c2) / &pr - ccf;
    let x2 = &bc2 * &pr + (&c2 - &bc2) + lcf;
    (x1, x2)
}

/// Everything about `(spec, choice)` that does not depend on the solution.
#[derive(Clone, Debug)]
pub struct RootCoverModel {
    pub spec: ArrangementSpec,
    pub choice: ExtensionChoice,
    pub graph: ResolutionGraph,
    pub log: LogChernPair,
    pub chern_y: (i64, i64),
    forms: Vec<Option<LinearForm>>,
    templates: Vec<NodeTemplate>,
}

impl RootCoverModel {
    pub fn new(spec: &ArrangementSpec, choice: &ExtensionChoice) -> Result<Self> {
        let graph = build_resolution(spec, choice)?;
        let log = log_chern_partial(spec, choice)?;
        let forms = multiplicity_forms(&graph, spec.num_sections);
        let templates = node_templates(&graph, spec.num_sections, spec.degree)?;
        Ok(RootCoverModel {
            spec: spec.clone(),
            choice: choice.clone(),
            chern_y: chern_of_y(&graph),
            graph,
            log,
            forms,
            templates,
        })
    }

    pub fn templates(&self) -> &[NodeTemplate] {
        &self.templates
    }

    /// Total node count of the reduced boundary.
    pub fn node_count(&self) -> u64 {
        self.graph.t2
    }

    pub fn nodes(&self, sol: &PartitionSolution) -> Result<Vec<NodeRecord>> {
        sol.check(&self.spec, &self.choice)?;
        let nu = evaluate_forms(&self.graph, &self.forms, sol)?;
        self.templates
            .iter()
            .map(|t| {
                let nu_a = nu.nu[t.a].expect("boundary component");
                let nu_b = nu.nu[t.b].expect("boundary component");
                Ok(NodeRecord {
                    a: self.graph.components[t.a].label(),
                    b: self.graph.components[t.b].label(),
                    node_type: t.node_type,
                    nu_a,
                    nu_b,
                    count: t.count,
                    residue: node_residue(nu_a, nu_b, sol.p)?,
                })
            })
            .collect()
    }

    pub fn evaluate(&self, sol: &PartitionSolution) -> Result<SurfaceInvariants> {
        let p = sol.p;
        if self.spec.char_p == Some(p) {
            return Err(Error::PrimeIsCharacteristic { p });
        }
        let nodes = self.nodes(sol)?;
        let (ccf, lcf) = ccf_lcf(&nodes, p)?;
        let mut bad_nodes = 0;
        for n in &nodes {
            if is_bad(n.residue, p)? {
                bad_nodes += n.count;
            }
        }
        let (c1sq, c2) = root_cover_chern(&self.log, self.chern_y, p, &ccf, &lcf);
        for (which, v) in [("c1^2(X)", &c1sq), ("c2(X)", &c2)] {
            if !v.is_integer() {
                return Err(Error::Integrality {
                    which,
                    value: exact::rational_to_string(v),
                });
            }
        }
        let sum = (&c1sq + &c2).to_integer();
        if !sum.is_multiple_of(&BigInt::from(12)) {
            return Err(Error::Noether(sum.to_string()));
        }
        let ratio = if c2.is_zero() {
            BigRational::zero()
        } else {
            &c1sq / &c2
        };
        Ok(SurfaceInvariants {
            p,
            c1sq,
            c2,
            ccf,
            lcf,
            good: bad_nodes == 0,
            bad_nodes,
            ratio,
        })
    }
}

pub fn chern_of_x(
    spec: &ArrangementSpec,
    choice: &ExtensionChoice,
    sol: &PartitionSolution,
) -> Result<SurfaceInvariants> {
    RootCoverModel::new(spec, choice)?.evaluate(sol)
}

impl SurfaceInvariants {
    /// `|CCF| <= N (6 sqrt(p) + 7)` and `LCF <= N (3 sqrt(p) + 2)` for `N`
    /// nodes, decided exactly.
    pub fn within_error_bounds(&self, nodes: u64) -> bool {
        let n = BigRational::from_integer(BigInt::from(nodes));
        let p = BigRational::from_integer(BigInt::from(self.p));
        // t <= N (k sqrt(p) + c)  <=>  t/N - c <= k sqrt(p)
        let under = |t: &BigRational, k: i64, c: i64| {
            if n.is_zero() {
                return t.is_zero();
            }
            let lhs = t / &n - BigRational::from_integer(BigInt::from(c));
            if !lhs.is_positive() {
                return true;
            }
            &lhs * &lhs <= BigRational::from_integer(BigInt::from(k * k)) * &p
        };
        under(&self.ccf.abs(), 6, 7) && under(&self.lcf, 3, 2)
    }
}
