use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::invariants::{RootCoverModel, SurfaceInvariants};
use super::solutions::{rng_for, space_for};
use super::PartitionSolution;
use crate::arrangement::{ArrangementSpec, ExtensionChoice};
use crate::error::Result;

pub const DEFAULT_RETRIES: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub p: u64,
    pub seed: u64,
    /// Samples drawn for this prime.
    pub attempts: u32,
    pub solution: PartitionSolution,
    /// The first good sample, or the one with fewest bad nodes.
    pub invariants: SurfaceInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceFailure {
    pub p: u64,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConvergenceOutcome {
    Row(ConvergenceRow),
    Failure(ConvergenceFailure),
}

impl ConvergenceOutcome {
    pub fn row(&self) -> Option<&ConvergenceRow> {
        match self {
            ConvergenceOutcome::Row(r) => Some(r),
            ConvergenceOutcome::Failure(_) => None,
        }
    }
}

/// Samples solutions for `p` until one is good or `retries` are used up.
pub fn converge_one(model: &RootCoverModel, p: u64, seed: u64, retries: u32) -> Result<ConvergenceRow> {
    let space = space_for(&model.spec, &model.choice, p)?;
    let mut rng = rng_for(seed, p);
    let kept = model.choice.kept(model.spec.delta());
    let mut best: Option<(PartitionSolution, SurfaceInvariants)> = None;
    let mut attempts = 0;
    for _ in 0..retries.max(1) {
        attempts += 1;
        let (x, y) = space.sample(&mut rng).expect("p is at least the minimum");
        let sol = PartitionSolution::new(p, x, y, kept.clone());
        let inv = model.evaluate(&sol)?;
        let better = best
            .as_ref()
            .map_or(true, |(_, b)| inv.bad_nodes < b.bad_nodes);
        let good = inv.good;
        if better {
            best = Some((sol, inv));
        }
        if good {
            break;
        }
    }
    let (solution, invariants) = best.expect("at least one attempt");
    Ok(ConvergenceRow {
        p,
        seed,
        attempts,
        solution,
        invariants,
    })
}

/// One row per prime, in input order. Primes are processed in parallel.
pub fn converge(
    spec: &ArrangementSpec,
    choice: &ExtensionChoice,
    primes: &[u64],
    seed: u64,
    retries: u32,
) -> Result<Vec<ConvergenceOutcome>> {
    let model = RootCoverModel::new(spec, choice)?;
    Ok(primes
        .par_iter()
        .map(|&p| match converge_one(&model, p, seed, retries) {
            Ok(row) => ConvergenceOutcome::Row(row),
            Err(e) => ConvergenceOutcome::Failure(ConvergenceFailure {
                p,
                error: e.to_string(),
            }),
        })
        .collect())
}

/// Fraction of `samples` uniformly random solutions for `p` that are good.
pub fn good_frequency(model: &RootCoverModel, p: u64, samples: u32, seed: u64) -> Result<f64> {
    let space = space_for(&model.spec, &model.choice, p)?;
    let mut rng = rng_for(seed, p);
    let kept = model.choice.kept(model.spec.delta());
    let mut good = 0;
    for _ in 0..samples {
        let (x, y) = space.sample(&mut rng).expect("p is at least the minimum");
        if model.evaluate(&PartitionSolution::new(p, x, y, kept.clone()))?.good {
            good += 1;
        }
    }
    Ok(good as f64 / samples.max(1) as f64)
}
