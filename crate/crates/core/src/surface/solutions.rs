use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{ArrangementSpec, ExtensionChoice};
use crate::error::{Error, Result};
use crate::exact;
use crate::number::is_prime;

/// A positive solution of `sum e x_i + sum y_j = p`, with `y` indexed by the
/// kept fibers in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionSolution {
    pub p: u64,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    /// Fiber index of each entry of `y`.
    pub fibers: Vec<usize>,
    /// `x_{d+1} = p - sum x_i`, the multiplicity of `C_0`.
    pub x_zero: u64,
}

impl PartitionSolution {
    pub fn new(p: u64, x: Vec<u64>, y: Vec<u64>, fibers: Vec<usize>) -> Self {
        let x_zero = p - x.iter().sum::<u64>();
        PartitionSolution {
            p,
            x,
            y,
            fibers,
            x_zero,
        }
    }

    /// Checks the solution against an arrangement and extension choice.
    pub fn check(&self, spec: &ArrangementSpec, choice: &ExtensionChoice) -> Result<()> {
        let kept = choice.kept(spec.delta());
        if self.x.len() != spec.num_sections {
            return Err(Error::SolutionShape(format!(
                "{} values of x for {} sections",
                self.x.len(),
                spec.num_sections
            )));
        }
        if self.y.len() != kept.len() || self.fibers != kept {
            return Err(Error::SolutionShape(format!(
                "y is indexed by fibers {:?}, expected {:?}",
                self.fibers, kept
            )));
        }
        if self.x.iter().chain(&self.y).any(|&v| v == 0) {
            return Err(Error::SolutionShape("entries must be positive".into()));
        }
        let total: u64 = spec.degree * self.x.iter().sum::<u64>() + self.y.iter().sum::<u64>();
        if total != self.p {
            return Err(Error::SolutionShape(format!(
                "weighted sum is {total}, expected {}",
                self.p
            )));
        }
        let sx: u64 = self.x.iter().sum();
        if sx >= self.p || self.x_zero != self.p - sx {
            return Err(Error::SolutionShape(format!(
                "x_(d+1) = {} does not equal p - sum x = {}",
                self.x_zero,
                self.p as i128 - sx as i128
            )));
        }
        Ok(())
    }
}

fn binomial_row(max_top: usize, k: usize) -> Vec<BigUint> {
    // row[t] = C(t, k) for 0 <= t <= max_top
    let mut row = vec![BigUint::zero(); max_top + 1];
    if k > max_top {
        return row;
    }
    row[k] = BigUint::one();
    for t in k + 1..=max_top {
        row[t] = &row[t - 1] * BigUint::from(t) / BigUint::from(t - k);
    }
    row
}

/// Solutions of `e (x_1 + ... + x_n) + (y_1 + ... + y_m) = p` in positive
/// integers. Grouping by `X = sum x_i`, there are
/// `C(X - 1, n - 1) C(p - eX - 1, m - 1)` solutions with a given `X`; the
/// cumulative counts drive exact uniform sampling.
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    pub p: u64,
    pub e: u64,
    pub n: usize,
    pub m: usize,
    first_x: u64,
    cumulative: Vec<BigUint>,
}

impl SolutionSpace {
    pub fn new(p: u64, e: u64, n: usize, m: usize) -> Self {
        assert!(n >= 1 && m >= 1 && e >= 1);
        let first_x = n as u64;
        let last_x = p.saturating_sub(m as u64) / e;
        let mut cumulative = Vec::new();
        if last_x >= first_x {
            let xs = binomial_row((last_x - 1) as usize, n - 1);
            let ys = binomial_row((p - e * first_x - 1) as usize, m - 1);
            let mut acc = BigUint::zero();
            for big_x in first_x..=last_x {
                let top_y = (p - e * big_x - 1) as usize;
                acc += &xs[(big_x - 1) as usize] * &ys[top_y];
                cumulative.push(acc.clone());
            }
        }
        SolutionSpace {
            p,
            e,
            n,
            m,
            first_x,
            cumulative,
        }
    }

    /// Smallest attainable weighted sum.
    pub fn minimum(&self) -> u64 {
        self.e * self.n as u64 + self.m as u64
    }

    pub fn count(&self) -> BigUint {
        self.cumulative.last().cloned().unwrap_or_default()
    }

    /// `p^(N-1) / ((N-1)! e^n)` with `N = n + m`.
    pub fn estimate(&self) -> BigRational {
        let big_n = (self.n + self.m - 1) as u32;
        let num = BigInt::from(self.p).pow(big_n);
        let mut den = BigInt::from(self.e).pow(self.n as u32);
        for k in 2..=big_n as u64 {
            den *= k;
        }
        BigRational::new(num, den)
    }

    /// Uniformly random solution, as `(x, y)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<(Vec<u64>, Vec<u64>)> {
        let total = self.count();
        if total.is_zero() {
            return None;
        }
        let r = rng.gen_biguint_below(&total);
        let slot = self.cumulative.partition_point(|c| *c <= r);
        let big_x = self.first_x + slot as u64;
        let x = composition(rng, big_x, self.n);
        let y = composition(rng, self.p - self.e * big_x, self.m);
        Some((x, y))
    }
}

/// Uniform composition of `total` into `parts` positive integers.
fn composition<R: Rng + ?Sized>(rng: &mut R, total: u64, parts: usize) -> Vec<u64> {
    let mut cuts: Vec<u64> = sample(rng, (total - 1) as usize, parts - 1)
        .into_iter()
        .map(|c| c as u64 + 1)
        .collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts {
        out.push(c - prev);
        prev = c;
    }
    out.push(total - prev);
    out
}

pub(crate) fn space_for(spec: &ArrangementSpec, choice: &ExtensionChoice, p: u64) -> Result<SolutionSpace> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if spec.char_p == Some(p) {
        return Err(Error::PrimeIsCharacteristic { p });
    }
    let m = spec.delta() - choice.epsilon();
    let space = SolutionSpace::new(p, spec.degree, spec.num_sections, m);
    if p < space.minimum() {
        return Err(Error::NoSolution {
            p,
            minimum: space.minimum(),
        });
    }
    Ok(space)
}

/// Random generator for prime `p` under a global seed.
pub fn rng_for(seed: u64, p: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(p);
    rng
}

/// Uniformly random positive solution, deterministic in `seed`.
pub fn sample_solution(
    spec: &ArrangementSpec,
    choice: &ExtensionChoice,
    p: u64,
    seed: u64,
) -> Result<PartitionSolution> {
    spec.ensure_valid()?;
    choice.check(spec)?;
    let space = space_for(spec, choice, p)?;
    let mut rng = rng_for(seed, p);
    let (x, y) = space.sample(&mut rng).expect("p is at least the minimum");
    Ok(PartitionSolution::new(p, x, y, choice.kept(spec.delta())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionCount {
    pub p: u64,
    /// Decimal string of the exact count.
    pub exact: String,
    #[serde(with = "exact::big_rational")]
    pub estimate: BigRational,
}

impl SolutionCount {
    pub fn exact_value(&self) -> BigUint {
        self.exact.parse().expect("decimal count")
    }

    /// `|exact / estimate - 1|`.
    pub fn relative_error(&self) -> BigRational {
        let exact = BigRational::from_integer(BigInt::from(self.exact_value()));
        (exact / &self.estimate - BigRational::one()).abs()
    }
}

/// Exact number of positive solutions together with the leading-term
/// estimate. Counting is closed-form per value of `sum x_i`; `budget` caps `p`.
pub fn count_solutions(
    spec: &ArrangementSpec,
    choice: &ExtensionChoice,
    p: u64,
    budget: u64,
) -> Result<SolutionCount> {
    spec.ensure_valid()?;
    choice.check(spec)?;
    if p > budget {
        return Err(Error::BudgetExceeded {
            needed: p as u128,
            budget: budget as u128,
        });
    }
    let m = spec.delta() - choice.epsilon();
    let space = SolutionSpace::new(p, spec.degree, spec.num_sections, m);
    Ok(SolutionCount {
        p,
        exact: space.count().to_string(),
        estimate: space.estimate(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::builtin;
    use std::collections::HashMap;

    /// Direct enumeration of all positive solutions.
    fn brute(p: u64, e: u64, n: usize, m: usize) -> Vec<(Vec<u64>, Vec<u64>)> {
        fn rec(left: u64, weights: &[u64], acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if weights.is_empty() {
                if left == 0 {
                    out.push(acc.clone());
                }
                return;
            }
            let w = weights[0];
            let mut v = 1;
            while v * w <= left {
                acc.push(v);
                rec(left - v * w, &weights[1..], acc, out);
                acc.pop();
                v += 1;
            }
        }
        let mut weights = vec![e; n];
        weights.extend(std::iter::repeat(1).take(m));
        let mut all = Vec::new();
        rec(p, &weights, &mut Vec::new(), &mut all);
        all.into_iter()
            .map(|v| (v[..n].to_vec(), v[n..].to_vec()))
            .collect()
    }

    #[test]
    fn counts_match_enumeration() {
        for (p, e, n, m) in [(7, 1, 3, 3), (13, 2, 3, 2), (17, 3, 2, 4), (11, 1, 4, 4), (5, 1, 3, 3)] {
            let space = SolutionSpace::new(p, e, n, m);
            assert_eq!(space.count(), BigUint::from(brute(p, e, n, m).len()), "{p} {e} {n} {m}");
        }
        assert_eq!(SolutionSpace::new(7, 1, 3, 3).count(), BigUint::from(6u32));
    }

    #[test]
    fn sampling_is_uniform() {
        let (p, e, n, m) = (13, 2, 2, 3);
        let all = brute(p, e, n, m);
        let space = SolutionSpace::new(p, e, n, m);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let draws = 40_000;
        let mut hist: HashMap<(Vec<u64>, Vec<u64>), usize> = HashMap::new();
        for _ in 0..draws {
            *hist.entry(space.sample(&mut rng).unwrap()).or_default() += 1;
        }
        assert_eq!(hist.len(), all.len());
        let expected = draws as f64 / all.len() as f64;
        let chi2: f64 = hist
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // generous bound for the degrees of freedom involved
        assert!(chi2 < 3.0 * all.len() as f64, "chi2 = {chi2} over {} cells", all.len());
    }

    #[test]
    fn triangle_samples() {
        let t = builtin("triangle").unwrap();
        let ext = ExtensionChoice::extended();
        let a = sample_solution(&t, &ext, 7, 11).unwrap();
        let b = sample_solution(&t, &ext, 7, 11).unwrap();
        assert_eq!(a, b);
        a.check(&t, &ext).unwrap();
        assert!(matches!(sample_solution(&t, &ext, 5, 0), Err(Error::NoSolution { p: 5, minimum: 6 })));
        assert!(matches!(sample_solution(&t, &ext, 9, 0), Err(Error::NotPrime(9))));
        let mut t2 = t.clone();
        t2.char_p = Some(7);
        assert!(matches!(
            sample_solution(&t2, &ext, 7, 0),
            Err(Error::PrimeIsCharacteristic { p: 7 })
        ));
        let hand = PartitionSolution::new(7, vec![1, 1, 1], vec![1, 2, 1], vec![1, 2, 3]);
        assert_eq!(hand.x_zero, 4);
        hand.check(&t, &ext).unwrap();
    }

    #[test]
    fn triangle_count_and_estimate() {
        let t = builtin("triangle").unwrap();
        let ext = ExtensionChoice::extended();
        let c = count_solutions(&t, &ext, 7, 1000).unwrap();
        assert_eq!(c.exact, "6");
        assert_eq!(c.estimate, crate::exact::rat(7i64.pow(5), 120));
        assert!(matches!(count_solutions(&t, &ext, 1009, 1000), Err(Error::BudgetExceeded { .. })));
        // C(p - 1, 5)
        let c = count_solutions(&t, &ext, 101, 1000).unwrap();
        assert_eq!(c.exact, "75287520");
        let below = SolutionSpace::new(5, 1, 3, 3);
        assert!(below.count().is_zero());
    }
}
