use num_rational::BigRational;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{log_chern_partial, LogChernPair};
use crate::arrangement::{ArrangementSpec, ExtensionChoice};
use crate::error::Result;
use crate::exact;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Choices to try. When absent, all subsets of removable fibers of size at
    /// most `delta - 2` are considered.
    pub candidates: Option<Vec<ExtensionChoice>>,
    /// Maximum number of non-empty choices evaluated; the extended
    /// arrangement is always included.
    pub budget: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub best: ExtensionChoice,
    pub pair: LogChernPair,
    #[serde(with = "exact::big_rational")]
    pub ratio: BigRational,
    pub evaluated: usize,
    /// Whether every candidate was evaluated.
    pub exhaustive: bool,
}

/// Largest log Chern ratio over extension choices. Ties go to the
/// lexicographically smallest fiber set.
pub fn ratio_scan(spec: &ArrangementSpec, config: &ScanConfig) -> Result<ScanResult> {
    spec.ensure_valid()?;
    let (pool, total) = match &config.candidates {
        Some(list) => {
            let mut list: Vec<ExtensionChoice> =
                list.iter().filter(|c| !c.is_extended()).cloned().collect();
            list.sort();
            list.dedup();
            let total = list.len();
            (choose(list, config.budget, config.seed), total)
        }
        None => {
            let removable = spec.removable_fibers();
            let max_size = spec.delta().saturating_sub(2);
            let total = subset_count(removable.len(), max_size);
            let picks = if total <= config.budget as u128 {
                all_subsets(&removable, max_size)
            } else {
                random_subsets(&removable, max_size, config.budget, config.seed)
            };
            (picks, usize::try_from(total).unwrap_or(usize::MAX))
        }
    };
    let exhaustive = pool.len() >= total;
    let mut all = vec![ExtensionChoice::extended()];
    all.extend(pool);
    let scored: Vec<(ExtensionChoice, LogChernPair)> = all
        .into_par_iter()
        .map(|c| log_chern_partial(spec, &c).map(|p| (c, p)))
        .collect::<Result<_>>()?;
    let evaluated = scored.len();
    let (best, pair) = scored
        .into_iter()
        .max_by(|(ca, pa), (cb, pb)| {
            let ra = pa.ratio().expect("positive c2");
            let rb = pb.ratio().expect("positive c2");
            ra.cmp(&rb).then_with(|| cb.cmp(ca))
        })
        .expect("extended choice is always present");
    let ratio = pair.ratio().expect("positive c2");
    Ok(ScanResult {
        best,
        pair,
        ratio,
        evaluated,
        exhaustive,
    })
}

fn choose(list: Vec<ExtensionChoice>, budget: usize, seed: u64) -> Vec<ExtensionChoice> {
    if list.len() <= budget {
        return list;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = sample(&mut rng, list.len(), budget).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| list[i].clone()).collect()
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

fn subset_count(n: usize, max_size: usize) -> u128 {
    (1..=max_size.min(n)).map(|k| binomial(n, k)).fold(0u128, u128::saturating_add)
}

fn all_subsets(items: &[usize], max_size: usize) -> Vec<ExtensionChoice> {
    let n = items.len();
    (1u64..(1u64 << n))
        .filter(|m| (m.count_ones() as usize) <= max_size)
        .map(|m| ExtensionChoice::removing((0..n).filter(|i| m >> i & 1 == 1).map(|i| items[i])))
        .collect()
}

fn random_subsets(items: &[usize], max_size: usize, budget: usize, seed: u64) -> Vec<ExtensionChoice> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = std::collections::BTreeSet::new();
    let cap = max_size.min(items.len());
    let mut attempts = 0;
    while out.len() < budget && attempts < budget * 20 && cap > 0 {
        attempts += 1;
        let size = rng.gen_range(1..=cap);
        let picked = sample(&mut rng, items.len(), size);
        out.insert(ExtensionChoice::removing(picked.into_iter().map(|i| items[i])));
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::library::builtin;

    fn table_choices() -> Vec<ExtensionChoice> {
        vec![
            ExtensionChoice::removing(1..=8),
            ExtensionChoice::extended(),
            ExtensionChoice::removing(9..=20),
            ExtensionChoice::removing(7..=20),
            ExtensionChoice::removing(4..=20),
            ExtensionChoice::removing(6..=20),
        ]
    }

    #[test]
    fn dual_hesse_table_best() {
        let dh = builtin("dual_hesse_conic").unwrap();
        let cfg = ScanConfig {
            candidates: Some(table_choices()),
            budget: 10,
            seed: 0,
        };
        let r = ratio_scan(&dh, &cfg).unwrap();
        assert_eq!(r.best, ExtensionChoice::removing(6..=20));
        assert_eq!(r.ratio, rat(134, 55));
        assert!(r.exhaustive);
        assert_eq!(r.evaluated, 6);
    }

    #[test]
    fn zero_budget_is_extended() {
        let dh = builtin("dual_hesse_conic").unwrap();
        let r = ratio_scan(&dh, &ScanConfig::default()).unwrap();
        assert_eq!(r.best, ExtensionChoice::extended());
        assert_eq!(r.ratio, rat(399, 180));
        assert_eq!(r.evaluated, 1);
        assert!(!r.exhaustive);
    }

    #[test]
    fn generic_four_extended_wins() {
        let g4 = builtin("generic_lines(4)").unwrap();
        let r = ratio_scan(
            &g4,
            &ScanConfig {
                candidates: None,
                budget: 1000,
                seed: 0,
            },
        )
        .unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.evaluated, 1 + 6 + 15 + 20 + 15);
        assert_eq!(r.best, ExtensionChoice::extended());
        assert_eq!(r.ratio, rat(27, 12));
    }

    #[test]
    fn sampled_scan_is_deterministic() {
        let dh = builtin("dual_hesse_conic").unwrap();
        let cfg = ScanConfig {
            candidates: None,
            budget: 200,
            seed: 9,
        };
        let a = ratio_scan(&dh, &cfg).unwrap();
        let b = ratio_scan(&dh, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.ratio >= rat(399, 180));
    }

    #[test]
    fn counting_helpers() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(subset_count(6, 4), 56);
        assert_eq!(all_subsets(&[1, 2, 3, 4, 5, 6], 4).len(), 56);
    }
}
