//! Cross-checks between independent computations of the same invariants.

use std::collections::BTreeSet;

use logchern::arrangement::{ArrangementSpec, ContactPoint, ExtensionChoice};
use logchern::library::{random_line_arrangement, random_spec, RandomSpecConfig};
use logchern::log_chern::{frobenius_ratio, log_chern_extended, log_chern_partial};
use logchern::resolution::{build_resolution, log_chern_via_graph};
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec_from_seed(seed: u64) -> ArrangementSpec {
    random_spec(&mut ChaCha8Rng::seed_from_u64(seed), &RandomSpecConfig::default())
}

/// Every removal set drawn from the removable fibers that leaves two fibers.
fn admissible(spec: &ArrangementSpec) -> Vec<ExtensionChoice> {
    let removable = spec.removable_fibers();
    let delta = spec.delta();
    let mut out = vec![ExtensionChoice::extended()];
    for mask in 1u32..(1 << removable.len()) {
        let set: Vec<usize> = (0..removable.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| removable[i])
            .collect();
        if set.len() + 2 <= delta {
            out.push(ExtensionChoice::removing(set));
        }
    }
    out
}

/// Number of classes of `point`'s sections under "contact at least m".
fn classes(point: &ContactPoint, m: u64) -> usize {
    let secs = point.sections();
    let mut parent: Vec<usize> = (0..secs.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..secs.len() {
        for j in i + 1..secs.len() {
            if point.contact(secs[i], secs[j]) >= m {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..secs.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// (tau, blow-ups) by counting contact classes level by level.
fn tau_by_levels(spec: &ArrangementSpec) -> (u64, u64) {
    let mut tau = 0;
    let mut centers = 0;
    for p in spec.points() {
        let top = p.pairs().map(|(_, _, c)| c).max().unwrap_or(0);
        for m in 1..=top {
            let n = p.len();
            let k = classes(p, m);
            tau += (n - k) as u64;
            // classes of size at least two
            let mut sizes = std::collections::HashMap::new();
            for &s in p.sections() {
                let rep = p
                    .sections()
                    .iter()
                    .copied()
                    .filter(|&t| t == s || p.contact(s, t) >= m)
                    .min()
                    .unwrap();
                *sizes.entry(rep).or_insert(0) += 1;
            }
            centers += sizes.values().filter(|&&c| c >= 2).count() as u64;
        }
    }
    (tau, centers)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph_matches_closed_form(seed in any::<u64>()) {
        let spec = spec_from_seed(seed);
        for choice in admissible(&spec) {
            let graph = build_resolution(&spec, &choice).unwrap();
            prop_assert_eq!(log_chern_via_graph(&graph), log_chern_partial(&spec, &choice).unwrap(),
                "{} with {}", spec.to_json(), choice);
        }
    }

    #[test]
    fn tau_matches_level_count(seed in any::<u64>()) {
        let spec = spec_from_seed(seed);
        let (tau, s) = tau_by_levels(&spec);
        prop_assert_eq!(spec.tau().unwrap(), tau);
        prop_assert_eq!(spec.num_blowups().unwrap(), s);
        let graph = build_resolution(&spec, &ExtensionChoice::extended()).unwrap();
        prop_assert_eq!(graph.s, s);
    }

    #[test]
    fn relabeling_preserves_invariants(seed in any::<u64>(), shuffle in any::<u64>()) {
        use rand::seq::SliceRandom;
        let spec = spec_from_seed(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(shuffle);
        let mut perm: Vec<usize> = (1..=spec.num_sections).collect();
        perm.shuffle(&mut rng);
        let mut order: Vec<usize> = (0..spec.delta()).collect();
        order.shuffle(&mut rng);
        let other = spec.relabeled(&perm, &order);
        prop_assert!(other.validate().is_valid());
        prop_assert_eq!(other.tau().unwrap(), spec.tau().unwrap());
        prop_assert_eq!(log_chern_extended(&other).unwrap(), log_chern_extended(&spec).unwrap());
        let removable: BTreeSet<usize> = spec.removable_fibers().into_iter().collect();
        let moved: BTreeSet<usize> = other
            .removable_fibers()
            .into_iter()
            .map(|f| order[f - 1] + 1)
            .collect();
        prop_assert_eq!(removable, moved);
    }

    #[test]
    fn etale_pullback_keeps_ratio(seed in any::<u64>(), n in 2u64..6) {
        let mut spec = spec_from_seed(seed);
        if spec.genus == 0 {
            spec.genus = 1;
        }
        let up = spec.etale_pullback(n).unwrap();
        prop_assert!(up.validate().is_valid());
        let base = log_chern_extended(&spec).unwrap();
        let pulled = log_chern_extended(&up).unwrap();
        prop_assert_eq!(&pulled.c1sq, &(&base.c1sq * n));
        prop_assert_eq!(&pulled.c2, &(&base.c2 * n));
        prop_assert_eq!(pulled.ratio(), base.ratio());
    }

    #[test]
    fn frobenius_ratio_matches_pullback(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5, 7]), r in 1u32..4) {
        let mut spec = spec_from_seed(seed);
        spec.char_p = Some(p);
        let closed = frobenius_ratio(&spec, r).unwrap();
        let direct = log_chern_extended(&spec.frobenius_pullback(r).unwrap()).unwrap().ratio().unwrap();
        prop_assert_eq!(&closed, &direct);
        // the ratio moves away from 2 as r grows
        let before = frobenius_ratio(&spec, r - 1).unwrap();
        let two = logchern::exact::rat(2, 1);
        prop_assert!((&closed - &two).abs() >= (&before - &two).abs());
    }
}

/// The extended choice, every single removal and a batch of random larger
/// removal sets.
fn sampled_choices(spec: &ArrangementSpec, rng: &mut ChaCha8Rng) -> Vec<ExtensionChoice> {
    use rand::Rng;
    let removable = spec.removable_fibers();
    let delta = spec.delta();
    let mut out = vec![ExtensionChoice::extended()];
    out.extend(removable.iter().filter(|_| delta >= 3).map(|&f| ExtensionChoice::removing([f])));
    for _ in 0..20 {
        let set: Vec<usize> = removable.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if !set.is_empty() && set.len() + 2 <= delta {
            out.push(ExtensionChoice::removing(set));
        }
    }
    out
}

#[test]
fn line_arrangements_match_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let spec = random_line_arrangement(&mut rng, 8);
        for choice in sampled_choices(&spec, &mut rng) {
            let graph = build_resolution(&spec, &choice).unwrap();
            assert_eq!(log_chern_via_graph(&graph), log_chern_partial(&spec, &choice).unwrap());
        }
    }
}
