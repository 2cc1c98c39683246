//! Random arrangements for property tests and scans.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{ArrangementSpec, ContactPoint, FiberData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpecConfig {
    pub max_sections: usize,
    pub max_degree: u64,
    pub max_fibers: usize,
    pub max_genus: u64,
}

impl Default for RandomSpecConfig {
    fn default() -> Self {
        RandomSpecConfig {
            max_sections: 8,
            max_degree: 4,
            max_fibers: 10,
            max_genus: 2,
        }
    }
}

/// A random valid combinatorial arrangement. Not necessarily realizable.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomSpecConfig) -> ArrangementSpec {
    loop {
        let d = rng.gen_range(3..=cfg.max_sections.max(3));
        let e = rng.gen_range(1..=cfg.max_degree.max(1));
        let g = rng.gen_range(0..=cfg.max_genus);
        if let Some(fibers) = try_fill(rng, d, e, cfg.max_fibers) {
            let spec = ArrangementSpec {
                label: format!("random(d={d}, e={e}, g={g})"),
                genus: g,
                degree: e,
                num_sections: d,
                char_p: None,
                fibers,
            };
            if spec.validate().is_valid() {
                return spec;
            }
        }
    }
}

/// Greedily distributes the intersection of every pair of sections over
/// fibers; gives up once more than `max_fibers` fibers are needed.
fn try_fill<R: Rng + ?Sized>(rng: &mut R, d: usize, e: u64, max_fibers: usize) -> Option<Vec<FiberData>> {
    let mut deficit = vec![vec![e; d + 1]; d + 1];
    let open = |deficit: &Vec<Vec<u64>>| (1..=d).any(|a| (a + 1..=d).any(|b| deficit[a][b] > 0));
    let mut fibers = Vec::new();
    while open(&deficit) {
        if fibers.len() == max_fibers {
            return None;
        }
        let mut free: Vec<usize> = (1..=d).collect();
        free.shuffle(rng);
        let mut points = Vec::new();
        loop {
            let Some(point) = grow_point(rng, &free, &deficit, d) else { break };
            for (a, b, c) in point.pairs() {
                deficit[a][b] -= c;
            }
            free.retain(|s| !point.contains(*s));
            points.push(point);
            if free.len() < 2 || rng.gen_bool(0.25) {
                break;
            }
        }
        if points.is_empty() {
            return None;
        }
        fibers.push(FiberData::new(points));
    }
    let min_fibers = 3;
    (fibers.len() >= min_fibers).then_some(fibers)
}

fn pair(deficit: &[Vec<u64>], a: usize, b: usize) -> u64 {
    deficit[a.min(b)][a.max(b)]
}

/// A point on sections from `free` whose contacts fit into the remaining
/// deficits, with a random nested cluster structure.
fn grow_point<R: Rng + ?Sized>(rng: &mut R, free: &[usize], deficit: &[Vec<u64>], d: usize) -> Option<ContactPoint> {
    let seeds: Vec<(usize, usize)> = free
        .iter()
        .flat_map(|&a| free.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a < b && pair(deficit, a, b) > 0)
        .collect();
    let &(a, b) = seeds.choose(rng)?;
    let mut members = vec![a, b];
    let mut candidates: Vec<usize> = free.iter().copied().filter(|&s| s != a && s != b).collect();
    candidates.shuffle(rng);
    for c in candidates {
        if members.len() + 1 >= d {
            break;
        }
        if members.iter().all(|&m| pair(deficit, m, c) > 0) && rng.gen_bool(0.6) {
            members.push(c);
        }
    }
    let mut contact: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    nest(rng, &members, 1, deficit, &mut contact);
    ContactPoint::from_fn(members, |x, y| contact[&(x, y)]).ok()
}

/// Assigns contact `level` to all pairs of `members`, then possibly deepens
/// disjoint sub-clusters.
fn nest<R: Rng + ?Sized>(
    rng: &mut R,
    members: &[usize],
    level: u64,
    deficit: &[Vec<u64>],
    contact: &mut BTreeMap<(usize, usize), u64>,
) {
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            contact.insert((a.min(b), a.max(b)), level);
        }
    }
    let mut pool: Vec<usize> = members.to_vec();
    pool.shuffle(rng);
    while pool.len() >= 2 && rng.gen_bool(0.55) {
        let mut sub = vec![pool[0]];
        for &c in &pool[1..] {
            if sub.iter().all(|&m| pair(deficit, m, c) > level) && rng.gen_bool(0.6) {
                sub.push(c);
            }
        }
        pool.retain(|s| !sub.contains(s));
        // a deeper cluster must be a proper subset of its parent
        if sub.len() >= 2 && sub.len() < members.len() {
            nest(rng, &sub, level + 1, deficit, contact);
        }
    }
}

/// A random arrangement of lines in the complex projective plane with integer
/// coefficients, seen as sections after blowing up a point off the lines.
pub fn random_line_arrangement<R: Rng + ?Sized>(rng: &mut R, max_lines: usize) -> ArrangementSpec {
    loop {
        let d = rng.gen_range(3..=max_lines.max(3));
        if let Some(spec) = try_lines(rng, d) {
            return spec;
        }
    }
}

type Vec3 = [i64; 3];

fn cross(u: Vec3, v: Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn dot(u: Vec3, v: Vec3) -> i64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Primitive representative with a positive leading entry.
fn normalize(v: Vec3) -> Vec3 {
    let g = v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    let mut w = v.map(|x| x / g);
    if w.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 {
        w = w.map(|x| -x);
    }
    w
}

fn try_lines<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Option<ArrangementSpec> {
    let range = if d <= 5 { 3 } else { 4 };
    let mut lines: Vec<Vec3> = Vec::new();
    while lines.len() < d {
        let l = [
            rng.gen_range(-range..=range),
            rng.gen_range(-range..=range),
            rng.gen_range(-range..=range),
        ];
        if l == [0, 0, 0] {
            continue;
        }
        let l = normalize(l);
        if !lines.contains(&l) {
            lines.push(l);
        }
    }
    // occasionally force extra concurrency through an existing crossing
    if d >= 4 && rng.gen_bool(0.5) {
        let p = cross(lines[0], lines[1]);
        let q = [rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        let l = cross(p, q);
        if l != [0, 0, 0] {
            let l = normalize(l);
            if !lines.contains(&l) {
                lines[d - 1] = l;
            }
        }
    }
    // intersection points with the lines through each
    let mut points: BTreeMap<Vec3, Vec<usize>> = BTreeMap::new();
    for i in 0..d {
        for j in i + 1..d {
            let p = normalize(cross(lines[i], lines[j]));
            let on = points.entry(p).or_default();
            for k in [i + 1, j + 1] {
                if !on.contains(&k) {
                    on.push(k);
                }
            }
        }
    }
    if points.values().any(|on| on.len() == d) {
        return None;
    }
    let center: Vec3 = [rng.gen_range(-7..=7), rng.gen_range(-7..=7), rng.gen_range(1..=7)];
    if lines.iter().any(|&l| dot(l, center) == 0) || points.contains_key(&normalize(center)) {
        return None;
    }
    // group points by the line joining them to the center
    let mut fibers: BTreeMap<Vec3, Vec<ContactPoint>> = BTreeMap::new();
    for (p, on) in points {
        let fiber = normalize(cross(center, p));
        fibers
            .entry(fiber)
            .or_default()
            .push(ContactPoint::uniform(on, 1).expect("at least two lines"));
    }
    let spec = ArrangementSpec {
        label: format!("random_lines({d})"),
        genus: 0,
        degree: 1,
        num_sections: d,
        char_p: None,
        fibers: fibers.into_values().map(FiberData::new).collect(),
    };
    spec.validate().is_valid().then_some(spec)
}
