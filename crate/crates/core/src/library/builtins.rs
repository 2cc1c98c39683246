//! Built-in arrangements.

use crate::arrangement::{ArrangementSpec, ContactPoint, FiberData};
use crate::error::{Error, Result};

fn node(a: usize, b: usize) -> ContactPoint {
    ContactPoint::uniform(vec![a, b], 1).expect("two distinct sections")
}

/// A point whose sections meet pairwise once, except inside the given
/// clusters where the contact is 2.
fn point_with_clusters(sections: &[usize], clusters: &[&[usize]]) -> ContactPoint {
    ContactPoint::from_fn(sections.to_vec(), |a, b| {
        if clusters.iter().any(|c| c.contains(&a) && c.contains(&b)) {
            2
        } else {
            1
        }
    })
    .expect("well-formed point")
}

/// Three lines in general position seen from a point off them.
pub fn triangle() -> ArrangementSpec {
    ArrangementSpec {
        label: "triangle".into(),
        genus: 0,
        degree: 1,
        num_sections: 3,
        char_p: None,
        fibers: vec![
            FiberData::new(vec![node(1, 2)]),
            FiberData::new(vec![node(1, 3)]),
            FiberData::new(vec![node(2, 3)]),
        ],
    }
}

/// `d` lines in general position, projected from a general point: one node
/// on each of `C(d, 2)` fibers.
pub fn generic_lines(d: usize) -> Result<ArrangementSpec> {
    if d < 3 {
        return Err(Error::UnknownBuiltin(format!("generic_lines({d})")));
    }
    let mut fibers = Vec::new();
    for a in 1..=d {
        for b in a + 1..=d {
            fibers.push(FiberData::new(vec![node(a, b)]));
        }
    }
    Ok(ArrangementSpec {
        label: format!("generic_lines({d})"),
        genus: 0,
        degree: 1,
        num_sections: d,
        char_p: None,
        fibers,
    })
}

/// Four sections of degree `e` over three fibers, each pair meeting in a
/// single point with contact `e`. Not realizable over the complex numbers,
/// not even for `e = 1`: the three fibers would be concurrent diagonals of a
/// complete quadrilateral.
pub fn tangent_quad(e: u64) -> Result<ArrangementSpec> {
    if e == 0 {
        return Err(Error::UnknownBuiltin("tangent_quad(0)".into()));
    }
    let t = |a, b| ContactPoint::uniform(vec![a, b], e).expect("two sections");
    Ok(ArrangementSpec {
        label: format!("tangent_quad({e})"),
        genus: 0,
        degree: e,
        num_sections: 4,
        char_p: None,
        fibers: vec![
            FiberData::new(vec![t(1, 2), t(3, 4)]),
            FiberData::new(vec![t(1, 3), t(2, 4)]),
            FiberData::new(vec![t(1, 4), t(2, 3)]),
        ],
    })
}

/// Eleven sections of degree 3 over the projective line: the dual Hesse
/// arrangement together with a conic, seen as sections after blowing up one
/// point.
///
/// Only aggregate data of the singular fibers is pinned down by the
/// geometry used here (number of fibers, the number of singular points and
/// of intersection points on each fiber, the value of tau, transversality).
/// The tangencies on `F1..F6` are one choice consistent with all of it:
///
/// - `F1..F3`: three triple points each; on `F1` two of them carry a
///   tangency between two of their sections.
/// - `F4`, `F5`: one point of multiplicity 9 with one (resp. two) triples
///   of sections tangent to each other inside it.
/// - `F6`: a point of multiplicity 8 containing one tangent triple.
/// - `F7`, `F8`: an ordinary quadruple point each.
/// - `F9..F20`: a node each, on the pairs whose intersection is not yet
///   accounted for, in lexicographic order.
pub fn dual_hesse_conic() -> ArrangementSpec {
    let fibers_1_to_8: Vec<Vec<ContactPoint>> = vec![
        vec![
            point_with_clusters(&[2, 9, 11], &[&[2, 11]]),
            point_with_clusters(&[1, 7, 8], &[]),
            point_with_clusters(&[3, 6, 10], &[&[6, 10]]),
        ],
        vec![
            point_with_clusters(&[6, 7, 9], &[]),
            point_with_clusters(&[4, 8, 10], &[]),
            point_with_clusters(&[1, 3, 11], &[]),
        ],
        vec![
            point_with_clusters(&[1, 9, 10], &[]),
            point_with_clusters(&[2, 3, 8], &[]),
            point_with_clusters(&[4, 6, 11], &[]),
        ],
        vec![point_with_clusters(&[1, 2, 3, 4, 5, 6, 7, 8, 9], &[&[5, 6, 9]])],
        vec![point_with_clusters(
            &[1, 2, 3, 4, 5, 6, 7, 10, 11],
            &[&[7, 10, 11], &[1, 2, 5]],
        )],
        vec![point_with_clusters(&[3, 4, 5, 7, 8, 9, 10, 11], &[&[5, 8, 11]])],
        vec![point_with_clusters(&[2, 8, 9, 10], &[])],
        vec![point_with_clusters(&[1, 6, 8, 11], &[])],
    ];
    let d = 11;
    let e = 3;
    let mut used = vec![vec![0u64; d + 1]; d + 1];
    for fiber in &fibers_1_to_8 {
        for p in fiber {
            for (a, b, c) in p.pairs() {
                used[a][b] += c;
            }
        }
    }
    let mut fibers: Vec<FiberData> = fibers_1_to_8.into_iter().map(FiberData::new).collect();
    for a in 1..=d {
        for b in a + 1..=d {
            for _ in used[a][b]..e {
                fibers.push(FiberData::new(vec![node(a, b)]));
            }
        }
    }
    ArrangementSpec {
        label: "dual_hesse_conic".into(),
        genus: 0,
        degree: e,
        num_sections: d,
        char_p: None,
        fibers,
    }
}

/// Names accepted by [`builtin`]; `d`, `e`, `p`, `r` stand for integers.
pub const BUILTIN_NAMES: &[&str] = &[
    "triangle",
    "dual_hesse_conic",
    "generic_lines(d)",
    "tangent_quad(e)",
    "frobenius_triangle(p,r)",
    "frobenius_dual_hesse(p,r)",
];

fn args(name: &str, prefix: &str) -> Option<Vec<u64>> {
    let inner = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|s| s.trim().parse().ok()).collect()
}

/// Looks up a built-in arrangement by name, e.g. `generic_lines(5)` or
/// `frobenius_triangle(2,3)`.
pub fn builtin(name: &str) -> Result<ArrangementSpec> {
    let name = name.trim();
    let unknown = || Error::UnknownBuiltin(name.to_string());
    let frob = |base: ArrangementSpec, a: Vec<u64>| -> Result<ArrangementSpec> {
        let [p, r] = a[..] else { return Err(unknown()) };
        if !crate::number::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let r = u32::try_from(r).map_err(|_| unknown())?;
        ArrangementSpec {
            char_p: Some(p),
            ..base
        }
        .frobenius_pullback(r)
    };
    let spec = match name {
        "triangle" => triangle(),
        "dual_hesse_conic" => dual_hesse_conic(),
        _ => {
            if let Some(a) = args(name, "generic_lines") {
                let [d] = a[..] else { return Err(unknown()) };
                generic_lines(d as usize)?
            } else if let Some(a) = args(name, "tangent_quad") {
                let [e] = a[..] else { return Err(unknown()) };
                tangent_quad(e)?
            } else if let Some(a) = args(name, "frobenius_triangle") {
                frob(triangle(), a)?
            } else if let Some(a) = args(name, "frobenius_dual_hesse") {
                frob(dual_hesse_conic(), a)?
            } else {
                return Err(unknown());
            }
        }
    };
    debug_assert!(spec.validate().is_valid(), "{}", spec.validate());
    Ok(spec)
}
