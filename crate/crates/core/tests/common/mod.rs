#![allow(dead_code)]

use std::sync::Arc;

use abelian_cs::surfaces::Surface;
use abelian_cs::weyl::{WeylAlgebra, WeylElement};
use abelian_cs::{GroupElement, IntMatrix, PresymplecticGroup};
use num_complex::Complex64;
use proptest::prelude::*;

/// Random antisymmetric pairing of the given rank with entries in [-2, 2].
pub fn arb_group(max_rank: usize) -> impl Strategy<Value = PresymplecticGroup> {
    (0..=max_rank).prop_flat_map(|n| {
        proptest::collection::vec(-2i64..=2, n * n).prop_map(move |raw| {
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    m[(i, j)] = raw[i * n + j];
                    m[(j, i)] = -raw[i * n + j];
                }
            }
            PresymplecticGroup::new(m).unwrap()
        })
    })
}

pub fn arb_vector(rank: usize, bound: i64) -> impl Strategy<Value = GroupElement> {
    proptest::collection::vec(-bound..=bound, rank).prop_map(GroupElement::new)
}

pub fn arb_coefficient() -> impl Strategy<Value = Complex64> {
    (0.0f64..=2.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

pub fn arb_element(alg: Arc<WeylAlgebra>, max_terms: usize) -> impl Strategy<Value = WeylElement> {
    let rank = alg.rank();
    proptest::collection::vec((arb_vector(rank, 5), arb_coefficient()), 0..=max_terms)
        .prop_map(move |terms| WeylElement::from_terms(&alg, terms).unwrap())
}

pub fn arb_hbar() -> impl Strategy<Value = f64> {
    (0.05f64..6.2).prop_filter("admissible", |h| abelian_cs::weyl::distance_to_2pi_z(*h) > 1e-6)
}

pub fn torus(hbar: f64) -> Arc<WeylAlgebra> {
    WeylAlgebra::new(Surface::torus().resolve(), hbar).unwrap()
}

/// SL(2, Z) generators used by the brute-force orbit search, with inverses.
pub fn bfs_generators() -> [[[i64; 2]; 2]; 4] {
    [
        [[0, -1], [1, 0]],
        [[0, 1], [-1, 0]],
        [[1, 1], [0, 1]],
        [[1, -1], [0, 1]],
    ]
}

/// Breadth-first closure of `starts` under the generators, at most `depth` steps.
pub fn bfs_orbit(
    starts: &[(i64, i64)],
    depth: usize,
) -> std::collections::HashMap<(i64, i64), usize> {
    let mut seen: std::collections::HashMap<(i64, i64), usize> =
        starts.iter().map(|&s| (s, 0)).collect();
    let mut frontier: Vec<(i64, i64)> = starts.to_vec();
    for d in 1..=depth {
        let mut next = Vec::new();
        for &(x, y) in &frontier {
            for g in bfs_generators() {
                let w = (g[0][0] * x + g[0][1] * y, g[1][0] * x + g[1][1] * y);
                if !seen.contains_key(&w) {
                    seen.insert(w, d);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    seen
}
