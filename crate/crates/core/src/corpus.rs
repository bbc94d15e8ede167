//! Seeded generators for families, operators and point sets.

use std::collections::BTreeMap;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convergence::{SeqFamily, VecTerm};
use crate::linalg::RatMatrix;
use crate::rational::{frac, int, scale, zeros, Rat, RatVector};
use crate::space::OrderedSpace;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize, range: i64) -> RatVector {
    (0..dim).map(|_| int(rng.gen_range(-range..=range))).collect()
}

/// A nonnegative integer combination of the extreme rays.
pub fn random_positive(rng: &mut ChaCha8Rng, space: &OrderedSpace, max: i64) -> RatVector {
    space
        .cone
        .extreme_rays
        .iter()
        .fold(zeros(space.dim), |acc, r| crate::rational::add(&acc, &scale(&int(rng.gen_range(0..=max)), r)))
}

fn random_decay(rng: &mut ChaCha8Rng) -> (Rat, i64) {
    match rng.gen_range(0..6) {
        0 => (Rat::one(), -1),
        1 => (Rat::one(), -2),
        2 => (frac(1, 2), 0),
        3 => (frac(2, 3), 1),
        4 => (frac(9, 10), 0),
        _ => (frac(1, 3), -1),
    }
}

/// Closed-form family; divergent with probability `divergent_pct` percent.
pub fn random_family(rng: &mut ChaCha8Rng, dim: usize, divergent_pct: u32) -> SeqFamily {
    let limit = random_vector(rng, dim, 3);
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let (rho, exp) = random_decay(rng);
        terms.push(VecTerm::new(random_vector(rng, dim, 3), rho, exp));
    }
    if rng.gen_range(0..100) < divergent_pct {
        let mut c = zeros(dim);
        c[rng.gen_range(0..dim)] = int(*[-2, -1, 1, 2].choose(rng).expect("nonempty"));
        terms.push(VecTerm::new(c, Rat::one(), rng.gen_range(1..=2)));
    }
    let mut prefix = BTreeMap::new();
    if rng.gen_bool(0.3) {
        prefix.insert(rng.gen_range(1..=3), random_vector(rng, dim, 4));
    }
    SeqFamily::new(limit, terms, prefix).expect("generated terms are valid")
}

/// A family with every member in the cone: positive limit and decaying
/// terms with positive coefficients.
pub fn random_positive_family(rng: &mut ChaCha8Rng, space: &OrderedSpace) -> SeqFamily {
    let limit = random_positive(rng, space, 2);
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let (rho, exp) = random_decay(rng);
        terms.push(VecTerm::new(random_positive(rng, space, 3), rho, exp));
    }
    let mut prefix = BTreeMap::new();
    if rng.gen_bool(0.3) {
        prefix.insert(1, random_positive(rng, space, 4));
    }
    SeqFamily::new(limit, terms, prefix).expect("generated terms are valid")
}

/// A witness-style family `(1/n) u` or `rho^n u` with `u` positive.
pub fn random_decreasing(rng: &mut ChaCha8Rng, space: &OrderedSpace) -> SeqFamily {
    let mut u = random_positive(rng, space, 2);
    if crate::rational::is_zero_vec(&u) {
        u = space.cone.extreme_rays[0].clone();
    }
    let (rho, exp) = match rng.gen_range(0..3) {
        0 => (Rat::one(), -1),
        1 => (frac(1, 2), 0),
        _ => (Rat::one(), -2),
    };
    SeqFamily::simple(zeros(space.dim), vec![VecTerm::new(u, rho, exp)]).expect("valid")
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, range: i64) -> RatMatrix {
    RatMatrix::new((0..rows).map(|_| random_vector(rng, cols, range)).collect()).expect("rectangular")
}

/// Matrix with the given rank at most, as a product of random factors.
pub fn random_rank_deficient(rng: &mut ChaCha8Rng, rows: usize, cols: usize, rank: usize) -> RatMatrix {
    let a = random_matrix(rng, rows, rank, 2);
    let b = random_matrix(rng, rank, cols, 2);
    a.mul(&b).expect("shapes agree")
}

/// `count` nonzero vectors with pairwise disjoint supports in `Q^dim`.
pub fn random_disjoint_family(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> Vec<RatVector> {
    let mut coords: Vec<usize> = (0..dim).collect();
    coords.shuffle(rng);
    let mut out = Vec::new();
    for k in 0..count {
        let mut v = zeros(dim);
        if k < dim {
            let c = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
            v[coords[k]] = int(c);
        }
        out.push(v);
    }
    out
}
