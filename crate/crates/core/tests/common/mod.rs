#![allow(dead_code)]

use comass::{Cochain, SimplicialComplex};
use num::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Random pure complex: `count` distinct d-simplices on `nv` vertices.
pub fn random_complex(r: &mut impl Rng, d: usize, nv: usize, count: usize) -> SimplicialComplex {
    let available = (0..=d).fold(1usize, |acc, i| acc * (nv - i) / (i + 1));
    assert!(count <= available, "only {available} distinct {d}-simplices on {nv} vertices");
    let mut chosen = std::collections::BTreeSet::new();
    let verts: Vec<usize> = (0..nv).collect();
    while chosen.len() < count {
        let mut s: Vec<usize> = verts.choose_multiple(r, d + 1).copied().collect();
        s.sort_unstable();
        chosen.insert(s);
    }
    SimplicialComplex::from_maximal(chosen).unwrap()
}

/// Random integral top-degree cochain with entries in [-m, m].
pub fn random_cochain(r: &mut impl Rng, x: &SimplicialComplex, k: usize, m: i64) -> Cochain {
    let mut b = Cochain::zero(k);
    for s in x.simplices(k) {
        b.add_term(s.clone(), q(r.gen_range(-m..=m), 1));
    }
    b
}
