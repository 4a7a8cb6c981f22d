//! Integral simplicial homology via Smith normal form.

use num::{BigInt, One, ToPrimitive};

use crate::complex::SimplicialComplex;
use crate::linalg::smith_invariants;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<u64>,
}

/// H_k(X; Z) as (betti number, torsion coefficients).
pub fn homology(x: &SimplicialComplex, k: usize) -> HomologyGroup {
    let n_k = x.count(k);
    let rank_k = if k >= 1 && k <= x.dim() {
        smith_invariants(&x.boundary_matrix(k).expect("in range")).len()
    } else {
        0
    };
    let (rank_up, torsion) = if k < x.dim() {
        let inv = smith_invariants(&x.boundary_matrix(k + 1).expect("in range"));
        let t = inv
            .iter()
            .filter(|d| !d.is_one())
            .map(|d: &BigInt| d.to_u64().expect("torsion coefficient fits in u64"))
            .collect();
        (inv.len(), t)
    } else {
        (0, Vec::new())
    };
    HomologyGroup { betti: n_k - rank_k - rank_up, torsion }
}

/// Homology in every degree 0..=dim.
pub fn homology_all(x: &SimplicialComplex) -> Vec<HomologyGroup> {
    (0..=x.dim()).map(|k| homology(x, k)).collect()
}

/// Whether two complexes have isomorphic integral homology in every degree.
pub fn same_homology(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    let (ha, hb) = (homology_all(a), homology_all(b));
    let trivial = HomologyGroup { betti: 0, torsion: Vec::new() };
    (0..ha.len().max(hb.len())).all(|k| ha.get(k).unwrap_or(&trivial) == hb.get(k).unwrap_or(&trivial))
}
