//! Small standard triangulations.

use crate::complex::{Simplex, SimplicialComplex};

/// The full d-simplex on vertices `offset..=offset+d`.
pub fn simplex(d: usize, offset: usize) -> SimplicialComplex {
    let s: Simplex = (offset..=offset + d).collect();
    SimplicialComplex::from_maximal([s]).expect("valid simplex")
}

/// Boundary of the d-simplex on vertices `offset..=offset+d`, a (d-1)-sphere.
pub fn simplex_boundary(d: usize, offset: usize) -> SimplicialComplex {
    assert!(d >= 1);
    let all: Simplex = (offset..=offset + d).collect();
    let facets = (0..=d).map(|i| {
        let mut f = all.clone();
        f.remove(i);
        f
    });
    SimplicialComplex::from_maximal(facets).expect("valid sphere")
}

/// Boundary of the (n+1)-dimensional cross-polytope: vertex `2i` is `+e_i`,
/// vertex `2i+1` is `-e_i`.
pub fn cross_polytope_boundary(n: usize) -> SimplicialComplex {
    let facets = (0..1usize << (n + 1)).map(|mask| (0..=n).map(|i| 2 * i + ((mask >> i) & 1)).collect::<Simplex>());
    SimplicialComplex::from_maximal(facets).expect("valid sphere")
}

/// Cycle graph on `m >= 3` vertices.
pub fn polygon(m: usize) -> SimplicialComplex {
    assert!(m >= 3);
    SimplicialComplex::from_maximal((0..m).map(|i| vec![i, (i + 1) % m])).expect("valid polygon")
}

/// The 6-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    SimplicialComplex::from_maximal([
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [1, 3, 5],
        [2, 4, 5],
    ])
    .expect("valid RP2")
}
