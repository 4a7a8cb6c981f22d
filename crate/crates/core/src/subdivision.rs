//! Edgewise subdivision and the model spheres S^n_t.

use std::collections::BTreeMap;

use num::{BigInt, BigRational};

use crate::complex::{Simplex, SimplicialComplex};
use crate::map::SimplicialMap;
use crate::models::cross_polytope_boundary;

/// A vertex of a subdivision: the integer barycentric weights on the
/// original vertices of its carrier (sorted by vertex, weights sum to t).
pub type Weights = Vec<(usize, u32)>;

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub factor: u32,
    pub complex: SimplicialComplex,
    /// Weights of each new vertex label.
    pub weights: BTreeMap<usize, Weights>,
}

impl Subdivision {
    /// Sends every new vertex to the original carrier vertex of largest
    /// weight (lowest label on ties): a simplicial approximation of the
    /// identity, hence of degree one on closed manifolds.
    pub fn carrier_map(&self, original: &SimplicialComplex) -> SimplicialMap {
        let vm = self
            .weights
            .iter()
            .map(|(&v, w)| {
                let best = w.iter().max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0))).expect("nonempty carrier");
                (v, best.0)
            })
            .collect();
        SimplicialMap::unchecked(self.complex.clone(), original.clone(), vm)
    }
}

/// Simplices of the t-fold edgewise subdivision of the standard k-simplex,
/// as lists of weight vectors (length k+1, summing to t).
fn kuhn_simplices(k: usize, t: u32) -> Vec<Vec<Vec<u32>>> {
    if k == 0 {
        return vec![vec![vec![t]]];
    }
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for p in &perms {
            for i in 0..k {
                if !p.contains(&i) {
                    let mut q = p.clone();
                    q.push(i);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let mut out = Vec::new();
    let mut base = vec![0u32; k];
    loop {
        for perm in &perms {
            let mut pts = Vec::with_capacity(k + 1);
            let mut y = base.clone();
            pts.push(y.clone());
            for &i in perm {
                y[i] += 1;
                pts.push(y.clone());
            }
            // y is (x_1..x_k) with t >= x_1 >= ... >= x_k >= 0
            let inside = pts.iter().all(|y| y[0] <= t && y.windows(2).all(|w| w[0] >= w[1]));
            if inside {
                out.push(
                    pts.iter()
                        .map(|y| {
                            let mut c = Vec::with_capacity(k + 1);
                            c.push(t - y[0]);
                            for i in 0..k - 1 {
                                c.push(y[i] - y[i + 1]);
                            }
                            c.push(y[k - 1]);
                            c
                        })
                        .collect(),
                );
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            if base[i] + 1 < t {
                base[i] += 1;
                break;
            }
            base[i] = 0;
            i += 1;
        }
    }
}

/// t-fold edgewise subdivision in the global vertex order; every
/// k-simplex splits into t^k simplices and the edge scale divides by t.
pub fn edgewise_subdivision(x: &SimplicialComplex, t: u32) -> Subdivision {
    assert!(t >= 1);
    let mut labels: BTreeMap<Weights, usize> = BTreeMap::new();
    let mut cells: Vec<Simplex> = Vec::new();
    let mut table: BTreeMap<usize, Vec<Vec<Vec<u32>>>> = BTreeMap::new();
    for s in x.maximal_simplices() {
        let k = s.len() - 1;
        let pattern = table.entry(k).or_insert_with(|| kuhn_simplices(k, t));
        for simplex in pattern.iter() {
            let mut cell = Vec::with_capacity(k + 1);
            for c in simplex {
                let w: Weights = s.iter().zip(c).filter(|(_, &m)| m > 0).map(|(&v, &m)| (v, m)).collect();
                let next = labels.len();
                cell.push(*labels.entry(w).or_insert(next));
            }
            cells.push(cell);
        }
    }
    let complex = SimplicialComplex::from_maximal(cells)
        .expect("subdivision is a complex")
        .with_edge_scale(x.edge_scale() / BigRational::from_integer(BigInt::from(t)));
    let weights = labels.into_iter().map(|(w, l)| (l, w)).collect();
    Subdivision { factor: t, complex, weights }
}

/// S^n_t: the boundary of the (n+1)-cross-polytope subdivided t times,
/// with 2^{n+1} t^n facets.
pub fn model_sphere(n: usize, t: u32) -> SimplicialComplex {
    let base = cross_polytope_boundary(n);
    if t == 1 {
        return base;
    }
    edgewise_subdivision(&base, t).complex
}

/// 2^{n+1} t^n.
pub fn model_sphere_facets(n: usize, t: u64) -> u128 {
    (1u128 << (n + 1)) * (t as u128).pow(n as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::fundamental_cycle;
    use crate::homology::same_homology;
    use crate::map::pushforward;
    use crate::models;

    #[test]
    fn counts_scale_by_t_to_the_k() {
        for k in 1..=3 {
            for t in 1..=4u32 {
                assert_eq!(kuhn_simplices(k, t).len(), t.pow(k as u32) as usize);
            }
        }
        let tri = edgewise_subdivision(&models::simplex(2, 0), 3);
        assert_eq!((tri.complex.count(0), tri.complex.count(2)), (10, 9));
        assert_eq!(tri.complex.edge_scale(), &BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn model_spheres() {
        for n in 1..=3 {
            for t in 1..=3u32 {
                let s = model_sphere(n, t);
                assert_eq!(s.count(n) as u128, model_sphere_facets(n, t as u64));
                assert!(same_homology(&s, &models::simplex_boundary(n + 1, 0)));
                assert!(fundamental_cycle(&s, n).is_some());
            }
        }
    }

    #[test]
    fn carrier_map_has_degree_one() {
        for n in 1..=3 {
            let base = cross_polytope_boundary(n);
            let sd = edgewise_subdivision(&base, 3);
            let f = sd.carrier_map(&base);
            assert!(f.first_violation().is_none());
            let z = fundamental_cycle(&sd.complex, n).unwrap();
            let img = pushforward(&f, &z);
            let w = fundamental_cycle(&base, n).unwrap();
            assert!(img == w || img == w.scale(&BigRational::from_integer((-1).into())));
        }
    }
}
