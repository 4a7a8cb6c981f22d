//! Simplicial maps, induced chain maps and mapping cylinders.

use std::collections::BTreeMap;

use num::BigRational;

use crate::chain::{Chain, Cochain};
use crate::complex::{sort_with_sign, Simplex, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub domain: SimplicialComplex,
    pub codomain: SimplicialComplex,
    pub vertex_map: BTreeMap<usize, usize>,
}

impl SimplicialMap {
    /// Checked constructor: the vertex map must be total and send simplices to simplices.
    pub fn new(domain: SimplicialComplex, codomain: SimplicialComplex, vertex_map: BTreeMap<usize, usize>) -> Result<Self> {
        let f = SimplicialMap { domain, codomain, vertex_map };
        if let Some(s) = f.first_violation() {
            return Err(Error::Invariant(format!("simplex {s:?} has no simplicial image")));
        }
        Ok(f)
    }

    /// No validation; use [`SimplicialMap::first_violation`] before relying on it.
    pub fn unchecked(domain: SimplicialComplex, codomain: SimplicialComplex, vertex_map: BTreeMap<usize, usize>) -> Self {
        SimplicialMap { domain, codomain, vertex_map }
    }

    pub fn identity(x: &SimplicialComplex) -> Self {
        let vm = x.vertices().map(|v| (v, v)).collect();
        SimplicialMap { domain: x.clone(), codomain: x.clone(), vertex_map: vm }
    }

    /// A domain simplex whose image is not a simplex of the codomain (or which
    /// has an unmapped vertex), if any.
    pub fn first_violation(&self) -> Option<Simplex> {
        for k in (0..=self.domain.dim()).rev() {
            for s in self.domain.simplices(k) {
                let img: Option<Vec<usize>> = s.iter().map(|v| self.vertex_map.get(v).copied()).collect();
                let ok = match img {
                    None => false,
                    Some(mut img) => {
                        img.sort_unstable();
                        img.dedup();
                        self.codomain.contains(&img)
                    }
                };
                if !ok {
                    return Some(s.clone());
                }
            }
        }
        None
    }

    pub fn apply(&self, v: usize) -> usize {
        self.vertex_map[&v]
    }

    /// Sorted image and orientation sign, or `None` when the image is degenerate.
    pub fn image(&self, s: &[usize]) -> Option<(Simplex, i32)> {
        let mut img: Vec<usize> = s.iter().map(|v| self.apply(*v)).collect();
        let sign = sort_with_sign(&mut img)?;
        Some((img, sign))
    }

    /// g ∘ self.
    pub fn then(&self, g: &SimplicialMap) -> SimplicialMap {
        let vm = self.vertex_map.iter().map(|(&v, &w)| (v, g.apply(w))).collect();
        SimplicialMap { domain: self.domain.clone(), codomain: g.codomain.clone(), vertex_map: vm }
    }
}

fn signed(c: &BigRational, sign: i32) -> BigRational {
    if sign > 0 {
        c.clone()
    } else {
        -c.clone()
    }
}

pub fn pushforward(f: &SimplicialMap, c: &Chain) -> Chain {
    let mut out = Chain::zero(c.degree());
    for (s, a) in c.iter() {
        if let Some((img, sign)) = f.image(s) {
            out.add_term(img, signed(a, sign));
        }
    }
    out
}

pub fn pullback(f: &SimplicialMap, b: &Cochain) -> Cochain {
    let k = b.degree();
    let mut out = Cochain::zero(k);
    for s in f.domain.simplices(k) {
        if let Some((img, sign)) = f.image(s) {
            let v = b.get(&img);
            if v != BigRational::from_integer(0.into()) {
                out.add_term(s.clone(), signed(&v, sign));
            }
        }
    }
    out
}

/// Result of [`mapping_cylinder`]. Domain vertex `v` is relabeled `v + shift`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub complex: SimplicialComplex,
    pub domain_inclusion: SimplicialMap,
    pub codomain_inclusion: SimplicialMap,
    pub shift: usize,
}

/// Ordered simplicial mapping cylinder: for every domain simplex
/// a_0 < ... < a_k and 0 <= i <= k the simplex {a_0..a_i} ∪ {f(a_i)..f(a_k)}.
pub fn mapping_cylinder(f: &SimplicialMap) -> Cylinder {
    let shift = f.codomain.max_vertex() + 1;
    let mut cells: Vec<Simplex> = f.codomain.maximal_simplices();
    cells.extend(cylinder_cells(f, shift));
    let complex = SimplicialComplex::from_maximal(cells)
        .expect("labels are disjoint")
        .with_edge_scale(f.codomain.edge_scale().clone());
    let domain_inclusion = SimplicialMap {
        domain: f.domain.clone(),
        codomain: complex.clone(),
        vertex_map: f.domain.vertices().map(|v| (v, v + shift)).collect(),
    };
    let codomain_inclusion = SimplicialMap {
        domain: f.codomain.clone(),
        codomain: complex.clone(),
        vertex_map: f.codomain.vertices().map(|v| (v, v)).collect(),
    };
    Cylinder { complex, domain_inclusion, codomain_inclusion, shift }
}

/// The staircase cells of the cylinder with domain vertex `v` placed at
/// `v + shift`; `shift` must make domain and codomain labels disjoint.
pub fn cylinder_cells(f: &SimplicialMap, shift: usize) -> Vec<Simplex> {
    let mut cells = Vec::new();
    for s in f.domain.maximal_simplices() {
        for i in 0..s.len() {
            let mut cell: Simplex = s[..=i].iter().map(|v| v + shift).collect();
            let mut tail: Vec<usize> = s[i..].iter().map(|v| f.apply(*v)).collect();
            tail.sort_unstable();
            tail.dedup();
            cell.extend(tail);
            cells.push(cell);
        }
    }
    cells
}

/// The deformation retraction of a cylinder onto its codomain.
pub fn cylinder_retraction(f: &SimplicialMap, cyl: &Cylinder) -> SimplicialMap {
    let mut vm: BTreeMap<usize, usize> = f.codomain.vertices().map(|v| (v, v)).collect();
    for v in f.domain.vertices() {
        vm.insert(v + cyl.shift, f.apply(v));
    }
    SimplicialMap { domain: cyl.complex.clone(), codomain: f.codomain.clone(), vertex_map: vm }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{boundary, fundamental_cycle, pair};
    use crate::homology::same_homology;
    use crate::models;
    use num::Signed;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    /// The scale-3 hexagon wrapped twice around a triangle.
    fn double_cover() -> SimplicialMap {
        let dom = models::polygon(6);
        let cod = models::polygon(3);
        SimplicialMap::new(dom, cod, (0..6).map(|v| (v, v % 3)).collect()).unwrap()
    }

    #[test]
    fn identity_and_collapse() {
        let x = models::simplex_boundary(3, 0);
        let z = fundamental_cycle(&x, 2).unwrap();
        let id = SimplicialMap::identity(&x);
        assert_eq!(pushforward(&id, &z), z);
        let pt = models::simplex(0, 0);
        let c = SimplicialMap::new(x.clone(), pt, x.vertices().map(|v| (v, 0)).collect()).unwrap();
        assert!(pushforward(&c, &z).is_zero());
    }

    #[test]
    fn non_simplicial_is_rejected() {
        let dom = models::simplex(1, 0);
        let cod = models::polygon(4);
        let bad = [(0, 0), (1, 2)].into_iter().collect();
        assert!(SimplicialMap::new(dom, cod, bad).is_err());
    }

    #[test]
    fn degree_two_circle() {
        let f = double_cover();
        let z = fundamental_cycle(&f.domain, 1).unwrap();
        let w = fundamental_cycle(&f.codomain, 1).unwrap();
        let img = pushforward(&f, &z);
        assert!(img == w.scale(&q(2)) || img == w.scale(&q(-2)));
        let b = Cochain::indicator(&[0, 1]);
        let pb = pullback(&f, &b);
        assert_eq!(pair(&pb, &z).abs(), q(2));
        assert_eq!(pair(&pb, &z), pair(&b, &img));
    }

    #[test]
    fn cylinder_of_point() {
        let pt = models::simplex(0, 0);
        let f = SimplicialMap::identity(&pt);
        let cyl = mapping_cylinder(&f);
        assert_eq!((cyl.complex.count(0), cyl.complex.count(1)), (2, 1));
    }

    #[test]
    fn cylinder_homology_matches_codomain() {
        let x = models::simplex_boundary(3, 0);
        let cyl = mapping_cylinder(&SimplicialMap::identity(&x));
        assert!(same_homology(&cyl.complex, &x));

        let f = double_cover();
        let cyl = mapping_cylinder(&f);
        assert!(same_homology(&cyl.complex, &f.codomain));
        let z = fundamental_cycle(&f.domain, 1).unwrap();
        let zi = pushforward(&cyl.domain_inclusion, &z);
        assert!(boundary(&zi).is_zero());
        let back = pushforward(&cylinder_retraction(&f, &cyl), &zi);
        let w = fundamental_cycle(&f.codomain, 1).unwrap();
        assert!(back == w.scale(&q(2)) || back == w.scale(&q(-2)));
    }
}
