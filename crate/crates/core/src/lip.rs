//! Lipschitz bounds from comass, an absolute lower bound by counting, and
//! verification of simplicial Lipschitz certificates.

use num::{BigInt, BigRational, One};

use crate::chain::{fundamental_cycle, Cochain};
use crate::complex::{Simplex, SimplicialComplex};
use crate::map::{pullback, SimplicialMap};
use crate::normalize::is_integral_coboundary;
use crate::subdivision::{edgewise_subdivision, model_sphere, model_sphere_facets};

pub const CONSTANT_BANNER: &str = "bounds hold up to the theorem's constant";

/// Volume of the unit n-sphere.
pub fn sphere_volume(n: usize) -> f64 {
    let mut v = if n % 2 == 0 { 2.0 } else { 2.0 * std::f64::consts::PI };
    let mut k = if n % 2 == 0 { 0 } else { 1 };
    while k < n {
        k += 2;
        v *= 2.0 * std::f64::consts::PI / (k as f64 - 1.0);
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LipBounds {
    pub lower: f64,
    pub upper: f64,
}

/// (vol(S^n)·c)^{1/n} ≤ Lip ≤ C(c^{1/n} + 1) for comass `c` of the class.
pub fn lip_bounds_from_comass(c: f64, n: usize, c_upper: f64) -> LipBounds {
    assert!(n >= 1 && c >= 0.0);
    let inv = 1.0 / n as f64;
    LipBounds { lower: (sphere_volume(n) * c).powf(inv), upper: c_upper * (c.powf(inv) + 1.0) }
}

#[derive(Clone, Debug)]
pub struct LowerBoundConfig {
    pub max_subdivision: u32,
    pub constant: BigRational,
}

impl Default for LowerBoundConfig {
    fn default() -> Self {
        LowerBoundConfig { max_subdivision: 2, constant: BigRational::one() }
    }
}

#[derive(Clone, Debug)]
pub struct LowerBound {
    pub domain_count: u128,
    pub t_star: u64,
    pub bound: BigRational,
    /// Probed (t, facets of S^n_t).
    pub trace: Vec<(u64, u128)>,
}

/// A homotopically nontrivial simplicial map out of X subdivided at most
/// `max_subdivision` times must hit every facet of its target sphere, so the
/// target cannot be finer than S^n_{t*−1}; the bound is constant / t*.
pub fn absolute_lower_bound(x: &SimplicialComplex, n: usize, cfg: &LowerBoundConfig) -> LowerBound {
    let domain_count = if cfg.max_subdivision <= 1 {
        x.count(n) as u128
    } else {
        edgewise_subdivision(x, cfg.max_subdivision).complex.count(n) as u128
    };
    let mut trace = Vec::new();
    let mut probe = |t: u64| {
        let f = model_sphere_facets(n, t);
        trace.push((t, f));
        f > domain_count
    };
    let mut hi = 1u64;
    while !probe(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if probe(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let bound = &cfg.constant / BigRational::from_integer(BigInt::from(hi));
    LowerBound { domain_count, t_star: hi, bound, trace }
}

/// A simplicial map from a subdivided domain X_s to a sphere S^n_t.
#[derive(Clone, Debug)]
pub struct CertBundle {
    pub s: u32,
    pub t: u32,
    pub map: SimplicialMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    NonSimplicial(Simplex),
    ClassMismatch,
    NoFundamentalClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted { bound: BigRational },
    Rejected(Rejection),
}

/// A cocycle on a closed oriented pseudomanifold pairing to one with its
/// fundamental cycle.
pub fn fundamental_cocycle(y: &SimplicialComplex, n: usize) -> Option<Cochain> {
    let fc = fundamental_cycle(y, n)?;
    let (s, v) = fc.iter().next()?;
    Some(Cochain::indicator(s).scale(v))
}

/// Accepts when the map is simplicial and pulls the sphere's fundamental
/// class back to the class of `target` over the integers.
pub fn verify_certificate(cert: &CertBundle, target: &Cochain) -> Verdict {
    if let Some(s) = cert.map.first_violation() {
        return Verdict::Rejected(Rejection::NonSimplicial(s));
    }
    let n = target.degree();
    let Some(u) = fundamental_cocycle(&cert.map.codomain, n) else {
        return Verdict::Rejected(Rejection::NoFundamentalClass);
    };
    let diff = pullback(&cert.map, &u).sub(target);
    if !is_integral_coboundary(&cert.map.domain, &diff) {
        return Verdict::Rejected(Rejection::ClassMismatch);
    }
    Verdict::Accepted { bound: BigRational::new(BigInt::from(cert.s), BigInt::from(cert.t)) }
}

/// The certificate X_s → S^n_t for X = S^n_t, given by the carrier map of
/// the s-fold subdivision, together with its target class.
pub fn sphere_certificate(n: usize, t: u32, s: u32) -> (CertBundle, Cochain) {
    let sphere = model_sphere(n, t);
    let map = if s == 1 {
        SimplicialMap::identity(&sphere)
    } else {
        edgewise_subdivision(&sphere, s).carrier_map(&sphere)
    };
    let u = fundamental_cocycle(&sphere, n).expect("model spheres are oriented");
    let target = pullback(&map, &u);
    (CertBundle { s, t, map }, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::coboundary;
    use crate::gadget::{build_degree_map, wedge};
    use crate::models;
    use std::collections::BTreeMap;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn sphere_volumes() {
        let pi = std::f64::consts::PI;
        assert_eq!(sphere_volume(0), 2.0);
        assert!((sphere_volume(1) - 2.0 * pi).abs() < 1e-12);
        assert!((sphere_volume(2) - 4.0 * pi).abs() < 1e-12);
        assert!((sphere_volume(3) - 2.0 * pi * pi).abs() < 1e-12);
        assert!((sphere_volume(4) - 8.0 * pi * pi / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bounds_from_comass() {
        let b = lip_bounds_from_comass(0.0, 2, 1.0);
        assert_eq!(b.lower, 0.0);
        let b = lip_bounds_from_comass(1.0, 2, 1.0);
        assert!((b.lower - (4.0 * std::f64::consts::PI).sqrt()).abs() < 1e-12);
        assert!((b.lower - 3.5449).abs() < 1e-4);
        assert_eq!(b.upper, 2.0);
    }

    #[test]
    fn lower_stays_below_upper() {
        for n in 1..=4 {
            let k = sphere_volume(n).powf(1.0 / n as f64);
            for c in [0.0, 0.25, 1.0, 4.0, 100.0] {
                let b = lip_bounds_from_comass(c, n, k);
                assert!(b.lower <= b.upper * (1.0 + 1e-12), "n={n} c={c}");
            }
            // half that constant only suffices while c ≤ 1
            for c in [0.0, 0.25, 1.0] {
                let b = lip_bounds_from_comass(c, n, k / 2.0);
                assert!(b.lower <= b.upper * (1.0 + 1e-12), "n={n} c={c}");
            }
            let b = lip_bounds_from_comass(4.0, n, k / 2.0);
            assert!(b.lower > b.upper);
        }
    }

    #[test]
    fn counting_bound() {
        let cfg = LowerBoundConfig::default();
        let x = models::simplex_boundary(3, 0);
        let lb = absolute_lower_bound(&x, 2, &cfg);
        assert_eq!(lb.domain_count, 16);
        assert_eq!(lb.t_star, 2);
        assert_eq!(lb.bound, q(1, 2));
        assert!(lb.trace.iter().any(|&(t, f)| t == 1 && f == 8));

        let one = LowerBoundConfig { max_subdivision: 1, ..cfg.clone() };
        assert_eq!(absolute_lower_bound(&x, 2, &one).bound, q(1, 1));
        assert_eq!(absolute_lower_bound(&models::simplex(2, 0), 2, &cfg).t_star, 1);

        let mut prev = q(2, 1);
        for m in 3..12 {
            let lb = absolute_lower_bound(&models::polygon(m), 1, &one);
            assert!(lb.bound <= prev);
            prev = lb.bound;
        }
        let relabeled = x.relabel(|v| 10 + 3 * v);
        assert_eq!(absolute_lower_bound(&relabeled, 2, &cfg).bound, lb.bound);
    }

    #[test]
    fn identity_and_subdivision_certificates() {
        let (cert, target) = sphere_certificate(2, 1, 1);
        assert_eq!(verify_certificate(&cert, &target), Verdict::Accepted { bound: q(1, 1) });
        let (cert, target) = sphere_certificate(2, 2, 3);
        assert_eq!(verify_certificate(&cert, &target), Verdict::Accepted { bound: q(3, 2) });
        // cohomologous targets are accepted too
        let x = &cert.map.domain;
        let edge = x.simplices(1)[0].clone();
        let shifted = target.add(&coboundary(x, &Cochain::indicator(&edge).scale(&q(3, 1))));
        assert!(matches!(verify_certificate(&cert, &shifted), Verdict::Accepted { .. }));
    }

    #[test]
    fn tampered_vertex_is_rejected() {
        let (mut cert, target) = sphere_certificate(2, 1, 2);
        let mut vm: BTreeMap<usize, usize> = cert.map.vertex_map.clone();
        // send a vertex over +e_0 to −e_0; its star now spans an antipodal pair
        let v = *vm.iter().find(|(_, &w)| w == 0).unwrap().0;
        vm.insert(v, 1);
        cert.map = SimplicialMap::unchecked(cert.map.domain.clone(), cert.map.codomain.clone(), vm);
        assert!(matches!(verify_certificate(&cert, &target), Verdict::Rejected(Rejection::NonSimplicial(_))));
    }

    #[test]
    fn degree_two_is_a_class_mismatch() {
        let w = wedge(2, 1);
        let dm = build_degree_map(&w, &[2]).unwrap();
        let map = dm.map.clone();
        let target = fundamental_cocycle(&map.domain, 2).unwrap();
        let cert = CertBundle { s: 1, t: 1, map };
        assert_eq!(verify_certificate(&cert, &target), Verdict::Rejected(Rejection::ClassMismatch));
    }
}
