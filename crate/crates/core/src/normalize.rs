//! Cocycle normalization: solve db = z − ẑ, round b, and bound z − db̂.

use num::{BigInt, BigRational, One, Signed};

use crate::chain::{coboundary, Chain, Cochain};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{solve_rational, to_rational, RationalSolve};

/// A cochain b of degree n−1 with db = c, or [`Error::NotExact`] carrying a
/// cycle on which `c` pairs nontrivially.
pub fn solve_coboundary(x: &SimplicialComplex, c: &Cochain) -> Result<Cochain> {
    let n = c.degree();
    if n == 0 {
        return Err(Error::DegreeMismatch { expected: 1, found: 0 });
    }
    if n > x.dim() {
        return Err(Error::DegreeOutOfRange { k: n, dim: x.dim() });
    }
    c.check_on(x)?;
    if c.is_zero() {
        return Ok(Cochain::zero(n - 1));
    }
    let d = to_rational(&x.boundary_matrix(n)?).transpose();
    match solve_rational(&d, &c.to_dense(x)) {
        RationalSolve::Solution(b) => Ok(Cochain::from_dense(x, n - 1, &b)),
        RationalSolve::Inconsistent(y) => {
            let witness = Chain::from_dense(x, n, &y);
            let pairing = crate::chain::pair(c, &witness);
            Err(Error::NotExact { witness, pairing })
        }
    }
}

/// Nearest integer, halves toward zero.
pub fn round_half_toward_zero(r: &BigRational) -> BigInt {
    let fl = r.floor().to_integer();
    let frac = r - BigRational::from_integer(fl.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match frac.cmp(&half) {
        std::cmp::Ordering::Less => fl,
        std::cmp::Ordering::Greater => fl + 1,
        std::cmp::Ordering::Equal => {
            if r.is_negative() {
                fl + 1
            } else {
                fl
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Rounded {
    pub b: Cochain,
    pub bhat: Cochain,
    pub zprime: Cochain,
    /// ‖ẑ‖∞ + (n+1)/2.
    pub sharp_bound: BigRational,
    /// n + 2.
    pub coarse_bound: BigRational,
}

/// z′ = z − db̂ where db = z − ẑ and b̂ rounds b entrywise.
pub fn round_cocycle(x: &SimplicialComplex, z: &Cochain, zhat: &Cochain, n: usize) -> Result<Rounded> {
    for c in [z, zhat] {
        if c.degree() != n {
            return Err(Error::DegreeMismatch { expected: n, found: c.degree() });
        }
    }
    if !z.is_integral() {
        return Err(Error::Malformed("z must be integral".into()));
    }
    let b = solve_coboundary(x, &z.sub(zhat))?;
    let mut bhat = Cochain::zero(n - 1);
    for (s, v) in b.iter() {
        bhat.add_term(s.clone(), BigRational::from_integer(round_half_toward_zero(v)));
    }
    let zprime = z.sub(&coboundary(x, &bhat));
    let sharp_bound = zhat.linf_norm() + BigRational::new(BigInt::from(n + 1), BigInt::from(2));
    let coarse_bound = BigRational::from_integer(BigInt::from(n + 2));
    if zprime.linf_norm() > sharp_bound {
        return Err(Error::Invariant("rounded cocycle exceeds the rounding bound".into()));
    }
    Ok(Rounded { b, bhat, zprime, sharp_bound, coarse_bound })
}

/// Whether `c` is d of an integral cochain (Smith-form solve).
pub fn is_integral_coboundary(x: &SimplicialComplex, c: &Cochain) -> bool {
    let n = c.degree();
    if c.is_zero() {
        return true;
    }
    if n == 0 || n > x.dim() || !c.is_integral() || c.check_on(x).is_err() {
        return false;
    }
    let d = x.boundary_matrix(n).expect("degree in range").transpose();
    crate::linalg::solve_integer(&d, &c.to_dense_int(x)).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{boundary, fundamental_cycle, pair};
    use crate::comass::linf_min_representative;
    use crate::models;
    use num::Zero;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn rounding_rule() {
        let r = |a, b| round_half_toward_zero(&q(a, b));
        assert_eq!(r(1, 2), BigInt::from(0));
        assert_eq!(r(-1, 2), BigInt::from(0));
        assert_eq!(r(3, 2), BigInt::from(1));
        assert_eq!(r(-3, 2), BigInt::from(-1));
        assert_eq!(r(5, 3), BigInt::from(2));
        assert_eq!(r(-5, 3), BigInt::from(-2));
        assert_eq!(r(7, 1), BigInt::from(7));
    }

    #[test]
    fn coboundary_solutions() {
        let x = models::simplex_boundary(3, 0);
        assert!(solve_coboundary(&x, &Cochain::zero(2)).unwrap().is_zero());
        // oriented so that the fundamental cycle pairs to 4 with the uniform cochain
        let fc = fundamental_cycle(&x, 2).unwrap();
        let mut u = Cochain::zero(2);
        for (s, v) in fc.iter() {
            u.add_term(s.clone(), v.clone());
        }
        let c = Cochain::indicator(&[0, 1, 2]).scale(&fc.get(&[0, 1, 2])).scale(&q(4, 1)).sub(&u);
        let b = solve_coboundary(&x, &c).unwrap();
        assert_eq!(coboundary(&x, &b), c);

        match solve_coboundary(&x, &Cochain::indicator(&[0, 1, 2])) {
            Err(Error::NotExact { witness, pairing }) => {
                assert!(boundary(&witness).is_zero());
                assert!(!pairing.is_zero());
                assert_eq!(pairing, pair(&Cochain::indicator(&[0, 1, 2]), &witness));
            }
            other => panic!("expected not-exact, got {other:?}"),
        }
    }

    #[test]
    fn pipeline_on_tetrahedron_boundary() {
        let x = models::simplex_boundary(3, 0);
        let fc = fundamental_cycle(&x, 2).unwrap();
        let z = Cochain::indicator(&[0, 1, 2]).scale(&q(4, 1)).scale(&fc.get(&[0, 1, 2]));
        // uniform cocycle of value 1 on the oriented facets, cohomologous to z
        let mut zhat = Cochain::zero(2);
        for (s, v) in fc.iter() {
            zhat.add_term(s.clone(), v.clone());
        }
        let r = round_cocycle(&x, &z, &zhat, 2).unwrap();
        assert!(r.zprime.is_integral());
        assert!(r.zprime.linf_norm() <= q(2, 1));
        assert_eq!(r.sharp_bound, q(5, 2));
        assert_eq!(r.coarse_bound, q(4, 1));
        assert!(is_integral_coboundary(&x, &r.zprime.sub(&z)));

        let rep = linf_min_representative(&x, &z).unwrap();
        assert_eq!(rep.value, q(1, 1));
        let r2 = round_cocycle(&x, &z, &rep.zhat, 2).unwrap();
        assert!(r2.zprime.linf_norm() <= r2.sharp_bound);
    }

    #[test]
    fn identity_when_already_minimal() {
        let x = models::simplex_boundary(3, 0);
        let z = Cochain::indicator(&[0, 1, 2]);
        let r = round_cocycle(&x, &z, &z, 2).unwrap();
        assert!(r.b.is_zero() && r.bhat.is_zero());
        assert_eq!(r.zprime, z);
    }

    #[test]
    fn mismatched_classes_are_rejected() {
        let x = models::simplex_boundary(3, 0);
        let z = Cochain::indicator(&[0, 1, 2]);
        assert!(matches!(round_cocycle(&x, &z, &Cochain::zero(2), 2), Err(Error::NotExact { .. })));
    }
}
