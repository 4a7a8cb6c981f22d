//! Exact values of the form `q * vol_k^p`, where vol_k is the volume of the
//! unit regular k-simplex (irrational for most k).

use std::cmp::Ordering;
use std::fmt;

use num::{BigRational, Signed, ToPrimitive, Zero};

use crate::complex::{simplex_volume, simplex_volume_sq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolMultiple {
    pub coeff: BigRational,
    pub dim: usize,
    pub power: i32,
}

impl VolMultiple {
    pub fn new(coeff: BigRational, dim: usize, power: i32) -> Self {
        VolMultiple { coeff, dim, power }
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * simplex_volume(self.dim).powi(self.power)
    }

    /// Exact comparison with a plain rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        let lhs_sign = sign_of(&self.coeff);
        let rhs_sign = sign_of(r);
        if lhs_sign != rhs_sign {
            return lhs_sign.cmp(&rhs_sign);
        }
        if lhs_sign == 0 {
            return Ordering::Equal;
        }
        // compare squares: coeff^2 vol^(2p) vs r^2
        let v2 = simplex_volume_sq(self.dim);
        let mut l = &self.coeff * &self.coeff;
        let mut rr = r * r;
        if self.power >= 0 {
            l *= num::pow(v2, self.power as usize);
        } else {
            rr *= num::pow(v2, (-self.power) as usize);
        }
        let ord = l.cmp(&rr);
        if lhs_sign > 0 {
            ord
        } else {
            ord.reverse()
        }
    }

    /// Comparison of two multiples of the same volume power.
    pub fn cmp_same(&self, other: &VolMultiple) -> Ordering {
        assert_eq!((self.dim, self.power), (other.dim, other.power), "incomparable volume multiples");
        self.coeff.cmp(&other.coeff)
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for VolMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 0 {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{} * vol_{}^{{{}}}", self.coeff, self.dim, self.power)
        }
    }
}
