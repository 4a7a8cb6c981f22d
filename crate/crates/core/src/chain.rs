//! Sparse chains and cochains on oriented simplices.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::complex::{facets_of, simplex_volume_sq, sort_with_sign, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::volume::VolMultiple;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primal {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dual {}

/// Coefficients on positively oriented k-simplices. Chains and cochains
/// share the representation and differ only in the role tag.
pub struct Cells<R> {
    degree: usize,
    coeffs: BTreeMap<Simplex, BigRational>,
    _role: PhantomData<R>,
}

pub type Chain = Cells<Primal>;
pub type Cochain = Cells<Dual>;

impl<R> Clone for Cells<R> {
    fn clone(&self) -> Self {
        Cells { degree: self.degree, coeffs: self.coeffs.clone(), _role: PhantomData }
    }
}

impl<R> PartialEq for Cells<R> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs == other.coeffs
    }
}

impl<R> Eq for Cells<R> {}

impl<R> fmt::Debug for Cells<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cells").field("degree", &self.degree).field("coeffs", &self.coeffs).finish()
    }
}

impl<R> Cells<R> {
    pub fn zero(degree: usize) -> Self {
        Cells { degree, coeffs: BTreeMap::new(), _role: PhantomData }
    }

    /// Builds a chain from oriented simplices given in any vertex order;
    /// each is converted to increasing order with its permutation sign.
    pub fn from_oriented<I, S>(degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, BigRational)>,
        S: AsRef<[usize]>,
    {
        let mut out = Self::zero(degree);
        for (s, c) in terms {
            let mut v = s.as_ref().to_vec();
            if v.len() != degree + 1 {
                return Err(Error::DegreeMismatch { expected: degree, found: v.len().saturating_sub(1) });
            }
            let sign = sort_with_sign(&mut v)
                .ok_or_else(|| Error::Malformed(format!("repeated vertex in {:?}", s.as_ref())))?;
            out.add_term(v, if sign > 0 { c } else { -c });
        }
        Ok(out)
    }

    /// Indicator of one positively oriented simplex.
    pub fn indicator(s: &[usize]) -> Self {
        let mut out = Self::zero(s.len() - 1);
        out.add_term(s.to_vec(), BigRational::one());
        out
    }

    /// Adds `c` to the coefficient of a sorted simplex.
    pub fn add_term(&mut self, s: Simplex, c: BigRational) {
        debug_assert!(s.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(s.len(), self.degree + 1);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(s) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, s: &[usize]) -> BigRational {
        self.coeffs.get(s).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn linf_norm(&self) -> BigRational {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
    }

    pub fn l1_norm(&self) -> BigRational {
        self.coeffs.values().fold(BigRational::zero(), |a, c| a + c.abs())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero(self.degree);
        if !k.is_zero() {
            for (s, c) in &self.coeffs {
                out.coeffs.insert(s.clone(), c * k);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Errors if some keyed simplex is absent from `x`.
    pub fn check_on(&self, x: &SimplicialComplex) -> Result<()> {
        match self.coeffs.keys().find(|s| !x.contains(s)) {
            Some(s) => Err(Error::MissingSimplex(s.clone())),
            None => Ok(()),
        }
    }

    /// Dense coefficient vector in the complex's simplex order.
    pub fn to_dense(&self, x: &SimplicialComplex) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); x.count(self.degree)];
        for (s, c) in &self.coeffs {
            v[x.index_of(s).expect("simplex in complex")] = c.clone();
        }
        v
    }

    pub fn from_dense(x: &SimplicialComplex, degree: usize, v: &[BigRational]) -> Self {
        let mut out = Self::zero(degree);
        for (s, c) in x.simplices(degree).iter().zip(v) {
            if !c.is_zero() {
                out.coeffs.insert(s.clone(), c.clone());
            }
        }
        out
    }

    pub fn from_dense_int(x: &SimplicialComplex, degree: usize, v: &[BigInt]) -> Self {
        let q: Vec<BigRational> = v.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        Self::from_dense(x, degree, &q)
    }

    /// Integer coefficient vector; panics on non-integral entries.
    pub fn to_dense_int(&self, x: &SimplicialComplex) -> Vec<BigInt> {
        self.to_dense(x)
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integral coefficient");
                c.to_integer()
            })
            .collect()
    }

    /// Reinterprets the coefficients in the dual role.
    pub fn cast<S>(&self) -> Cells<S> {
        Cells { degree: self.degree, coeffs: self.coeffs.clone(), _role: PhantomData }
    }
}

/// Evaluation of a cochain on a chain.
pub fn pair(b: &Cochain, c: &Chain) -> BigRational {
    assert_eq!(b.degree, c.degree, "degree mismatch in pairing");
    let (small, large) = if b.coeffs.len() <= c.coeffs.len() {
        (&b.coeffs, &c.coeffs)
    } else {
        (&c.coeffs, &b.coeffs)
    };
    small
        .iter()
        .filter_map(|(s, x)| large.get(s).map(|y| x * y))
        .fold(BigRational::zero(), |a, t| a + t)
}

pub fn boundary(c: &Chain) -> Chain {
    if c.degree == 0 {
        return Chain::zero(0);
    }
    let mut out = Chain::zero(c.degree - 1);
    for (s, a) in &c.coeffs {
        for (i, f) in facets_of(s) {
            out.add_term(f, if i % 2 == 0 { a.clone() } else { -a.clone() });
        }
    }
    out
}

/// Coboundary on `x`: (db)(s) = sum_i (-1)^i b(s minus vertex i).
pub fn coboundary(x: &SimplicialComplex, b: &Cochain) -> Cochain {
    let k = b.degree + 1;
    let mut out = Cochain::zero(k);
    if k > x.dim() {
        return out;
    }
    for s in x.simplices(k) {
        let mut acc = BigRational::zero();
        for (i, f) in facets_of(s) {
            if let Some(v) = b.coeffs.get(&f) {
                if i % 2 == 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
        }
        if !acc.is_zero() {
            out.coeffs.insert(s.clone(), acc);
        }
    }
    out
}

/// Mass: sum |coeff| times the volume of a k-simplex of edge length `edge_scale`.
pub fn mass(x: &SimplicialComplex, c: &Chain) -> VolMultiple {
    let k = c.degree;
    let scale = num::pow(x.edge_scale().clone(), k);
    VolMultiple::new(c.l1_norm() * scale, k, 1)
}

/// Convenience: exact square of the volume of one k-simplex of `x`.
pub fn simplex_volume_sq_on(x: &SimplicialComplex, k: usize) -> BigRational {
    simplex_volume_sq(k) * num::pow(x.edge_scale().clone(), 2 * k)
}

/// Oriented fundamental cycle of a closed orientable pseudomanifold of
/// dimension `n`, or `None` if `x` is not one. The lexicographically first
/// facet carries coefficient +1.
pub fn fundamental_cycle(x: &SimplicialComplex, n: usize) -> Option<Chain> {
    coherent(x, n, false)
}

/// Coherently oriented sum of the n-simplices of a connected orientable
/// pseudomanifold that may have boundary (faces with one coface).
pub fn coherent_chain(x: &SimplicialComplex, n: usize) -> Option<Chain> {
    coherent(x, n, true)
}

fn coherent(x: &SimplicialComplex, n: usize, with_boundary: bool) -> Option<Chain> {
    if x.dim() != n || n == 0 {
        return None;
    }
    let facets = x.simplices(n);
    let cofaces = x.coface_table(n);
    let lo = if with_boundary { 1 } else { 2 };
    if cofaces.iter().any(|c| c.len() < lo || c.len() > 2) {
        return None;
    }
    let mut sign: Vec<i32> = vec![0; facets.len()];
    let mut chain = Chain::zero(n);
    let mut stack = vec![0usize];
    sign[0] = 1;
    let mut seen = 1;
    while let Some(f) = stack.pop() {
        for (i, face) in facets_of(&facets[f]) {
            let r = x.index_of(&face).expect("face closure");
            let my = sign[f] * if i % 2 == 0 { 1 } else { -1 };
            for &(g, gs) in &cofaces[r] {
                if g == f {
                    continue;
                }
                // coherent orientation: opposite induced signs on the shared face
                let want = -my * gs;
                if sign[g] == 0 {
                    sign[g] = want;
                    seen += 1;
                    stack.push(g);
                } else if sign[g] != want {
                    return None;
                }
            }
        }
    }
    if seen != facets.len() {
        return None;
    }
    for (f, s) in facets.iter().zip(&sign) {
        chain.add_term(f.clone(), BigRational::from_integer(BigInt::from(*s)));
    }
    Some(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::from_maximal([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn orientation_from_permutation() {
        let c = Chain::from_oriented(1, [([1, 0], q(1))]).unwrap();
        assert_eq!(c.get(&[0, 1]), q(-1));
        let c = Chain::from_oriented(1, [([0, 1], q(1)), ([1, 0], q(1))]).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn mass_examples() {
        let x = SimplicialComplex::from_maximal([[0, 1, 2]]).unwrap();
        let m = mass(&x, &Chain::indicator(&[0, 1, 2]));
        assert!((m.to_f64() - 3f64.sqrt() / 4.0).abs() < 1e-12);

        let s = tetra_boundary();
        let z = fundamental_cycle(&s, 2).unwrap();
        assert!(boundary(&z).is_zero());
        assert!((mass(&s, &z).to_f64() - 3f64.sqrt()).abs() < 1e-12);

        let x = SimplicialComplex::from_maximal([[0, 1], [1, 2]]).unwrap();
        let c = Chain::from_oriented(1, [([0, 1], q(-2)), ([1, 2], q(-2))]).unwrap();
        assert_eq!(mass(&x, &c).to_f64(), 4.0);
    }

    #[test]
    fn coboundary_is_adjoint() {
        let s = tetra_boundary();
        let b = Cochain::from_oriented(1, [([0, 1], q(3)), ([2, 1], q(5))]).unwrap();
        let z = Chain::from_oriented(2, [([0, 1, 2], q(2)), ([1, 2, 3], q(-7))]).unwrap();
        assert_eq!(pair(&coboundary(&s, &b), &z), pair(&b, &boundary(&z)));
    }

    #[test]
    fn non_manifold_has_no_fundamental_cycle() {
        let x = SimplicialComplex::from_maximal([[0, 1, 2], [0, 1, 3], [0, 1, 4]]).unwrap();
        assert!(fundamental_cycle(&x, 2).is_none());
    }
}
