//! The lattice side: a brute-force SVP∞ oracle, comass minimization over
//! integral classes in a coefficient box, and the Lipschitz estimators.

use std::cmp::Ordering;

use num::{BigInt, BigRational, Zero};

use crate::chain::{pair, Chain, Cochain};
use crate::comass::{cycle_ratio, simplicial_comass_with, ComassValue, Engine};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gadget::LatticeBasis;
use crate::volume::VolMultiple;

pub const DEFAULT_MAX_ENUM: u128 = 10_000_000;

/// Enumeration cap from `COMASS_MAX_ENUM`, or the default.
pub fn max_enum_from_env() -> u128 {
    std::env::var("COMASS_MAX_ENUM").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_ENUM)
}

fn box_size(len: usize, bound: i64) -> u128 {
    (2 * bound as u128 + 1).saturating_pow(len as u32)
}

/// All integer vectors in [-B, B]^len in lexicographic order.
fn for_each_in_box(len: usize, bound: i64, mut f: impl FnMut(&[i64])) {
    let mut a = vec![-bound; len];
    loop {
        f(&a);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if a[i] < bound {
                a[i] += 1;
                for x in &mut a[i + 1..] {
                    *x = -bound;
                }
                break;
            }
        }
    }
}

/// First nonzero entry positive; one representative of each ± pair.
fn sign_canonical(a: &[i64]) -> bool {
    a.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

fn linf(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// Shortest nonzero ‖Σ a_j u_j‖∞ over |a_j| ≤ B. Among minimizers the
/// lexicographically lowest coefficient vector whose first nonzero entry
/// is positive is reported.
pub fn svp_linf_bruteforce(basis: &LatticeBasis, bound: i64, cap: u128) -> Result<(i64, Vec<i64>)> {
    if bound < 1 {
        return Err(Error::Malformed("coefficient bound must be at least 1".into()));
    }
    let needed = box_size(basis.len(), bound);
    if needed > cap {
        return Err(Error::EnumerationBudget { needed, cap });
    }
    let mut best: Option<(i64, Vec<i64>)> = None;
    for_each_in_box(basis.len(), bound, |a| {
        if !sign_canonical(a) {
            return;
        }
        let norm = linf(&basis.combine(a));
        if norm == 0 {
            return;
        }
        if best.as_ref().is_none_or(|(b, _)| norm < *b) {
            best = Some((norm, a.to_vec()));
        }
    });
    best.ok_or(Error::NoCandidate)
}

#[derive(Clone, Debug)]
pub enum Mode {
    Nonzero,
    PairingNonzero(Chain),
    PairingOne(Chain),
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub value: ComassValue,
    pub coeffs: Vec<i64>,
    pub candidates: usize,
    pub evaluated: usize,
}

fn combination(generators: &[Cochain], a: &[i64], degree: usize) -> Cochain {
    let mut b = Cochain::zero(degree);
    for (g, &aj) in generators.iter().zip(a) {
        if aj != 0 {
            b = b.add(&g.scale(&BigRational::from_integer(BigInt::from(aj))));
        }
    }
    b
}

/// Minimizes comass_Δ(Σ a_j gen_j) over |a_j| ≤ B subject to the mode.
pub fn min_comass_search(x: &SimplicialComplex, generators: &[Cochain], bound: i64, mode: &Mode) -> Result<SearchResult> {
    min_comass_search_with(x, generators, bound, mode, &[], Engine::Auto, max_enum_from_env())
}

/// As [`min_comass_search`]. Cycles in `pool` give lower bounds
/// |⟨β,z⟩|/‖z‖₁ used to skip candidates that cannot win; the witness of
/// every solved candidate joins the pool. Comass is invariant under β ↦ −β,
/// so outside `PairingOne` only sign-canonical vectors are searched.
pub fn min_comass_search_with(
    x: &SimplicialComplex,
    generators: &[Cochain],
    bound: i64,
    mode: &Mode,
    pool: &[Chain],
    engine: Engine,
    cap: u128,
) -> Result<SearchResult> {
    if generators.is_empty() {
        return Err(Error::NoCandidate);
    }
    if bound < 0 {
        return Err(Error::Malformed("coefficient bound must be nonnegative".into()));
    }
    let degree = generators[0].degree();
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
    }
    let needed = box_size(generators.len(), bound);
    if needed > cap {
        return Err(Error::EnumerationBudget { needed, cap });
    }
    let h_pairings: Option<Vec<BigRational>> = match mode {
        Mode::Nonzero => None,
        Mode::PairingNonzero(h) | Mode::PairingOne(h) => {
            if h.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: h.degree() });
            }
            Some(generators.iter().map(|g| pair(g, h)).collect())
        }
    };
    let mut cands: Vec<Vec<i64>> = Vec::new();
    for_each_in_box(generators.len(), bound, |a| {
        let keep = match (mode, &h_pairings) {
            (Mode::Nonzero, _) => sign_canonical(a),
            (Mode::PairingNonzero(_), Some(hp)) => {
                sign_canonical(a) && !weighted(a, hp).is_zero()
            }
            (Mode::PairingOne(_), Some(hp)) => weighted(a, hp) == BigRational::from_integer(1.into()),
            _ => unreachable!(),
        };
        if keep {
            cands.push(a.to_vec());
        }
    });
    if cands.is_empty() {
        return Err(Error::NoCandidate);
    }
    let mut pool: Vec<Chain> = pool.iter().filter(|z| z.degree() == degree).cloned().collect();
    let lower = |b: &Cochain, pool: &[Chain]| pool.iter().map(|z| cycle_ratio(b, z)).max().unwrap_or_else(BigRational::zero);
    let mut order: Vec<(BigRational, Vec<i64>, Cochain)> = cands
        .into_iter()
        .map(|a| {
            let b = combination(generators, &a, degree);
            (lower(&b, &pool), a, b)
        })
        .collect();
    order.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
    let candidates = order.len();
    let mut best: Option<(ComassValue, Vec<i64>)> = None;
    let mut evaluated = 0;
    for (lb0, a, b) in order {
        if let Some((bv, ba)) = &best {
            if lb0 > bv.lp_value {
                break;
            }
            let lb = lower(&b, &pool);
            match lb.cmp(&bv.lp_value) {
                Ordering::Greater => continue,
                Ordering::Equal if a > *ba => continue,
                _ => {}
            }
        }
        let c = simplicial_comass_with(x, &b, engine)?;
        evaluated += 1;
        if !c.witness.is_zero() {
            pool.push(c.witness.clone());
        }
        let better = match &best {
            None => true,
            Some((bv, ba)) => c.lp_value < bv.lp_value || (c.lp_value == bv.lp_value && a < *ba),
        };
        if better {
            best = Some((c, a));
        }
    }
    let (value, coeffs) = best.expect("at least one candidate");
    Ok(SearchResult { value, coeffs, candidates, evaluated })
}

fn weighted(a: &[i64], w: &[BigRational]) -> BigRational {
    a.iter().zip(w).map(|(x, y)| y * BigRational::from_integer(BigInt::from(*x))).sum()
}

/// A comass value c together with c^{1/n}.
#[derive(Clone, Debug)]
pub struct RootEstimate {
    pub radicand: VolMultiple,
    pub root: usize,
    pub value: f64,
}

impl RootEstimate {
    pub fn new(radicand: VolMultiple, root: usize) -> Self {
        let value = radicand.to_f64().max(0.0).powf(1.0 / root as f64);
        RootEstimate { radicand, root, value }
    }

    pub fn symbolic(&self) -> String {
        format!("({})^(1/{})", self.radicand, self.root)
    }
}

/// (min comass)^{1/n}: the estimator for L_HNT, L_{≠0} or L_1 by mode, up to
/// the constant relating simplicial comass to Lipschitz constants.
pub fn lhnt_estimate(x: &SimplicialComplex, generators: &[Cochain], bound: i64, n: usize, mode: &Mode) -> Result<RootEstimate> {
    let r = min_comass_search(x, generators, bound, mode)?;
    Ok(RootEstimate::new(r.value.value, n))
}

/// Handcrafted lattice families.
pub mod families {
    use super::LatticeBasis;

    /// Identity plus `k` times the all-ones vector in the first row.
    pub fn identity_like(dim: usize, k: i64) -> LatticeBasis {
        let mut b = LatticeBasis::identity(dim);
        for e in &mut b.vectors[0] {
            *e += k;
        }
        b
    }

    /// Two rows differing in one coordinate: (k, k+1, ...) and (k+1, k, ...),
    /// with many near-ties among short combinations.
    pub fn near_parallel(dim: usize, k: i64) -> LatticeBasis {
        assert!(dim >= 2);
        let mut u0 = vec![k; dim];
        let mut u1 = vec![k; dim];
        u0[1] = k + 1;
        u1[0] = k + 1;
        LatticeBasis { dim, vectors: vec![u0, u1] }
    }
}

/// Ratio used when comparing a comass value against an integer norm.
pub fn ratio_to(c: &VolMultiple, norm: i64) -> f64 {
    if norm == 0 {
        return f64::INFINITY;
    }
    c.to_f64() / norm as f64
}

/// Exact `c >= k` for an integer k.
pub fn at_least(c: &VolMultiple, k: i64) -> bool {
    c.cmp_rational(&BigRational::from_integer(BigInt::from(k))) != Ordering::Less
}
