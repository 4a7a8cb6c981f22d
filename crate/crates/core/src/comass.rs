//! Simplicial comass of a cochain and its dual, the ℓ∞-smallest cohomologous
//! representative.
//!
//! With V = max{⟨b,z⟩ : ∂z = 0, ‖z‖₁ ≤ 1} we have comass_Δ(b) = V / (vol_n s^n)
//! for edge scale s, and by LP duality V = min_β ‖b − dβ‖∞.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::chain::{boundary, coboundary, mass, pair, Chain, Cochain};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{nullspace_rational, SparseMatrix};
use crate::lp::{solve_lp, solve_lp_f64, LinearProgram, LpStatus, Sense, VarBound};
use crate::volume::VolMultiple;

/// Problems with at most this many n-simplices go straight to the exact simplex method.
pub const EXACT_LIMIT: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Exact simplex only.
    Exact,
    /// Float solve, then exact reconstruction of a primal cycle and a dual
    /// cochain with equal values; exact simplex if they disagree.
    Certified,
    Auto,
}

#[derive(Clone, Debug)]
pub struct ComassValue {
    /// comass_Δ(b) as a multiple of vol_n^{-1}.
    pub value: VolMultiple,
    /// max ⟨b,z⟩ over cycles with ‖z‖₁ ≤ 1.
    pub lp_value: BigRational,
    /// Optimal cycle with ‖z‖₁ = 1 (zero when the value is zero). Its mass is
    /// vol_n s^n, so witness / (vol_n s^n) is the mass-one maximizer.
    pub witness: Chain,
}

#[derive(Clone, Debug)]
pub struct LinfRep {
    pub zhat: Cochain,
    /// ẑ = b − dβ.
    pub beta: Cochain,
    pub value: BigRational,
}

fn check_degree(x: &SimplicialComplex, b: &Cochain) -> Result<usize> {
    let n = b.degree();
    if n > x.dim() {
        return Err(Error::DegreeOutOfRange { k: n, dim: x.dim() });
    }
    b.check_on(x)?;
    Ok(n)
}

/// |⟨b,z⟩| / ‖z‖₁, a lower bound for the LP value V.
pub fn cycle_ratio(b: &Cochain, z: &Chain) -> BigRational {
    let l1 = z.l1_norm();
    if l1.is_zero() {
        return BigRational::zero();
    }
    pair(b, z).abs() / l1
}

fn edge_power(x: &SimplicialComplex, n: usize) -> BigRational {
    num::pow(x.edge_scale().clone(), n)
}

fn finish(x: &SimplicialComplex, n: usize, v: BigRational, witness: Chain) -> ComassValue {
    let coeff = &v / edge_power(x, n);
    ComassValue { value: VolMultiple::new(coeff, n, -1), lp_value: v, witness }
}

/// The comass LP: variables z⁺_p, z⁻_p at 2p, 2p+1.
pub fn comass_program(x: &SimplicialComplex, b: &Cochain) -> LinearProgram {
    let n = b.degree();
    let top = x.simplices(n);
    let mut obj = Vec::with_capacity(2 * top.len());
    for s in top {
        let v = b.get(s);
        obj.push(v.clone());
        obj.push(-v);
    }
    let mut p = LinearProgram::new(true, obj);
    if n >= 1 {
        for cof in x.coface_table(n) {
            let row = cof
                .iter()
                .flat_map(|&(c, sg)| {
                    let a = BigRational::from_integer(BigInt::from(sg));
                    [(2 * c, a.clone()), (2 * c + 1, -a)]
                })
                .collect();
            p.add_row(row, Sense::Eq, BigRational::zero());
        }
    }
    let all = (0..2 * top.len()).map(|j| (j, BigRational::one())).collect();
    p.add_row(all, Sense::Le, BigRational::one());
    p
}

/// The dual LP: β on (n−1)-simplices (free) and t last; minimize t with
/// |b − dβ| ≤ t entrywise.
pub fn linf_program(x: &SimplicialComplex, b: &Cochain) -> LinearProgram {
    let n = b.degree();
    let f = x.count(n - 1);
    let mut obj = vec![BigRational::zero(); f + 1];
    obj[f] = BigRational::one();
    let mut p = LinearProgram::new(false, obj);
    for j in 0..f {
        p.bounds[j] = VarBound::Free;
    }
    let minus_one = -BigRational::one();
    for s in x.simplices(n) {
        let bp = b.get(s);
        let d: Vec<(usize, BigRational)> = crate::complex::facets_of(s)
            .map(|(i, face)| {
                let sg = if i % 2 == 0 { 1 } else { -1 };
                (x.index_of(&face).expect("face closure"), BigRational::from_integer(BigInt::from(sg)))
            })
            .collect();
        // b - dβ <= t  <=>  -dβ - t <= -b
        let mut row: Vec<_> = d.iter().map(|(j, a)| (*j, -a.clone())).collect();
        row.push((f, minus_one.clone()));
        p.add_row(row, Sense::Le, -bp.clone());
        // dβ - b <= t  <=>  dβ - t <= b
        let mut row = d;
        row.push((f, minus_one.clone()));
        p.add_row(row, Sense::Le, bp);
    }
    p
}

fn exact_primal(x: &SimplicialComplex, b: &Cochain) -> (BigRational, Chain) {
    let n = b.degree();
    let p = comass_program(x, b);
    let sol = solve_lp(&p);
    assert_eq!(sol.status, LpStatus::Optimal, "comass program is bounded and feasible");
    let mut z = Chain::zero(n);
    for (i, s) in x.simplices(n).iter().enumerate() {
        z.add_term(s.clone(), &sol.primal[2 * i] - &sol.primal[2 * i + 1]);
    }
    let l1 = z.l1_norm();
    if !l1.is_zero() {
        z = z.scale(&(BigRational::one() / l1));
    }
    (sol.value, z)
}

fn exact_dual(x: &SimplicialComplex, b: &Cochain) -> LinfRep {
    let n = b.degree();
    let p = linf_program(x, b);
    let sol = solve_lp(&p);
    assert_eq!(sol.status, LpStatus::Optimal, "dual program is bounded and feasible");
    let f = x.count(n - 1);
    let beta = Cochain::from_dense(x, n - 1, &sol.primal[..f]);
    rep_from_beta(x, b, beta)
}

fn rep_from_beta(x: &SimplicialComplex, b: &Cochain, beta: Cochain) -> LinfRep {
    let zhat = b.sub(&coboundary(x, &beta));
    let value = zhat.linf_norm();
    LinfRep { zhat, beta, value }
}

/// Best rational approximation with denominator at most `max_den`.
fn rationalize(v: f64, max_den: i64) -> BigRational {
    if !v.is_finite() {
        return BigRational::zero();
    }
    let sign = if v < 0.0 { -1 } else { 1 };
    let mut r = v.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e15 {
            break;
        }
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - r.floor();
        if frac < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    if q1 == 0 {
        return BigRational::zero();
    }
    BigRational::new(BigInt::from(sign * p1), BigInt::from(q1))
}

struct Certified {
    value: BigRational,
    witness: Chain,
    rep: LinfRep,
}

fn certified(x: &SimplicialComplex, b: &Cochain) -> Option<Certified> {
    let n = b.degree();
    if n == 0 {
        return None;
    }
    let top = x.simplices(n);
    // primal side: exact cycle on the support of the float optimum
    let (_, zf) = solve_lp_f64(&comass_program(x, b))?;
    let dz: Vec<f64> = (0..top.len()).map(|i| zf[2 * i] - zf[2 * i + 1]).collect();
    let scale = dz.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let support: Vec<usize> = (0..top.len()).filter(|&i| dz[i].abs() > 1e-7 * scale.max(1e-300)).collect();
    let mut best: Option<(BigRational, Chain)> = None;
    if !support.is_empty() {
        let mut m = SparseMatrix::zeros(x.count(n - 1), support.len());
        for (c, &i) in support.iter().enumerate() {
            for (k, face) in crate::complex::facets_of(&top[i]) {
                let sg = if k % 2 == 0 { 1 } else { -1 };
                m.set(x.index_of(&face)?, c, BigRational::from_integer(BigInt::from(sg)));
            }
        }
        for kv in nullspace_rational(&m) {
            let mut z = Chain::zero(n);
            for (c, &i) in support.iter().enumerate() {
                z.add_term(top[i].clone(), kv[c].clone());
            }
            let mut z = z.scale(&(BigRational::one() / z.l1_norm()));
            if pair(b, &z).is_negative() {
                z = z.scale(&-BigRational::one());
            }
            let r = pair(b, &z);
            if best.as_ref().is_none_or(|(v, _)| r > *v) {
                best = Some((r, z));
            }
        }
    }
    let (lower, witness) = best.unwrap_or_else(|| (BigRational::zero(), Chain::zero(n)));
    debug_assert!(boundary(&witness).is_zero());
    // dual side: rounded float β
    let (_, yf) = solve_lp_f64(&linf_program(x, b))?;
    let f = x.count(n - 1);
    for max_den in [1, 2, 6, 12, 60, 840, 27720, 1_000_000] {
        let beta_v: Vec<BigRational> = yf[..f].iter().map(|v| rationalize(*v, max_den)).collect();
        let rep = rep_from_beta(x, b, Cochain::from_dense(x, n - 1, &beta_v));
        if rep.value == lower {
            return Some(Certified { value: lower, witness, rep });
        }
    }
    None
}

fn use_exact(x: &SimplicialComplex, n: usize, engine: Engine) -> bool {
    match engine {
        Engine::Exact => true,
        Engine::Certified => false,
        Engine::Auto => x.count(n) <= EXACT_LIMIT,
    }
}

pub fn simplicial_comass(x: &SimplicialComplex, b: &Cochain) -> Result<ComassValue> {
    simplicial_comass_with(x, b, Engine::Auto)
}

pub fn simplicial_comass_with(x: &SimplicialComplex, b: &Cochain, engine: Engine) -> Result<ComassValue> {
    let n = check_degree(x, b)?;
    if b.is_zero() {
        return Ok(finish(x, n, BigRational::zero(), Chain::zero(n)));
    }
    if !use_exact(x, n, engine) {
        if let Some(c) = certified(x, b) {
            return Ok(finish(x, n, c.value, c.witness));
        }
    }
    let (v, z) = exact_primal(x, b);
    Ok(finish(x, n, v, z))
}

pub fn linf_min_representative(x: &SimplicialComplex, b: &Cochain) -> Result<LinfRep> {
    linf_min_representative_with(x, b, Engine::Auto)
}

pub fn linf_min_representative_with(x: &SimplicialComplex, b: &Cochain, engine: Engine) -> Result<LinfRep> {
    let n = check_degree(x, b)?;
    if n == 0 {
        return Err(Error::DegreeMismatch { expected: 1, found: 0 });
    }
    if b.is_zero() {
        return Ok(LinfRep { zhat: b.clone(), beta: Cochain::zero(n - 1), value: BigRational::zero() });
    }
    if !use_exact(x, n, engine) {
        if let Some(c) = certified(x, b) {
            return Ok(c.rep);
        }
    }
    Ok(exact_dual(x, b))
}

/// Mass of the witness; equals one vol_n s^n unit when the value is positive.
pub fn witness_mass(x: &SimplicialComplex, c: &ComassValue) -> VolMultiple {
    mass(x, &c.witness)
}

/// Float rendering of a comass value, for reports.
pub fn approx(c: &ComassValue) -> f64 {
    c.value.to_f64()
}
