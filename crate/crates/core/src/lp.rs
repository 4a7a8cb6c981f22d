//! Linear programs over the rationals: an exact tableau simplex method and a
//! floating-point relaxation used only as a search heuristic.

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarBound {
    NonNeg,
    Free,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<(usize, BigRational)>,
    pub sense: Sense,
    pub rhs: BigRational,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub maximize: bool,
    pub objective: Vec<BigRational>,
    pub rows: Vec<Constraint>,
    pub bounds: Vec<VarBound>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LPSolution {
    pub status: LpStatus,
    pub value: BigRational,
    pub primal: Vec<BigRational>,
}

impl LinearProgram {
    pub fn new(maximize: bool, objective: Vec<BigRational>) -> Self {
        let n = objective.len();
        LinearProgram { maximize, objective, rows: Vec::new(), bounds: vec![VarBound::NonNeg; n] }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, BigRational)>, sense: Sense, rhs: BigRational) {
        debug_assert!(coeffs.iter().all(|(j, _)| *j < self.num_vars()));
        self.rows.push(Constraint { coeffs, sense, rhs });
    }

    /// Whether `x` satisfies every constraint and bound exactly.
    pub fn is_feasible(&self, x: &[BigRational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = self.bounds.iter().zip(x).all(|(b, v)| *b == VarBound::Free || !v.is_negative());
        bounds_ok
            && self.rows.iter().all(|r| {
                let lhs: BigRational = r.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
                match r.sense {
                    Sense::Le => lhs <= r.rhs,
                    Sense::Eq => lhs == r.rhs,
                    Sense::Ge => lhs >= r.rhs,
                }
            })
    }

    pub fn objective_at(&self, x: &[BigRational]) -> BigRational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

fn zero() -> BigRational {
    BigRational::zero()
}

fn one() -> BigRational {
    BigRational::from_integer(BigInt::from(1))
}

/// Dense tableau in equality form with nonnegative variables. The last
/// column is the right-hand side; `obj` holds reduced costs of a
/// maximization, so a negative entry can enter.
struct Tableau {
    rows: Vec<Vec<BigRational>>,
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    ncols: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !self.rows[r][j].is_zero()).collect();
        for &j in &nz {
            self.rows[r][j] /= &p;
        }
        let prow: Vec<(usize, BigRational)> = nz.iter().map(|&j| (j, self.rows[r][j].clone())).collect();
        let update = |row: &mut Vec<BigRational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (j, v) in &prow {
                let d = &f * v;
                row[*j] -= d;
            }
        };
        for i in 0..self.rows.len() {
            if i != r {
                update(&mut self.rows[i]);
            }
        }
        update(&mut self.obj);
        self.basis[r] = c;
    }

    /// Primal simplex restricted to columns `allowed`. Dantzig pricing, with
    /// Bland's rule while the current vertex is degenerate (anti-cycling).
    fn optimize(&mut self, allowed: usize) -> Phase {
        let mut bland = false;
        loop {
            let entering = if bland {
                (0..allowed).find(|&j| self.obj[j].is_negative())
            } else {
                (0..allowed).filter(|&j| self.obj[j].is_negative()).min_by(|&a, &b| self.obj[a].cmp(&self.obj[b]))
            };
            let Some(c) = entering else { return Phase::Optimal };
            let mut best: Option<(BigRational, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &best {
                        None => true,
                        Some((r0, i0)) => ratio < *r0 || (ratio == *r0 && self.basis[i] < self.basis[*i0]),
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            let Some((ratio, r)) = best else { return Phase::Unbounded };
            bland = ratio.is_zero();
            self.pivot(r, c);
        }
    }
}

/// Exact optimum of `p` by the two-phase simplex method.
pub fn solve_lp(p: &LinearProgram) -> LPSolution {
    let n = p.num_vars();
    // column layout: original (x or x+), negative parts of free vars, slacks, artificials
    let free: Vec<usize> = (0..n).filter(|&j| p.bounds[j] == VarBound::Free).collect();
    let neg_col: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (k, &j) in free.iter().enumerate() {
            v[j] = Some(n + k);
        }
        v
    };
    let nslack = p.rows.iter().filter(|r| r.sense != Sense::Eq).count();
    let m = p.rows.len();
    let base = n + free.len();
    let art0 = base + nslack;
    let ncols = art0 + m;

    let mut rows = Vec::with_capacity(m);
    let mut slack = base;
    for r in &p.rows {
        let mut row = vec![zero(); ncols + 1];
        for (j, a) in &r.coeffs {
            row[*j] += a;
            if let Some(nj) = neg_col[*j] {
                row[nj] -= a;
            }
        }
        match r.sense {
            Sense::Le => {
                row[slack] = one();
                slack += 1;
            }
            Sense::Ge => {
                row[slack] = -one();
                slack += 1;
            }
            Sense::Eq => {}
        }
        row[ncols] = r.rhs.clone();
        if r.rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        rows.push(row);
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[art0 + i] = one();
    }
    // phase one: maximize -(sum of artificials)
    let mut obj = vec![zero(); ncols + 1];
    for row in &rows {
        for j in 0..art0 {
            obj[j] -= &row[j];
        }
        obj[ncols] -= &row[ncols];
    }
    let basis = (art0..ncols).collect();
    let mut t = Tableau { rows, obj, basis, ncols };
    t.optimize(art0);
    if t.obj[ncols].is_negative() {
        return LPSolution { status: LpStatus::Infeasible, value: zero(), primal: Vec::new() };
    }
    // drive zero-level artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= art0 {
            if let Some(c) = (0..art0).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    // phase two objective in reduced form
    let sign = if p.maximize { one() } else { -one() };
    let mut cost = vec![zero(); art0];
    for j in 0..n {
        cost[j] = &sign * &p.objective[j];
        if let Some(nj) = neg_col[j] {
            cost[nj] = -cost[j].clone();
        }
    }
    let mut obj = vec![zero(); ncols + 1];
    for j in 0..art0 {
        obj[j] = -cost[j].clone();
    }
    for (i, &b) in t.basis.iter().enumerate() {
        let cb = &cost[b];
        if cb.is_zero() {
            continue;
        }
        for j in 0..=ncols {
            if !t.rows[i][j].is_zero() {
                let d = cb * &t.rows[i][j];
                obj[j] += d;
            }
        }
    }
    t.obj = obj;
    if let Phase::Unbounded = t.optimize(art0) {
        return LPSolution { status: LpStatus::Unbounded, value: zero(), primal: Vec::new() };
    }
    let mut full = vec![zero(); art0];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < art0 {
            full[b] = t.rhs(i).clone();
        }
    }
    let primal: Vec<BigRational> = (0..n)
        .map(|j| match neg_col[j] {
            Some(nj) => &full[j] - &full[nj],
            None => full[j].clone(),
        })
        .collect();
    let value = p.objective_at(&primal);
    debug_assert!(p.is_feasible(&primal));
    LPSolution { status: LpStatus::Optimal, value, primal }
}

/// Floating-point optimum, or `None` if the relaxation fails. Never used as
/// an answer on its own.
pub fn solve_lp_f64(p: &LinearProgram) -> Option<(f64, Vec<f64>)> {
    use microlp::{ComparisonOp, OptimizationDirection, Problem};
    let dir = if p.maximize { OptimizationDirection::Maximize } else { OptimizationDirection::Minimize };
    let mut prob = Problem::new(dir);
    let vars: Vec<_> = p
        .objective
        .iter()
        .zip(&p.bounds)
        .map(|(c, b)| {
            let lo = if *b == VarBound::Free { f64::NEG_INFINITY } else { 0.0 };
            prob.add_var(c.to_f64().unwrap_or(0.0), (lo, f64::INFINITY))
        })
        .collect();
    for r in &p.rows {
        let terms: Vec<_> = r.coeffs.iter().map(|(j, a)| (vars[*j], a.to_f64().unwrap_or(0.0))).collect();
        let op = match r.sense {
            Sense::Le => ComparisonOp::Le,
            Sense::Eq => ComparisonOp::Eq,
            Sense::Ge => ComparisonOp::Ge,
        };
        prob.add_constraint(terms.as_slice(), op, r.rhs.to_f64().unwrap_or(0.0));
    }
    let sol = prob.solve().ok()?.into_solution().ok()?;
    Some((sol.objective(), vars.iter().map(|v| sol.var_value(*v)).collect()))
}
