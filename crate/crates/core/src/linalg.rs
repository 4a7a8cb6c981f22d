//! Sparse exact linear algebra: integer diagonalization (Smith form), integer
//! and rational linear solves.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, T>>,
}

impl<T: Clone + Zero> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![BTreeMap::new(); nrows] }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.nrows && c < self.ncols);
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.rows[r].get(&c).cloned().unwrap_or_else(T::zero)
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, T> {
        &self.rows[r]
    }

    pub fn push_row(&mut self, row: BTreeMap<usize, T>) {
        assert!(row.keys().all(|&c| c < self.ncols));
        self.rows.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.nrows += 1;
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                t.rows[c].insert(r, v.clone());
            }
        }
        t
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(&c, v)| (c, f(v))).filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }
}

impl<T> SparseMatrix<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| row.iter().fold(T::zero(), |acc, (&c, v)| acc + v.clone() * x[c].clone()))
            .collect()
    }

    pub fn mul(&self, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        assert_eq!(self.ncols, other.nrows);
        let mut out = SparseMatrix::zeros(self.nrows, other.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (&k, a) in row {
                for (&c, b) in &other.rows[k] {
                    let e = acc.entry(c).or_insert_with(T::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            out.rows[r] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }
}

pub fn to_rational(m: &SparseMatrix<BigInt>) -> SparseMatrix<BigRational> {
    m.map(|v| BigRational::from_integer(v.clone()))
}

/// Column operation `col[dst] += k * col[src]`.
#[derive(Clone, Debug)]
struct ColOp {
    dst: usize,
    src: usize,
    k: BigInt,
}

/// Integer elimination by unimodular row and column operations.
///
/// Row operations are mirrored on an optional right-hand side; column
/// operations are recorded when a solution must be reconstructed.
struct IntEliminator {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
    row_done: Vec<bool>,
    col_done: Vec<bool>,
    rhs: Option<Vec<BigInt>>,
    record: bool,
    col_ops: Vec<ColOp>,
    pivots: Vec<(usize, usize)>,
}

impl IntEliminator {
    fn new(m: &SparseMatrix<BigInt>, rhs: Option<Vec<BigInt>>, record: bool) -> Self {
        let mut cols = vec![BTreeSet::new(); m.ncols];
        for (r, row) in m.rows.iter().enumerate() {
            for &c in row.keys() {
                cols[c].insert(r);
            }
        }
        IntEliminator {
            rows: m.rows.clone(),
            cols,
            row_done: vec![false; m.nrows],
            col_done: vec![false; m.ncols],
            rhs,
            record,
            col_ops: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        let src_row: Vec<(usize, BigInt)> = self.rows[src].iter().map(|(&c, v)| (c, v.clone())).collect();
        for (c, v) in src_row {
            let entry = self.rows[dst].entry(c).or_insert_with(BigInt::zero);
            *entry -= q * v;
            if entry.is_zero() {
                self.rows[dst].remove(&c);
                self.cols[c].remove(&dst);
            } else {
                self.cols[c].insert(dst);
            }
        }
        if let Some(rhs) = self.rhs.as_mut() {
            let t = q * &rhs[src];
            rhs[dst] -= t;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        let src_rows: Vec<usize> = self.cols[src].iter().copied().collect();
        for r in src_rows {
            let v = self.rows[r][&src].clone();
            let entry = self.rows[r].entry(dst).or_insert_with(BigInt::zero);
            *entry -= q * v;
            if entry.is_zero() {
                self.rows[r].remove(&dst);
                self.cols[dst].remove(&r);
            } else {
                self.cols[dst].insert(r);
            }
        }
        if self.record {
            self.col_ops.push(ColOp { dst, src, k: -q.clone() });
        }
    }

    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for (c, rows) in self.cols.iter().enumerate() {
            if self.col_done[c] || rows.is_empty() {
                continue;
            }
            for &r in rows {
                let a = self.rows[r][&c].abs();
                let cost = rows.len() * self.rows[r].len();
                let better = match &best {
                    None => true,
                    Some((ba, bc, _, _)) => a < *ba || (a == *ba && cost < *bc),
                };
                if better {
                    best = Some((a, cost, r, c));
                }
            }
            if let Some((a, cost, _, _)) = &best {
                if a.is_one() && *cost <= 4 {
                    break;
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn run(&mut self) {
        while let Some((mut r, mut c)) = self.choose_pivot() {
            loop {
                let p = self.rows[r][&c].clone();
                // clear column c below/above the pivot with row operations
                let others: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
                let mut next_row: Option<(BigInt, usize)> = None;
                for i in others {
                    let a = self.rows[i][&c].clone();
                    let q = a.div_floor(&p);
                    if !q.is_zero() {
                        self.row_sub(i, r, &q);
                    }
                    if let Some(rem) = self.rows[i].get(&c) {
                        let rem = rem.abs();
                        if next_row.as_ref().map_or(true, |(b, _)| rem < *b) {
                            next_row = Some((rem, i));
                        }
                    }
                }
                if let Some((_, i)) = next_row {
                    r = i;
                    continue;
                }
                // clear row r with column operations
                let others: Vec<usize> = self.rows[r].keys().copied().filter(|&j| j != c).collect();
                if p.abs().is_one() && !self.record {
                    // column c is isolated on row r, so column operations only touch row r
                    for j in others {
                        self.rows[r].remove(&j);
                        self.cols[j].remove(&r);
                    }
                    break;
                }
                let mut next_col: Option<(BigInt, usize)> = None;
                for j in others {
                    let a = self.rows[r][&j].clone();
                    let q = a.div_floor(&p);
                    if !q.is_zero() {
                        self.col_sub(j, c, &q);
                    }
                    if let Some(rem) = self.rows[r].get(&j) {
                        let rem = rem.abs();
                        if next_col.as_ref().map_or(true, |(b, _)| rem < *b) {
                            next_col = Some((rem, j));
                        }
                    }
                }
                match next_col {
                    Some((_, j)) => c = j,
                    None => break,
                }
            }
            self.row_done[r] = true;
            self.col_done[c] = true;
            self.pivots.push((r, c));
        }
    }

    fn diagonal(&self) -> Vec<BigInt> {
        self.pivots.iter().map(|&(r, c)| self.rows[r][&c].abs()).collect()
    }
}

/// Normalizes a list of nonzero diagonal entries to invariant factors
/// d_1 | d_2 | ... (all positive).
pub fn invariant_factors(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    for d in diag.iter_mut() {
        *d = d.abs();
    }
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            if diag[i].is_one() {
                break;
            }
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag.sort();
    diag
}

/// Invariant factors of an integer matrix (nonzero entries of its Smith form).
pub fn smith_invariants(m: &SparseMatrix<BigInt>) -> Vec<BigInt> {
    let mut e = IntEliminator::new(m, None, false);
    e.run();
    invariant_factors(e.diagonal())
}

/// Solves `m x = b` over the integers, if an integral solution exists.
pub fn solve_integer(m: &SparseMatrix<BigInt>, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.nrows);
    let mut e = IntEliminator::new(m, Some(b.to_vec()), true);
    e.run();
    let rhs = e.rhs.take().expect("rhs");
    let mut y = vec![BigInt::zero(); m.ncols];
    let mut pivot_row = vec![false; m.nrows];
    for &(r, c) in &e.pivots {
        pivot_row[r] = true;
        let p = &e.rows[r][&c];
        let (q, rem) = rhs[r].div_rem(p);
        if !rem.is_zero() {
            return None;
        }
        y[c] = q;
    }
    if rhs.iter().enumerate().any(|(r, v)| !pivot_row[r] && !v.is_zero()) {
        return None;
    }
    // x = E_1 ... E_k y, applying the last recorded operation first
    for op in e.col_ops.iter().rev() {
        let t = &op.k * &y[op.dst];
        y[op.src] += t;
    }
    Some(y)
}

/// Rank over the rationals, computed by the integer eliminator.
pub fn rank(m: &SparseMatrix<BigInt>) -> usize {
    let mut e = IntEliminator::new(m, None, false);
    e.run();
    e.pivots.len()
}

/// Outcome of a rational solve: a solution, or a left vector `y` with
/// `y^T m = 0` and `y . b != 0`.
#[derive(Clone, Debug)]
pub enum RationalSolve {
    Solution(Vec<BigRational>),
    Inconsistent(Vec<BigRational>),
}

/// Gauss-Jordan elimination over the rationals with a deterministic pivot
/// rule (lowest column, then sparsest row). Free variables are set to zero.
pub fn solve_rational(m: &SparseMatrix<BigRational>, b: &[BigRational]) -> RationalSolve {
    match eliminate_rational(m, b, false) {
        Ok(x) => RationalSolve::Solution(x),
        Err(None) => match eliminate_rational(m, b, true) {
            Err(Some(y)) => RationalSolve::Inconsistent(y),
            _ => unreachable!("tracked elimination must reproduce the inconsistency"),
        },
        Err(Some(y)) => RationalSolve::Inconsistent(y),
    }
}

type RatRow = BTreeMap<usize, BigRational>;

fn axpy(dst: &mut RatRow, src: &RatRow, k: &BigRational) {
    for (&c, v) in src {
        let e = dst.entry(c).or_insert_with(BigRational::zero);
        *e -= k * v;
        if e.is_zero() {
            dst.remove(&c);
        }
    }
}

struct Rref {
    rows: Vec<RatRow>,
    rhs: Vec<BigRational>,
    combos: Vec<RatRow>,
    row_done: Vec<bool>,
    pivots: Vec<(usize, usize)>,
}

fn rref(m: &SparseMatrix<BigRational>, b: &[BigRational], track: bool) -> Rref {
    assert_eq!(b.len(), m.nrows);
    let mut rows = m.rows.clone();
    let mut rhs = b.to_vec();
    let mut combos: Vec<RatRow> = if track {
        (0..m.nrows).map(|r| RatRow::from([(r, BigRational::one())])).collect()
    } else {
        Vec::new()
    };
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.ncols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            cols[c].insert(r);
        }
    }
    let mut row_done = vec![false; m.nrows];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for c in 0..m.ncols {
        let Some(&r) = cols[c]
            .iter()
            .filter(|&&r| !row_done[r])
            .min_by_key(|&&r| (rows[r].len(), r))
        else {
            continue;
        };
        let p = rows[r][&c].clone();
        let pivot_row: RatRow = rows[r].iter().map(|(&j, v)| (j, v / &p)).collect();
        rhs[r] = &rhs[r] / &p;
        rows[r] = pivot_row.clone();
        if track {
            let cr: RatRow = combos[r].iter().map(|(&j, v)| (j, v / &p)).collect();
            combos[r] = cr;
        }
        let targets: Vec<usize> = cols[c].iter().copied().filter(|&i| i != r).collect();
        for i in targets {
            let k = rows[i][&c].clone();
            let before: Vec<usize> = rows[i].keys().copied().collect();
            axpy(&mut rows[i], &pivot_row, &k);
            for j in before {
                if !rows[i].contains_key(&j) {
                    cols[j].remove(&i);
                }
            }
            for &j in rows[i].keys() {
                cols[j].insert(i);
            }
            let t = &k * &rhs[r];
            rhs[i] -= t;
            if track {
                let src = combos[r].clone();
                axpy(&mut combos[i], &src, &k);
            }
        }
        row_done[r] = true;
        pivots.push((r, c));
    }
    Rref { rows, rhs, combos, row_done, pivots }
}

fn eliminate_rational(
    m: &SparseMatrix<BigRational>,
    b: &[BigRational],
    track: bool,
) -> Result<Vec<BigRational>, Option<Vec<BigRational>>> {
    let Rref { rhs, combos, row_done, pivots, .. } = rref(m, b, track);
    for r in 0..m.nrows {
        if !row_done[r] && !rhs[r].is_zero() {
            return Err(if track {
                let mut y = vec![BigRational::zero(); m.nrows];
                for (&j, v) in &combos[r] {
                    y[j] = v.clone();
                }
                Some(y)
            } else {
                None
            });
        }
    }
    let mut x = vec![BigRational::zero(); m.ncols];
    for (r, c) in pivots {
        x[c] = rhs[r].clone();
    }
    Ok(x)
}

/// Basis of the right kernel, one vector per non-pivot column.
pub fn nullspace_rational(m: &SparseMatrix<BigRational>) -> Vec<Vec<BigRational>> {
    let e = rref(m, &vec![BigRational::zero(); m.nrows], false);
    let mut pivot_of = vec![None; m.ncols];
    for &(r, c) in &e.pivots {
        pivot_of[c] = Some(r);
    }
    (0..m.ncols)
        .filter(|&f| pivot_of[f].is_none())
        .map(|f| {
            let mut x = vec![BigRational::zero(); m.ncols];
            x[f] = BigRational::one();
            for &(r, c) in &e.pivots {
                if let Some(v) = e.rows[r].get(&f) {
                    x[c] = -v.clone();
                }
            }
            x
        })
        .collect()
}

/// Rank over the rationals by plain dense row reduction; kept independent of
/// the sparse integer eliminator so the two can cross-check each other.
pub fn dense_rational_rank(m: &SparseMatrix<BigInt>) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..m.nrows)
        .map(|r| (0..m.ncols).map(|c| BigRational::from_integer(m.get(r, c))).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.ncols {
        let Some(p) = (rank..m.nrows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..m.nrows {
            if r != rank && !a[r][c].is_zero() {
                let k = &a[r][c] / &a[rank][c];
                for j in c..m.ncols {
                    let t = &k * &a[rank][j];
                    a[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> SparseMatrix<BigInt> {
        let mut m = SparseMatrix::zeros(rows.len(), rows[0].len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, BigInt::from(v));
            }
        }
        m
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(smith_invariants(&int_matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), ints(&[2, 6, 12]));
        assert_eq!(smith_invariants(&int_matrix(&[&[2, 0], &[0, 3]])), ints(&[1, 6]));
        assert_eq!(smith_invariants(&int_matrix(&[&[0, 0], &[0, 0]])), ints(&[]));
    }

    #[test]
    fn integer_solve_respects_divisibility() {
        let m = int_matrix(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve_integer(&m, &ints(&[4, 9])), Some(ints(&[2, 3])));
        assert_eq!(solve_integer(&m, &ints(&[1, 0])), None);
        let m = int_matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let b = m.mul_vec(&ints(&[1, -2, 3]));
        let x = solve_integer(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn rational_solve_and_certificate() {
        let m = to_rational(&int_matrix(&[&[1, 1], &[1, 1]]));
        let r = |v: i64| BigRational::from_integer(v.into());
        match solve_rational(&m, &[r(1), r(2)]) {
            RationalSolve::Inconsistent(y) => {
                let lhs = &y[0] + &y[1];
                assert!(lhs.is_zero());
                assert!(!(&y[0] * r(1) + &y[1] * r(2)).is_zero());
            }
            RationalSolve::Solution(_) => panic!("system is inconsistent"),
        }
        match solve_rational(&m, &[r(3), r(3)]) {
            RationalSolve::Solution(x) => assert_eq!(&x[0] + &x[1], r(3)),
            RationalSolve::Inconsistent(_) => panic!("system is consistent"),
        }
    }

    #[test]
    fn ranks_agree() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(dense_rational_rank(&m), 2);
        let rm = to_rational(&m);
        let ker = nullspace_rational(&rm);
        assert_eq!(ker.len(), 1);
        assert!(rm.mul_vec(&ker[0]).iter().all(|v| v.is_zero()));
    }
}
