//! Dense linear-algebra kernels.
//!
//! Naive O(n³) routines over a row-major square matrix: matrix-vector
//! products, LU with partial pivoting, determinants (plain and log form),
//! triangular solves and a complete-pivoting numerical rank.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Square matrix of finite `f64` entries in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds a matrix from `f(row, col)` with 0-based indices.
    ///
    /// Panics if `f` yields a non-finite value.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                assert!(v.is_finite(), "non-finite entry at ({i}, {j})");
                data.push(v);
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from row-major data of length `n * n`.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: data.len() });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Self::new(n, data)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub(crate) fn add(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n).map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// `self - lambda * other`.
    pub fn sub_scaled(&self, other: &DenseMatrix, lambda: f64) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - lambda * b).collect();
        Self::new(self.n, data)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| **v != 0.0).count()
    }

    /// Row-wise list of structural nonzeros `(col, value)`.
    pub fn row_nonzeros(&self) -> Vec<Vec<(usize, f64)>> {
        (0..self.n)
            .map(|i| self.row(i).iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(j, v)| (j, *v)).collect())
            .collect()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol))
    }

    /// `M[j][k] == M[n-1-k][n-1-j]` within `tol`.
    pub fn is_persymmetric(&self, tol: f64) -> bool {
        let n = self.n;
        (0..n).all(|j| (0..n).all(|k| (self.get(j, k) - self.get(n - 1 - k, n - 1 - j)).abs() <= tol))
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

pub fn matvec(m: &DenseMatrix, v: &[f64]) -> Result<Vec<f64>> {
    check_dim(m.n, v.len())?;
    Ok((0..m.n).map(|i| m.row(i).iter().zip(v).map(|(a, x)| a * x).sum()).collect())
}

pub fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Combined LU storage of `P·M = L·U`, unit-lower `L` below the diagonal.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    /// `perm[i]` is the original row placed at position `i`.
    perm: Vec<usize>,
    parity: f64,
    singular: bool,
}

impl LuFactors {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn parity(&self) -> f64 {
        self.parity
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn pivots(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.lu[i * self.n + i])
    }

    pub fn l(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.lu[i * self.n + j],
            std::cmp::Ordering::Equal => 1.0,
            std::cmp::Ordering::Less => 0.0,
        })
    }

    pub fn u(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, |i, j| if i <= j { self.lu[i * self.n + j] } else { 0.0 })
    }

    pub fn determinant(&self) -> f64 {
        if self.singular {
            return 0.0;
        }
        self.parity * self.pivots().product::<f64>()
    }

    /// `(sign, ln|det|)`; `(0, -inf)` when singular.
    pub fn log_determinant(&self) -> (f64, f64) {
        if self.singular {
            return (0.0, f64::NEG_INFINITY);
        }
        let mut sign = self.parity;
        let mut log = 0.0;
        for p in self.pivots() {
            sign *= p.signum();
            log += p.abs().ln();
        }
        (sign, log)
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.n, b.len())?;
        if self.singular {
            return Err(Error::SingularMatrix);
        }
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|k| self.lu[i * n + k] * x[k]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| self.lu[i * n + k] * x[k]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        Ok(x)
    }
}

/// LU factorisation with partial pivoting; ties go to the lowest row index.
///
/// Never fails: an exactly zero pivot column sets the singular flag and
/// elimination continues past it.
pub fn lu_factor(m: &DenseMatrix) -> LuFactors {
    let n = m.n;
    let mut lu = m.data.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut parity = 1.0;
    let mut singular = false;
    for k in 0..n {
        let mut p = k;
        let mut best = lu[k * n + k].abs();
        for i in k + 1..n {
            let v = lu[i * n + k].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            singular = true;
            continue;
        }
        if p != k {
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
            parity = -parity;
        }
        let (top, bottom) = lu.split_at_mut((k + 1) * n);
        let pivot_row = &top[k * n + k..(k + 1) * n];
        eliminate_below(bottom, n, k, pivot_row, true);
    }
    LuFactors { n, lu, perm, parity, singular }
}

/// Rows below this size are eliminated serially.
const PAR_MIN_N: usize = 256;

/// Subtract multiples of `pivot_row` (which starts at column `k`) from every
/// row of `rows`, optionally storing the multiplier in column `k`.
fn eliminate_below(rows: &mut [f64], n: usize, k: usize, pivot_row: &[f64], store_multiplier: bool) {
    let pivot = pivot_row[0];
    let update = |row: &mut [f64]| {
        let f = row[k] / pivot;
        row[k] = if store_multiplier { f } else { 0.0 };
        if f != 0.0 {
            for (x, p) in row[k + 1..].iter_mut().zip(&pivot_row[1..]) {
                *x -= f * p;
            }
        }
    };
    if n >= PAR_MIN_N {
        rows.par_chunks_exact_mut(n).for_each(update);
    } else {
        rows.chunks_exact_mut(n).for_each(update);
    }
}

/// `max |v_i|`, accumulated in independent lanes so it vectorises.
fn abs_max(v: &[f64]) -> f64 {
    let mut lanes = [0.0f64; 8];
    let chunks = v.chunks_exact(8);
    let tail = chunks.remainder();
    for c in chunks {
        for (l, x) in lanes.iter_mut().zip(c) {
            *l = l.max(x.abs());
        }
    }
    tail.iter().fold(lanes.into_iter().fold(0.0, f64::max), |m, x| m.max(x.abs()))
}

/// Number of complete-pivoting elimination pivots above `rel_tol * max|M_ij|`.
///
/// Only the per-row maxima of the trailing block are tracked; the pivot
/// column is located by scanning the chosen row. Rows with a zero
/// multiplier keep their maximum, since a column swap only permutes the
/// trailing entries and the eliminated column holds a zero.
pub fn numerical_rank(m: &DenseMatrix, rel_tol: f64) -> usize {
    let n = m.n;
    let scale = m.max_abs();
    if scale == 0.0 {
        return 0;
    }
    let threshold = rel_tol * scale;
    let mut a = m.data.clone();
    let mut maxima: Vec<f64> = a.chunks_exact(n).map(abs_max).collect();
    let mut rank = 0;
    for k in 0..n {
        let mut pi = k;
        for i in k + 1..n {
            if maxima[i] > maxima[pi] {
                pi = i;
            }
        }
        let best = maxima[pi];
        if best <= threshold {
            break;
        }
        rank += 1;
        let pj = k + a[pi * n + k..(pi + 1) * n].iter().position(|v| v.abs() == best).unwrap_or(0);
        if pi != k {
            for j in 0..n {
                a.swap(k * n + j, pi * n + j);
            }
            maxima.swap(k, pi);
        }
        if pj != k {
            for i in 0..n {
                a.swap(i * n + k, i * n + pj);
            }
        }
        let (top, bottom) = a.split_at_mut((k + 1) * n);
        let pivot_row = &top[k * n + k..(k + 1) * n];
        let pivot = pivot_row[0];
        let update = |(row, mx): (&mut [f64], &mut f64)| {
            let f = row[k] / pivot;
            row[k] = 0.0;
            if f != 0.0 {
                for (x, p) in row[k + 1..].iter_mut().zip(&pivot_row[1..]) {
                    *x -= f * p;
                }
                *mx = abs_max(&row[k + 1..]);
            }
        };
        if n >= PAR_MIN_N {
            bottom.par_chunks_exact_mut(n).zip(maxima[k + 1..].par_iter_mut()).for_each(update);
        } else {
            bottom.chunks_exact_mut(n).zip(maxima[k + 1..].iter_mut()).for_each(update);
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn m(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn matvec_examples() {
        assert_eq!(matvec(&m(&[&[2.0, -1.0], &[-1.0, 2.0]]), &[1.0, 1.0]).unwrap(), vec![1.0, 1.0]);
        assert_eq!(matvec(&m(&[&[0.0, 1.0], &[1.0, 0.0]]), &[3.0, 7.0]).unwrap(), vec![7.0, 3.0]);
        let t = m(&[&[2.0, -1.0, 0.0], &[-1.0, 2.0, -1.0], &[0.0, -1.0, 2.0]]);
        let pi = std::f64::consts::PI;
        let v = [(pi / 4.0).sin(), (pi / 2.0).sin(), (3.0 * pi / 4.0).sin()];
        let w = matvec(&t, &v).unwrap();
        let lam = 2.0 - 2f64.sqrt();
        for (a, b) in w.iter().zip(&v) {
            assert_relative_eq!(*a, lam * b, epsilon = 1e-15);
        }
        assert!(matches!(matvec(&t, &[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn construction_rejects_non_finite() {
        assert!(matches!(DenseMatrix::new(1, vec![f64::NAN]), Err(Error::NonFinite(_))));
        assert!(DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn lu_examples() {
        let f = lu_factor(&DenseMatrix::identity(3));
        assert_eq!(f.permutation(), &[0, 1, 2]);
        assert_eq!(f.parity(), 1.0);
        assert_eq!(f.l(), DenseMatrix::identity(3));
        assert_eq!(f.u(), DenseMatrix::identity(3));

        let f = lu_factor(&m(&[&[0.0, 1.0], &[1.0, 0.0]]));
        assert_eq!(f.parity(), -1.0);
        assert_eq!(f.permutation(), &[1, 0]);
        assert!(!f.is_singular());

        assert!(lu_factor(&m(&[&[1.0, 1.0], &[1.0, 1.0]])).is_singular());
    }

    #[test]
    fn lu_ties_pick_lowest_row() {
        let f = lu_factor(&m(&[&[1.0, 2.0], &[-1.0, 3.0]]));
        assert_eq!(f.permutation(), &[0, 1]);
    }

    #[test]
    fn determinant_examples() {
        assert_relative_eq!(lu_factor(&m(&[&[3.0, -1.0], &[-1.0, 2.0]])).determinant(), 5.0, epsilon = 1e-14);
        assert_eq!(lu_factor(&DenseMatrix::identity(5)).determinant(), 1.0);
        let s = lu_factor(&m(&[&[1.0, 1.0], &[1.0, 1.0]]));
        assert_eq!(s.determinant(), 0.0);
        assert_eq!(s.log_determinant(), (0.0, f64::NEG_INFINITY));
    }

    #[test]
    fn log_determinant_survives_overflow() {
        let big = DenseMatrix::identity(400).scaled(1e3);
        let (sign, log) = lu_factor(&big).log_determinant();
        assert_eq!(sign, 1.0);
        assert_relative_eq!(log, 400.0 * 1e3f64.ln(), max_relative = 1e-12);
        assert!(lu_factor(&big).determinant().is_infinite());
    }

    #[test]
    fn solve_examples() {
        let f = lu_factor(&DenseMatrix::identity(2));
        assert_eq!(f.solve(&[4.0, 5.0]).unwrap(), vec![4.0, 5.0]);
        let f = lu_factor(&m(&[&[2.0, 0.0], &[0.0, 4.0]]));
        assert_eq!(f.solve(&[2.0, 4.0]).unwrap(), vec![1.0, 1.0]);
        let f = lu_factor(&m(&[&[0.0, 1.0], &[1.0, 0.0]]));
        assert_eq!(f.solve(&[1.0, 2.0]).unwrap(), vec![2.0, 1.0]);
        let f = lu_factor(&m(&[&[1.0, 1.0], &[1.0, 1.0]]));
        assert!(matches!(f.solve(&[1.0, 2.0]), Err(Error::SingularMatrix)));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(numerical_rank(&DenseMatrix::identity(4), 1e-10), 4);
        assert_eq!(numerical_rank(&DenseMatrix::from_fn(3, |_, _| 1.0), 1e-10), 1);
        assert_eq!(numerical_rank(&m(&[&[1.0, 0.0], &[0.0, 1e-14]]), 1e-10), 1);
        assert_eq!(numerical_rank(&DenseMatrix::zeros(3), 1e-10), 0);
    }
}
