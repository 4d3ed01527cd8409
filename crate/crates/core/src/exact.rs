//! Exact integer/rational scalars and dense square matrices over the rationals.
//!
//! Every value here is exact. Divisibility in `M_n(Z)` is a yes/no property, so
//! nothing in this crate ever goes through floating point.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Reduced fraction with a positive denominator. `num_rational` normalizes on
/// construction, so `is_integer` is a single denominator test.
pub type ExactRational = BigRational;

pub fn int(v: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn big_to_rational(v: BigInt) -> ExactRational {
    BigRational::from_integer(v)
}

/// `num/den` when the denominator is not 1, plain decimal otherwise.
pub fn rational_string(r: &ExactRational) -> String {
    r.to_string()
}

/// Dense `n x n` matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    dim: usize,
    entries: Vec<ExactRational>,
}

impl Matrix {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> ExactRational) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Matrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { One::one() } else { Zero::zero() })
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| Zero::zero())
    }

    /// Builds a matrix from rows; fails unless the rows form a square array.
    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(dim, row.len()));
            }
            entries.extend(row);
        }
        Ok(Matrix { dim, entries })
    }

    /// Convenience constructor for small integer literals (tests, fixed data).
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactRational {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ExactRational) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[ExactRational] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ExactRational]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn entries(&self) -> &[ExactRational] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Entry `(i, j)` of the result is entry `(sigma[i], sigma[j])` of `self`.
    pub fn permuted(&self, sigma: &[usize]) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(sigma[i], sigma[j]).clone())
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    let (l, r) = (self.get(i, k), rhs.get(k, j));
                    if l.is_zero() || r.is_zero() {
                        continue;
                    }
                    acc += l * r;
                }
                out.push(acc);
            }
        }
        Ok(Matrix { dim: n, entries: out })
    }

    /// Rows and columns as decimal / `num/den` strings, for JSON output.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.rows().map(|r| r.iter().map(rational_string).collect()).collect()
    }

    /// Entries as integers, or `None` if any entry has a denominator.
    pub fn to_integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        self.rows()
            .map(|r| r.iter().map(|v| v.is_integer().then(|| v.numer().clone())).collect())
            .collect()
    }

    /// Rebuilds a matrix from [`Matrix::to_string_rows`] output.
    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.parse::<BigRational>().map_err(|_| Error::Parse(s.clone())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_string_rows();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled by the lcm of its denominators so elimination runs
/// over integers; the scale factors are divided back out at the end. Pivot:
/// first nonzero entry of the current column, scanning rows top-down.
pub fn bareiss_det(m: &Matrix) -> ExactRational {
    let n = m.dim();
    if n == 0 {
        return One::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = m
        .rows()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            let ints = row.iter().map(|r| r.numer() * (&l / r.denom())).collect();
            scale *= &l;
            ints
        })
        .collect();

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Zero::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = if negate { -prev } else { prev };
    BigRational::new(det, scale)
}

/// Exact inverse by Gauss-Jordan elimination with the same pivot rule as
/// [`bareiss_det`].
pub fn exact_inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.dim();
    let mut a: Vec<Vec<ExactRational>> = m.rows().map(|r| r.to_vec()).collect();
    let mut inv: Vec<Vec<ExactRational>> = Matrix::identity(n).rows().map(|r| r.to_vec()).collect();

    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Err(Error::Singular { det: BigInt::zero() });
        };
        a.swap(p, k);
        inv.swap(p, k);

        let pivot_inv = a[k][k].recip();
        for v in a[k].iter_mut().chain(inv[k].iter_mut()) {
            if !v.is_zero() {
                *v *= &pivot_inv;
            }
        }
        let (pivot_row, pivot_inv_row) = (a[k].clone(), inv[k].clone());
        for i in (0..n).filter(|&i| i != k) {
            let factor = a[i][k].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                if !pivot_row[j].is_zero() {
                    a[i][j] -= &factor * &pivot_row[j];
                }
                if !pivot_inv_row[j].is_zero() {
                    inv[i][j] -= &factor * &pivot_inv_row[j];
                }
            }
        }
    }
    Matrix::from_rows(inv)
}

/// Solves `X A = B` over the integers by fraction-free Gauss-Jordan
/// elimination on `[A^T | B^T]`.
///
/// Returns `(d, N)` with `X = N / d`, where `d = ±det A`. Every intermediate
/// value is a minor of the augmented matrix, so each division is exact.
/// `None` if `A` is singular. Same pivot rule as [`bareiss_det`].
pub fn fraction_free_right_solve(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Option<(BigInt, Vec<Vec<BigInt>>)> {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| a[j][i].clone()).chain((0..n).map(|j| b[j][i].clone())).collect())
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(p, k);
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = std::mem::take(&mut row[k]);
            for (j, v) in row.iter_mut().enumerate() {
                if j == k {
                    continue;
                }
                let mut x = &*v * &pivot_row[k];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    x -= &factor * &pivot_row[j];
                }
                *v = if prev.is_one() { x } else { x / &prev };
            }
        }
        prev = pivot_row[k].clone();
    }
    let numer = (0..n).map(|i| (0..n).map(|j| m[j][n + i].clone()).collect()).collect();
    Some((prev, numer))
}

/// Result of scanning a matrix for non-integral entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Integrality {
    Integral,
    /// First failing entry in row-major order.
    NonIntegral { row: usize, col: usize, value: ExactRational },
}

impl Integrality {
    pub fn is_integral(&self) -> bool {
        matches!(self, Integrality::Integral)
    }
}

pub fn integrality_check(m: &Matrix) -> Integrality {
    let n = m.dim();
    for (idx, v) in m.entries().iter().enumerate() {
        if !v.is_integer() {
            return Integrality::NonIntegral { row: idx / n, col: idx % n, value: v.clone() };
        }
    }
    Integrality::Integral
}

/// `d | n` over the integers, with `0 | n` meaning `n == 0`.
pub fn int_divides(d: &BigInt, n: &BigInt) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        (n.abs() % d.abs()).is_zero()
    }
}
