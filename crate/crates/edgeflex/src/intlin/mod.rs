//! Exact integer and rational linear algebra.
//!
//! Dense matrices over arbitrary-precision integers ([`IntegerMatrix`]) and
//! exact rationals ([`RationalMatrix`]). Determinants and ranks are computed
//! fraction-free (Bareiss), inverses by fraction-free forward elimination
//! with rational back-substitution, so every result is exact.

mod reduce;
mod simplex;

pub use reduce::{reduce_type_matrix, ElementaryOp, ReduceError, ReductionResult};
pub use simplex::in_convex_hull;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("entry list has {got} elements, expected {expected}")]
    BadShape { expected: usize, got: usize },
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::BadShape {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Convenience constructor from machine-integer rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged row in matrix literal");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Self { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.cols)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Image of a row vector under this matrix: `v * M`.
    pub fn apply_row(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "dimension mismatch in row application");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] += vi * self.get(i, j);
            }
        }
        out
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.entries.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                let pivot = (k + 1..n).find(|&i| !at(&m, i, k).is_zero());
                match pivot {
                    Some(i) => {
                        for j in 0..n {
                            m.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&m, i, j) * at(&m, k, k) - at(&m, i, k) * at(&m, k, j);
                    m[i * n + j] = num / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = at(&m, k, k);
        }
        let det = at(&m, n - 1, n - 1);
        Ok(if sign < 0 { -det } else { det })
    }

    /// Rank over the rationals, by fraction-free row echelon reduction.
    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        if rows == 0 || cols == 0 {
            return 0;
        }
        let mut m = self.entries.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * cols + j].clone();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            let pivot = (r..rows).find(|&i| !at(&m, i, c).is_zero());
            let Some(p) = pivot else { continue };
            if p != r {
                for j in 0..cols {
                    m.swap(r * cols + j, p * cols + j);
                }
            }
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let num = at(&m, i, j) * at(&m, r, c) - at(&m, i, c) * at(&m, r, j);
                    m[i * cols + j] = num / &prev;
                }
                m[i * cols + c] = BigInt::zero();
            }
            prev = at(&m, r, c);
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }

    /// Exact inverse: Bareiss forward elimination, then rational back-substitution.
    pub fn inverse(&self) -> Result<RationalMatrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RationalMatrix {
                rows: 0,
                cols: 0,
                entries: vec![],
            });
        }
        // Augment with the identity and run fraction-free forward elimination.
        let w = 2 * n;
        let mut m = vec![BigInt::zero(); n * w];
        for i in 0..n {
            for j in 0..n {
                m[i * w + j] = self.get(i, j).clone();
            }
            m[i * w + n + i] = BigInt::one();
        }
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * w + j].clone();
        let mut prev = BigInt::one();
        for k in 0..n {
            if at(&m, k, k).is_zero() {
                let pivot = (k + 1..n).find(|&i| !at(&m, i, k).is_zero());
                match pivot {
                    Some(i) => {
                        for j in 0..w {
                            m.swap(k * w + j, i * w + j);
                        }
                    }
                    None => return Err(MatrixError::Singular),
                }
            }
            if k == n - 1 {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..w {
                    let num = at(&m, i, j) * at(&m, k, k) - at(&m, i, k) * at(&m, k, j);
                    m[i * w + j] = num / &prev;
                }
                m[i * w + k] = BigInt::zero();
            }
            prev = at(&m, k, k);
        }
        // Back-substitution over rationals, one unit column at a time.
        let rat = |v: BigInt| BigRational::from_integer(v);
        let mut inv = vec![BigRational::zero(); n * n];
        for col in 0..n {
            let mut x = vec![BigRational::zero(); n];
            for i in (0..n).rev() {
                let mut acc = rat(at(&m, i, n + col));
                for j in i + 1..n {
                    acc -= rat(at(&m, i, j)) * &x[j];
                }
                x[i] = acc / rat(at(&m, i, i));
            }
            for i in 0..n {
                inv[i * n + col] = x[i].clone();
            }
        }
        Ok(RationalMatrix {
            rows: n,
            cols: n,
            entries: inv,
        })
    }

    /// True iff the determinant is +1 or -1.
    pub fn is_unimodular(&self) -> Result<bool, MatrixError> {
        Ok(self.determinant()?.abs().is_one())
    }

    /// True iff every entry of `2 * self^{ -1 }` is an integer.
    pub fn half_inverse_is_integral(&self) -> Result<bool, MatrixError> {
        let inv = self.inverse()?;
        // entries are in lowest terms, so 2*n/d is integral iff d divides 2
        let two = BigInt::from(2);
        Ok(inv.entries.iter().all(|q| two.is_multiple_of(q.denom())))
    }

    /// Row-style Hermite normal form (column echelon within each pivot row,
    /// entries reduced). Only what the lattice-spanning check needs: the
    /// result is upper triangular with nonnegative pivots.
    pub fn hermite_normal_form(&self) -> IntegerMatrix {
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            // Euclid on column c, rows r..: reduce to a single nonzero entry at (r, c).
            loop {
                let mut pivot: Option<usize> = None;
                for i in r..rows {
                    if !m.get(i, c).is_zero() {
                        pivot = match pivot {
                            None => Some(i),
                            Some(p) => {
                                if m.get(i, c).abs() < m.get(p, c).abs() {
                                    Some(i)
                                } else {
                                    Some(p)
                                }
                            }
                        };
                    }
                }
                let Some(p) = pivot else { break };
                if p != r {
                    for j in 0..cols {
                        let a = m.get(r, j).clone();
                        let b = m.get(p, j).clone();
                        m.set(r, j, b);
                        m.set(p, j, a);
                    }
                }
                let mut done = true;
                let pv = m.get(r, c).clone();
                for i in r + 1..rows {
                    if m.get(i, c).is_zero() {
                        continue;
                    }
                    let q = m.get(i, c).div_floor(&pv);
                    for j in 0..cols {
                        let v = m.get(i, j) - &q * m.get(r, j);
                        m.set(i, j, v);
                    }
                    if !m.get(i, c).is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if m.get(r, c).is_zero() {
                continue;
            }
            if m.get(r, c).is_negative() {
                for j in 0..cols {
                    let v = -m.get(r, j).clone();
                    m.set(r, j, v);
                }
            }
            // Reduce entries above the pivot.
            let pv = m.get(r, c).clone();
            for i in 0..r {
                let q = m.get(i, c).div_floor(&pv);
                if q.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let v = m.get(i, j) - &q * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            r += 1;
        }
        m
    }
}

/// Dense row-major matrix of exact rationals in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::BadShape {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigRational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigRational::one();
        }
        Self { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn mul_integer(&self, other: &IntegerMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows());
        let mut entries = vec![BigRational::zero(); self.rows * other.cols()];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols() {
                    entries[i * other.cols() + j] +=
                        a * BigRational::from_integer(other.get(k, j).clone());
                }
            }
        }
        RationalMatrix {
            rows: self.rows,
            cols: other.cols(),
            entries,
        }
    }

    /// Row sums, used by reflexivity arguments on vertex matrices.
    pub fn row_sums(&self) -> Vec<BigRational> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).clone())
                    .sum::<BigRational>()
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// gcd of the absolute values of a slice, 0 for the empty/zero slice.
pub fn vector_gcd(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}
