//! Dense integer vectors and matrices with overflow-checked arithmetic.
//!
//! Entries are `i64`. Every operation that can leave the representable range
//! reports [`Error::Overflow`] instead of wrapping; inner products accumulate
//! in `i128` before narrowing.

use std::fmt;
use std::ops::{Deref, Index};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntVector(Vec<i64>);

impl IntVector {
    pub fn new(entries: Vec<i64>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        IntVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        IntVector(v)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn checked_add(&self, other: &IntVector) -> Result<IntVector> {
        same_len(self, other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("vector addition")))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    pub fn checked_sub(&self, other: &IntVector) -> Result<IntVector> {
        same_len(self, other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow("vector subtraction")))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    /// `self + factor * dir`
    pub fn checked_axpy(&self, factor: i64, dir: &IntVector) -> Result<IntVector> {
        same_len(self, dir)?;
        self.0
            .iter()
            .zip(&dir.0)
            .map(|(a, g)| {
                g.checked_mul(factor)
                    .and_then(|s| a.checked_add(s))
                    .ok_or(Error::Overflow("vector step"))
            })
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    pub fn checked_neg(&self) -> Result<IntVector> {
        self.0
            .iter()
            .map(|a| a.checked_neg().ok_or(Error::Overflow("vector negation")))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    pub fn dot(&self, other: &IntVector) -> Result<i64> {
        same_len(self, other)?;
        dot_slices(&self.0, &other.0)
    }

    pub fn max_abs(&self) -> u64 {
        self.0.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// Flips the sign so that the first nonzero entry is positive.
    pub fn canonical_sign(&self) -> Result<IntVector> {
        match self.0.iter().find(|&&v| v != 0) {
            Some(&v) if v < 0 => self.checked_neg(),
            _ => Ok(self.clone()),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0)
    }
}

pub(crate) fn dot_slices(a: &[i64], b: &[i64]) -> Result<i64> {
    let mut acc: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        acc = acc
            .checked_add(*x as i128 * *y as i128)
            .ok_or(Error::Overflow("inner product"))?;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("inner product"))
}

fn same_len(a: &IntVector, b: &IntVector) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::dim(format!("vector lengths {} and {}", a.len(), b.len())));
    }
    Ok(())
}

impl Deref for IntVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

impl From<&[i64]> for IntVector {
    fn from(v: &[i64]) -> Self {
        IntVector(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(v: [i64; N]) -> Self {
        IntVector(v.to_vec())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from a list of rows. A matrix with zero rows needs its
    /// column count supplied separately, see [`IntMatrix::from_rows_with_cols`].
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dim(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn nonzeros(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    pub fn mul_vec(&self, x: &IntVector) -> Result<IntVector> {
        if x.len() != self.cols {
            return Err(Error::dim(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                x.len()
            )));
        }
        (0..self.rows)
            .map(|r| dot_slices(self.row(r), x))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    /// True when `A x = 0`. Overflowing products count as nonzero.
    pub fn annihilates(&self, x: &[i64]) -> bool {
        x.len() == self.cols && (0..self.rows).all(|r| dot_slices(self.row(r), x) == Ok(0))
    }

    /// Applies `perm` to the rows: row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<IntMatrix> {
        check_permutation(perm, self.rows)?;
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for (i, &p) in perm.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(p));
        }
        Ok(out)
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<IntMatrix> {
        check_permutation(perm, self.cols)?;
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for (j, &p) in perm.iter().enumerate() {
                out.set(r, j, self.get(r, p));
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.data[r * self.cols + c]
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::dim(format!("permutation of length {} for size {n}", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::invalid(format!("not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// The conformal order: `x ⊑ y` iff `x_i y_i >= 0` and `|x_i| <= |y_i|` for all `i`.
pub fn conformal_leq(x: &[i64], y: &[i64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::dim(format!("vector lengths {} and {}", x.len(), y.len())));
    }
    Ok(conformal_leq_unchecked(x, y))
}

#[inline]
pub(crate) fn conformal_leq_unchecked(x: &[i64], y: &[i64]) -> bool {
    x.iter().zip(y).all(|(&a, &b)| {
        a == 0 || ((a > 0) == (b > 0) && b != 0 && a.unsigned_abs() <= b.unsigned_abs())
    })
}
