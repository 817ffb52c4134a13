use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact integer matrix.
///
/// Storage is row-sparse (each row keeps its nonzero entries sorted by
/// column) because the presentation matrices built for universal
/// extensions have thousands of generators but only a handful of nonzero
/// entries per row. The logical view is an ordinary dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, BigInt::one()));
        }
        m
    }

    /// Square diagonal matrix with the given diagonal.
    pub fn diagonal(diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            if !d.is_zero() {
                m.data[i].push((i, d.clone()));
            }
        }
        m
    }

    /// Builds a matrix from dense rows. `cols` is needed to shape matrices
    /// without rows.
    pub fn from_dense(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    cols
                )));
            }
            m.data[i] = row
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        Ok(m)
    }

    /// Convenience constructor for small literal matrices.
    ///
    /// Panics when the rows are ragged.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_dense(dense, cols).expect("ragged literal matrix")
    }

    /// Builds a matrix from per-row sparse entries. Entries need not be
    /// sorted; duplicates are summed.
    pub fn from_sparse_rows(rows: usize, cols: usize, entries: Vec<Vec<(usize, BigInt)>>) -> Self {
        debug_assert_eq!(entries.len(), rows);
        let data = entries
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|(c, _)| *c);
                let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    debug_assert!(c < cols);
                    match out.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect();
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut entries = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    entries[i].push((j, v.clone()));
                }
            }
        }
        IntMatrix {
            rows,
            cols: columns.len(),
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.data[i][pos].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => {
                if v.is_zero() {
                    row.remove(pos);
                } else {
                    row[pos].1 = v;
                }
            }
            Err(pos) => {
                if !v.is_zero() {
                    row.insert(pos, (j, v));
                }
            }
        }
    }

    /// Nonzero entries of row `i`, sorted by column.
    pub fn row_entries(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    pub fn row_dense(&self, i: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.cols];
        for (c, v) in &self.data[i] {
            out[*c] = v.clone();
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// All columns as dense vectors (one pass over the storage).
    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.rows]; self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[*c][i] = v.clone();
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row_dense(i)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut entries = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                entries[*c].push((i, v.clone()));
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data: entries,
        }
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| !x[*c].is_zero())
                    .fold(BigInt::zero(), |acc, (c, v)| acc + v * &x[*c])
            })
            .collect()
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; other.cols];
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    if !mark[*j] {
                        mark[*j] = true;
                        touched.push(*j);
                    }
                    acc[*j] += a * b;
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                mark[j] = false;
                let v = std::mem::take(&mut acc[j]);
                if !v.is_zero() {
                    out.push((j, v));
                }
            }
            touched.clear();
            data.push(out);
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    fn zip_rows(&self, other: &IntMatrix, sign: i32) -> Result<IntMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| merge_rows(a, b, sign))
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_rows(other, 1)
    }

    pub fn checked_sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_rows(other, -1)
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        if k.is_zero() {
            return IntMatrix::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v * k)).collect())
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.extend(b.iter().map(|(c, v)| (c + self.cols, v.clone())));
                row
            })
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diagonal(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows);
        let mut offset = 0;
        for b in blocks {
            for row in &b.data {
                data.push(row.iter().map(|(c, v)| (c + offset, v.clone())).collect());
            }
            offset += b.cols;
        }
        IntMatrix { rows, cols, data }
    }

    /// Rows `range` as a new matrix.
    pub fn row_block(&self, start: usize, len: usize) -> IntMatrix {
        IntMatrix {
            rows: len,
            cols: self.cols,
            data: self.data[start..start + len].to_vec(),
        }
    }

    /// Columns `start..start+len` as a new matrix.
    pub fn col_block(&self, start: usize, len: usize) -> IntMatrix {
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| *c >= start && *c < start + len)
                    .map(|(c, v)| (c - start, v.clone()))
                    .collect()
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: len,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: idx.len(),
            cols: self.cols,
            data: idx.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new;
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut r: Vec<(usize, BigInt)> = row
                    .iter()
                    .filter(|(c, _)| pos[*c] != usize::MAX)
                    .map(|(c, v)| (pos[*c], v.clone()))
                    .collect();
                r.sort_by_key(|(c, _)| *c);
                r
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    /// Reduces row `i` modulo `moduli[i]` into `[0, m)`; rows with
    /// modulus zero are left alone.
    pub fn reduce_rows(&self, moduli: &[BigInt]) -> IntMatrix {
        assert_eq!(moduli.len(), self.rows);
        let data = self
            .data
            .iter()
            .zip(moduli)
            .map(|(row, m)| {
                if m.is_zero() {
                    row.clone()
                } else {
                    row.iter()
                        .filter_map(|(c, v)| {
                            let r = mod_floor(v, m);
                            (!r.is_zero()).then_some((*c, r))
                        })
                        .collect()
                }
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Determinant by fraction-free elimination. Square matrices only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

fn merge_rows(a: &[(usize, BigInt)], b: &[(usize, BigInt)], sign: i32) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = if sign < 0 { -&b[j].1 } else { b[j].1.clone() };
            out.push((b[j].0, v));
            j += 1;
        } else {
            let v = if sign < 0 {
                &a[i].1 - &b[j].1
            } else {
                &a[i].1 + &b[j].1
            };
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `v mod m` in `[0, |m|)`; `m = 0` means no reduction.
pub fn mod_floor(v: &BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        return v.clone();
    }
    let r = v % m;
    if r.is_negative() {
        r + m.abs()
    } else {
        r
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            f.debug_list()
                .entries(self.to_dense().iter().map(|r| {
                    r.iter().map(|v| v.to_string()).collect::<Vec<_>>()
                }))
                .finish()
        } else {
            write!(f, "(nnz {})", self.nnz())
        }
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl<'a> Add<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.checked_add(rhs).expect("matrix shape mismatch")
    }
}

impl<'a> Sub<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.checked_sub(rhs).expect("matrix shape mismatch")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }
}
