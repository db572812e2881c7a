use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::scalar::Scalar;
use super::HomologyError;

/// Sparse matrix stored column by column; each column is sorted by row and
/// holds no zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (i, c) in m.columns.iter_mut().enumerate() {
            c.push((i, T::one()));
        }
        m
    }

    /// Entries may repeat; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self, HomologyError> {
        let mut columns: Vec<Vec<(usize, T)>> = vec![Vec::new(); cols];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(HomologyError::IndexOutOfRange { row: i, col: j, rows, cols });
            }
            columns[j].push((i, v));
        }
        for c in &mut columns {
            normalize(c);
        }
        Ok(SparseMatrix { rows, cols, columns })
    }

    /// Caller guarantees each column is sorted, in range and zero-free.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|(i, v)| *i < rows && !v.is_zero())));
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.columns[j].push((i, v.clone()));
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut d = vec![vec![T::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, T)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, T)>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.columns[j].binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut columns: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.rows];
        for (i, j, v) in self.entries() {
            columns[i].push((j, v.clone()));
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, HomologyError> {
        if self.cols != rhs.rows {
            return Err(HomologyError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let columns = rhs
            .columns
            .iter()
            .map(|rc| {
                let mut acc: Vec<(usize, T)> = Vec::new();
                for (k, b) in rc {
                    for (i, a) in &self.columns[*k] {
                        acc.push((*i, a.clone() * b.clone()));
                    }
                }
                normalize(&mut acc);
                acc
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: rhs.cols, columns })
    }

    pub fn neg(&self) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(|(i, v)| (*i, -v.clone())).collect())
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, HomologyError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(HomologyError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| {
                let mut c: Vec<(usize, T)> = a.iter().chain(b).cloned().collect();
                normalize(&mut c);
                c
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, columns })
    }

    /// Places `blocks[r][c]` at the given block offsets; `None` is a zero block.
    pub fn block(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&Self>>]) -> Self {
        let rows: usize = row_sizes.iter().sum();
        let mut columns: Vec<Vec<(usize, T)>> = Vec::new();
        for (bc, &w) in col_sizes.iter().enumerate() {
            for j in 0..w {
                let mut col = Vec::new();
                let mut offset = 0;
                for (br, &h) in row_sizes.iter().enumerate() {
                    if let Some(Some(m)) = blocks.get(br).map(|r| r[bc]) {
                        debug_assert_eq!((m.rows, m.cols), (h, w));
                        col.extend(m.columns[j].iter().map(|(i, v)| (i + offset, v.clone())));
                    }
                    offset += h;
                }
                columns.push(col);
            }
        }
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> Option<U>) -> Option<SparseMatrix<U>> {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(i, v)| f(v).map(|u| (*i, u))).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(SparseMatrix { rows: self.rows, cols: self.cols, columns })
    }

    pub fn to_bigint(&self) -> SparseMatrix<BigInt> {
        self.map_scalar(|v| Some(v.to_bigint())).expect("widening never fails")
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> Result<BigInt, HomologyError> {
        if self.rows != self.cols {
            return Err(HomologyError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (self.cols, self.rows),
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = self.to_bigint().to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
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
        Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
    }
}

/// Sorts by row, merges duplicates, drops zeros.
fn normalize<T: Scalar>(col: &mut Vec<(usize, T)>) {
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, T)> = Vec::with_capacity(col.len());
    for (i, v) in col.drain(..) {
        match out.last_mut() {
            Some((li, lv)) if *li == i => *lv = lv.clone() + v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    *col = out;
}

/// Wire format `{"rows": r, "cols": c, "entries": [[i, j, v], ...]}`.
/// Values outside the 64-bit range are written as decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, Value)>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries()
                .map(|(i, j, v)| {
                    let b = v.to_bigint();
                    let val = match i64::try_from(&b) {
                        Ok(x) => Value::from(x),
                        Err(_) => Value::from(b.to_string()),
                    };
                    (i, j, val)
                })
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self, HomologyError> {
        let mut trip = Vec::with_capacity(json.entries.len());
        for (i, j, v) in &json.entries {
            let b: BigInt = match v {
                Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .or_else(|| n.as_u64().map(BigInt::from))
                    .ok_or_else(|| HomologyError::BadEntry(v.to_string()))?,
                Value::String(s) => s.parse().map_err(|_| HomologyError::BadEntry(s.clone()))?,
                other => return Err(HomologyError::BadEntry(other.to_string())),
            };
            let t = T::from_bigint(&b).ok_or_else(|| HomologyError::BadEntry(b.to_string()))?;
            trip.push((*i, *j, t));
        }
        Self::from_triplets(json.rows, json.cols, trip)
    }
}
