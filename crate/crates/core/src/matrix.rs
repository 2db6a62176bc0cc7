//! Exact integer matrices with sparse columns.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A `rows x cols` integer matrix. Each column lists its nonzero entries by increasing row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        IntegerMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, BigInt::one())]).collect(),
        }
    }

    /// Builds a matrix from columns of `(row, value)` pairs. Repeated rows are summed and
    /// zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Result<Self> {
        let cols = columns.len();
        let mut out = Vec::with_capacity(cols);
        for mut column in columns {
            if let Some((r, _)) = column.iter().find(|(r, _)| *r >= rows) {
                return Err(Error::IndexOutOfRange {
                    index: *r as i64,
                    range: format!("0..{rows}"),
                });
            }
            column.sort_by_key(|(r, _)| *r);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(column.len());
            for (r, v) in column {
                match merged.last_mut() {
                    Some((last, acc)) if *last == r => *acc += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            out.push(merged);
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            columns: out,
        })
    }

    /// Builds a matrix from dense rows.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "ragged rows: expected {cols} entries, found {}",
                bad.len()
            )));
        }
        let mut columns = vec![Vec::new(); cols];
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let v: BigInt = v.clone().into();
                if !v.is_zero() {
                    columns[j].push((i, v));
                }
            }
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            columns,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, BigInt)>] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.columns[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .columns
                .iter()
                .enumerate()
                .all(|(j, c)| c.len() == 1 && c[0].0 == j && c[0].1.is_one())
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, column) in self.columns.iter().enumerate() {
            for (i, v) in column {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, column) in self.columns.iter().enumerate() {
            for (i, v) in column {
                columns[*i].push((j, v.clone()));
            }
        }
        IntegerMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    /// `self * other`.
    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = vec![BigInt::zero(); self.rows];
        let mut touched = Vec::new();
        let columns = other
            .columns
            .iter()
            .map(|column| {
                for (k, b) in column {
                    for (i, a) in &self.columns[*k] {
                        if acc[*i].is_zero() {
                            touched.push(*i);
                        }
                        acc[*i] += a * b;
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let out: Vec<(usize, BigInt)> = touched
                    .drain(..)
                    .filter_map(|i| {
                        let v = std::mem::take(&mut acc[i]);
                        (!v.is_zero()).then_some((i, v))
                    })
                    .collect();
                out
            })
            .collect();
        Ok(IntegerMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    /// Applies the matrix to a dense vector.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for (j, column) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in column {
                out[*i] += a * &v[j];
            }
        }
        Ok(out)
    }

    fn combine(&self, other: &IntegerMatrix, sign: i32) -> Result<IntegerMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} and {}x{} differ in shape",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut c: Vec<(usize, BigInt)> = a.clone();
                c.extend(b.iter().map(|(i, v)| (*i, v * sign)));
                c
            })
            .collect();
        IntegerMatrix::from_columns(self.rows, columns)
    }

    pub fn add(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        self.combine(other, -1)
    }

    /// Plain-text dump: a `name rows cols nnz` header, then one `row col value` line per
    /// nonzero entry in column-major order.
    pub fn to_triplets(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "{name} {} {} {}", self.rows, self.cols, self.nnz()).unwrap();
        for (j, column) in self.columns.iter().enumerate() {
            for (i, v) in column {
                writeln!(out, "{i} {j} {v}").unwrap();
            }
        }
        out
    }
}
