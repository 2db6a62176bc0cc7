//! Smith normal form over the integers.
//!
//! The dense reduction pivots on a minimum-absolute-value entry. It runs in
//! checked `i64` arithmetic first and is repeated over `BigInt` when any
//! intermediate overflows, so results are always exact. The factors-only entry
//! point first removes unit pivots with sparse column elimination, which
//! disposes of most of a boundary matrix before any dense work.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::IntegerMatrix;

/// Unimodular `U`, `V` with `U * M * V = D`, together with their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transforms {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// `d_1 | d_2 | ... | d_r`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    pub transforms: Option<Transforms>,
}

impl SmithDecomposition {
    /// The diagonal form `D` as a `rows x cols` matrix.
    pub fn diagonal(&self, rows: usize, cols: usize) -> IntegerMatrix {
        let mut columns = vec![Vec::new(); cols];
        for (i, d) in self.invariant_factors.iter().enumerate() {
            columns[i].push((i, d.clone()));
        }
        IntegerMatrix::from_columns(rows, columns).expect("factors fit the shape")
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

trait Scalar: Clone + std::fmt::Debug {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn trunc_div(&self, d: &Self) -> Option<Self>;
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn divisible_by(&self, d: &Self) -> bool;
}

impl Scalar for i64 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn trunc_div(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn divisible_by(&self, d: &Self) -> bool {
        self.checked_rem(*d) == Some(0)
    }
}

impl Scalar for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn trunc_div(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn divisible_by(&self, d: &Self) -> bool {
        Zero::is_zero(&self.mod_floor(d))
    }
}

type Grid<T> = Vec<Vec<T>>;

fn identity<T: Scalar>(n: usize) -> Grid<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

struct Dense<T> {
    a: Grid<T>,
    rows: usize,
    cols: usize,
    track: Option<[Grid<T>; 4]>,
}

#[allow(clippy::needless_range_loop)]
impl<T: Scalar> Dense<T> {
    fn new(a: Grid<T>, rows: usize, cols: usize, track: bool) -> Self {
        let track = track.then(|| [identity(rows), identity(rows), identity(cols), identity(cols)]);
        Dense { a, rows, cols, track }
    }

    // row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        for c in 0..self.cols {
            if !self.a[j][c].is_zero() {
                self.a[i][c] = self.a[i][c].sub_mul(q, &self.a[j][c])?;
            }
        }
        if let Some([u, u_inv, _, _]) = &mut self.track {
            for c in 0..u.len() {
                u[i][c] = u[i][c].sub_mul(q, &u[j][c])?;
            }
            let minus = q.neg()?;
            for r in 0..u_inv.len() {
                u_inv[r][j] = u_inv[r][j].sub_mul(&minus, &u_inv[r][i])?;
            }
        }
        Some(())
    }

    // col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        for r in 0..self.rows {
            if !self.a[r][j].is_zero() {
                self.a[r][i] = self.a[r][i].sub_mul(q, &self.a[r][j])?;
            }
        }
        if let Some([_, _, v, v_inv]) = &mut self.track {
            for r in 0..v.len() {
                v[r][i] = v[r][i].sub_mul(q, &v[r][j])?;
            }
            let minus = q.neg()?;
            for c in 0..v_inv.len() {
                v_inv[j][c] = v_inv[j][c].sub_mul(&minus, &v_inv[i][c])?;
            }
        }
        Some(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some([u, u_inv, _, _]) = &mut self.track {
            u.swap(i, j);
            for row in u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some([_, _, v, v_inv]) = &mut self.track {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
            v_inv.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for c in 0..self.cols {
            self.a[i][c] = self.a[i][c].neg()?;
        }
        if let Some([u, u_inv, _, _]) = &mut self.track {
            for c in 0..u.len() {
                u[i][c] = u[i][c].neg()?;
            }
            for row in u_inv.iter_mut() {
                row[i] = row[i].neg()?;
            }
        }
        Some(())
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.cmp_abs(&self.a[bi][bj]) == Ordering::Less) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn reduce(&mut self) -> Option<Vec<T>> {
        let mut factors = Vec::new();
        for t in 0..self.rows.min(self.cols) {
            let Some((i, j)) = self.min_entry(t) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].trunc_div(&self.a[t][t])?;
                        self.row_sub(i, t, &q)?;
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].trunc_div(&self.a[t][t])?;
                        self.col_sub(j, t, &q)?;
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    // a remainder smaller than the pivot is left in row or column t
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.cmp_abs(&self.a[best.0][best.1]) == Ordering::Less {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.cmp_abs(&self.a[best.0][best.1]) == Ordering::Less {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let pivot = self.a[t][t].clone();
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].divisible_by(&pivot)));
                match bad {
                    Some(i) => self.row_sub(t, i, &T::one().neg()?)?,
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            factors.push(self.a[t][t].clone());
        }
        Some(factors)
    }
}

fn to_matrix<T: Scalar>(grid: &Grid<T>, rows: usize, cols: usize) -> IntegerMatrix {
    let mut columns = vec![Vec::new(); cols];
    for (i, row) in grid.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                columns[j].push((i, x.to_big()));
            }
        }
    }
    IntegerMatrix::from_columns(rows, columns).expect("entries in range")
}

fn dense_grid<T: Scalar>(m: &IntegerMatrix) -> Option<Grid<T>> {
    let mut grid = vec![vec![T::zero(); m.cols()]; m.rows()];
    for (j, column) in m.columns().iter().enumerate() {
        for (i, x) in column {
            grid[*i][j] = T::from_big(x)?;
        }
    }
    Some(grid)
}

fn dense_snf<T: Scalar>(m: &IntegerMatrix, track: bool) -> Option<SmithDecomposition> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut dense = Dense::new(dense_grid::<T>(m)?, rows, cols, track);
    let factors = dense.reduce()?;
    let transforms = dense.track.as_ref().map(|[u, u_inv, v, v_inv]| Transforms {
        u: to_matrix(u, rows, rows),
        u_inv: to_matrix(u_inv, rows, rows),
        v: to_matrix(v, cols, cols),
        v_inv: to_matrix(v_inv, cols, cols),
    });
    Some(SmithDecomposition {
        rank: factors.len(),
        invariant_factors: factors.iter().map(Scalar::to_big).collect(),
        transforms,
    })
}

fn dense_exact(m: &IntegerMatrix, track: bool) -> SmithDecomposition {
    dense_snf::<i64>(m, track).unwrap_or_else(|| {
        log::debug!("i64 overflow in {}x{} reduction, retrying exactly", m.rows(), m.cols());
        dense_snf::<BigInt>(m, track).expect("BigInt arithmetic cannot overflow")
    })
}

/// Removes unit pivots by column elimination. Returns the number of pivots
/// removed and the residual matrix on the untouched rows and columns.
fn eliminate_units(m: &IntegerMatrix) -> (usize, IntegerMatrix) {
    let mut columns: Vec<Vec<(usize, BigInt)>> = m.columns().to_vec();
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); m.rows()];
    for (j, column) in columns.iter().enumerate() {
        for (i, _) in column {
            row_cols[*i].push(j);
        }
    }
    let mut row_alive = vec![true; m.rows()];
    let mut col_alive = vec![true; m.cols()];
    let mut pivots = 0;
    loop {
        let before = pivots;
        for c in 0..columns.len() {
            if !col_alive[c] || columns[c].is_empty() {
                continue;
            }
            let pick = columns[c]
                .iter()
                .filter(|(_, x)| x.magnitude().is_one())
                .min_by_key(|(r, _)| row_cols[*r].len())
                .map(|(r, x)| (*r, x.clone()));
            let Some((r, unit)) = pick else { continue };
            let pivot_col = std::mem::take(&mut columns[c]);
            let mut others = std::mem::take(&mut row_cols[r]);
            others.sort_unstable();
            others.dedup();
            for &j in &others {
                if j == c || !col_alive[j] {
                    continue;
                }
                let Ok(k) = columns[j].binary_search_by_key(&r, |(i, _)| *i) else { continue };
                let q = &columns[j][k].1 * &unit;
                let merged = axpy(&columns[j], &q, &pivot_col);
                for (i, _) in &merged {
                    if columns[j].binary_search_by_key(i, |(i, _)| *i).is_err() {
                        row_cols[*i].push(j);
                    }
                }
                columns[j] = merged;
            }
            col_alive[c] = false;
            row_alive[r] = false;
            pivots += 1;
        }
        if pivots == before {
            break;
        }
    }
    let row_map: Vec<Option<usize>> = {
        let mut next = 0;
        (0..m.rows())
            .map(|i| {
                let used = row_alive[i];
                used.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let kept_rows = row_map.iter().flatten().count();
    let residual: Vec<Vec<(usize, BigInt)>> = columns
        .into_iter()
        .enumerate()
        .filter(|(j, col)| col_alive[*j] && !col.is_empty())
        .map(|(_, col)| {
            col.into_iter()
                .map(|(i, x)| (row_map[i].expect("pivot rows are cleared"), x))
                .collect()
        })
        .collect();
    let residual = IntegerMatrix::from_columns(kept_rows, residual).expect("rows remapped in range");
    (pivots, residual)
}

// a - q * b on sorted sparse columns
fn axpy(a: &[(usize, BigInt)], q: &BigInt, b: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        let ra = a.get(x).map_or(usize::MAX, |e| e.0);
        let rb = b.get(y).map_or(usize::MAX, |e| e.0);
        match ra.cmp(&rb) {
            Ordering::Less => {
                out.push(a[x].clone());
                x += 1;
            }
            Ordering::Greater => {
                out.push((rb, -(q * &b[y].1)));
                y += 1;
            }
            Ordering::Equal => {
                let v = &a[x].1 - q * &b[y].1;
                if !Zero::is_zero(&v) {
                    out.push((ra, v));
                }
                x += 1;
                y += 1;
            }
        }
    }
    out
}

/// Invariant factors and rank of `m`, without transforms.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let (units, residual) = eliminate_units(m);
    // strip zero rows so the dense stage only sees the live block
    let live_rows: Vec<usize> = {
        let mut seen = vec![false; residual.rows()];
        for column in residual.columns() {
            for (i, _) in column {
                seen[*i] = true;
            }
        }
        let mut next = 0;
        seen.iter()
            .map(|&s| {
                let k = next;
                next += s as usize;
                if s { k } else { usize::MAX }
            })
            .collect()
    };
    let kept = live_rows.iter().filter(|&&k| k != usize::MAX).count();
    let packed = IntegerMatrix::from_columns(
        kept,
        residual
            .columns()
            .iter()
            .map(|c| c.iter().map(|(i, x)| (live_rows[*i], x.clone())).collect())
            .collect(),
    )
    .expect("packed rows in range");
    if units > 0 || packed.cols() > 0 {
        log::trace!(
            "{}x{}: {} unit pivots, residual {}x{}",
            m.rows(),
            m.cols(),
            units,
            packed.rows(),
            packed.cols()
        );
    }
    let rest = dense_exact(&packed, false);
    let mut factors = vec![<BigInt as One>::one(); units];
    factors.extend(rest.invariant_factors);
    SmithDecomposition {
        rank: factors.len(),
        invariant_factors: factors,
        transforms: None,
    }
}

/// Invariant factors together with unimodular `U`, `V` and their inverses.
pub fn smith_normal_form_with_transforms(m: &IntegerMatrix) -> SmithDecomposition {
    dense_exact(m, true)
}
