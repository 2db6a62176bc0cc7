//! Lattice points of `Z^n` and the `k(u,n)` adjacency family.
//!
//! Two distinct points are `k(u,n)`-adjacent when every coordinate differs by at
//! most one and the number of coordinates that differ lies in `1..=u`. The
//! familiar names (4-, 8-, 6-, 18-, 26-adjacency, ...) are the neighbour counts
//! returned by [`neighbor_count`].

use std::fmt;

use crate::error::{Error, Result};

/// A point of the integer lattice `Z^n`.
///
/// Points order lexicographically by coordinates; this order fixes every basis
/// used downstream.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        Ok(LatticePoint(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Adds `offset` coordinatewise, failing instead of wrapping on overflow.
    pub fn translate(&self, offset: &[i64]) -> Result<Self> {
        if offset.len() != self.0.len() {
            return Err(Error::DimensionMismatch {
                expected: self.0.len(),
                found: offset.len(),
            });
        }
        self.0
            .iter()
            .zip(offset)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::CoordinateOverflow))
            .collect::<Result<Vec<_>>>()
            .map(LatticePoint)
    }

    /// Appends one coordinate, used to build `X x [0,m]`.
    pub fn extended(&self, last: i64) -> Self {
        let mut coords = self.0.clone();
        coords.push(last);
        LatticePoint(coords)
    }
}

impl From<&[i64]> for LatticePoint {
    /// Panics on an empty slice.
    fn from(coords: &[i64]) -> Self {
        LatticePoint::new(coords.to_vec()).expect("lattice point needs a coordinate")
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(coords: [i64; N]) -> Self {
        LatticePoint::from(&coords[..])
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The parameters `(u, n)` of a `k(u,n)` adjacency relation on `Z^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdjacencySpec {
    n: usize,
    u: usize,
}

impl AdjacencySpec {
    pub fn new(u: usize, n: usize) -> Result<Self> {
        if n == 0 || u == 0 || u > n {
            return Err(Error::InvalidAdjacency { n, u });
        }
        Ok(AdjacencySpec { n, u })
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Maximum number of coordinates in which adjacent points may differ.
    pub fn u(&self) -> usize {
        self.u
    }

    /// The conventional name `k`, i.e. the neighbour count of a lattice point.
    pub fn k(&self) -> u64 {
        neighbor_count(*self)
    }
}

/// Decides `k(u,n)`-adjacency of two lattice points.
pub fn adjacent(p: &LatticePoint, q: &LatticePoint, spec: AdjacencySpec) -> Result<bool> {
    for point in [p, q] {
        if point.dim() != spec.n {
            return Err(Error::DimensionMismatch {
                expected: spec.n,
                found: point.dim(),
            });
        }
    }
    Ok(adjacent_unchecked(p.coords(), q.coords(), spec.u))
}

pub(crate) fn adjacent_unchecked(p: &[i64], q: &[i64], u: usize) -> bool {
    let mut differing = 0usize;
    for (a, b) in p.iter().zip(q) {
        // i128 so that extreme coordinates cannot wrap into a small difference
        match (*a as i128 - *b as i128).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    (1..=u).contains(&differing)
}

/// Number of lattice points `k(u,n)`-adjacent to a fixed point:
/// `sum_{i=1..u} 2^i * C(n, i)`.
pub fn neighbor_count(spec: AdjacencySpec) -> u64 {
    (1..=spec.u)
        .map(|i| (1u64 << i) * binomial(spec.n as u64, i as u64))
        .sum()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All offsets `d` in `{-1,0,1}^n` with `adjacent(0, d)`, in lexicographic order.
pub(crate) fn neighbor_offsets(spec: AdjacencySpec) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut offset = vec![-1i64; spec.n];
    loop {
        let nonzero = offset.iter().filter(|c| **c != 0).count();
        if (1..=spec.u).contains(&nonzero) {
            out.push(offset.clone());
        }
        // odometer over {-1,0,1}^n
        let mut i = spec.n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if offset[i] < 1 {
                offset[i] += 1;
                break;
            }
            offset[i] = -1;
        }
    }
}
