//! Digitally continuous maps between digital images.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::image::DigitalImage;
use crate::lattice::LatticePoint;

/// A total function between two digital images, stored as a table of point
/// indices in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitalMap {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    table: Vec<usize>,
}

impl DigitalMap {
    /// Builds a map from an index table (`table[i]` is the image of domain point `i`).
    pub fn from_indices(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        table: Vec<usize>,
    ) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::ShapeMismatch(format!(
                "table has {} entries for a domain of {} points",
                table.len(),
                domain.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&j| j >= codomain.len()) {
            return Err(Error::IndexOutOfRange {
                index: *bad as i64,
                range: format!("0..{}", codomain.len()),
            });
        }
        Ok(DigitalMap {
            domain,
            codomain,
            table,
        })
    }

    /// Builds a map from explicit point pairs; every domain point must appear exactly once.
    pub fn from_pairs(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        pairs: impl IntoIterator<Item = (LatticePoint, LatticePoint)>,
    ) -> Result<Self> {
        let mut table = vec![usize::MAX; domain.len()];
        for (x, y) in pairs {
            let i = domain.require(&x)?;
            let j = codomain.require(&y)?;
            if table[i] != usize::MAX && table[i] != j {
                return Err(Error::ShapeMismatch(format!("point {x} is assigned twice")));
            }
            table[i] = j;
        }
        if let Some(i) = table.iter().position(|&j| j == usize::MAX) {
            return Err(Error::ShapeMismatch(format!(
                "map is not defined at {}",
                domain.point(i)
            )));
        }
        DigitalMap::from_indices(domain, codomain, table)
    }

    /// Builds a map by evaluating `f` on every domain point.
    pub fn from_fn(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        f: impl Fn(&LatticePoint) -> LatticePoint,
    ) -> Result<Self> {
        let table = domain
            .points()
            .iter()
            .map(|p| codomain.require(&f(p)))
            .collect::<Result<Vec<_>>>()?;
        DigitalMap::from_indices(domain, codomain, table)
    }

    pub fn identity(image: Arc<DigitalImage>) -> Self {
        let table = (0..image.len()).collect();
        DigitalMap {
            domain: image.clone(),
            codomain: image,
            table,
        }
    }

    pub fn constant(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, value: &LatticePoint) -> Result<Self> {
        let j = codomain.require(value)?;
        let table = vec![j; domain.len()];
        Ok(DigitalMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Image of domain point index `i`, as a codomain index.
    pub fn at(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply(&self, p: &LatticePoint) -> Result<&LatticePoint> {
        let i = self.domain.require(p)?;
        Ok(self.codomain.point(self.table[i]))
    }

    pub fn is_bijective(&self) -> bool {
        if self.domain.len() != self.codomain.len() {
            return false;
        }
        let mut seen = vec![false; self.codomain.len()];
        self.table.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }
}

/// Whether adjacent domain points go to equal or adjacent codomain points.
pub fn is_continuous(f: &DigitalMap) -> bool {
    f.domain
        .edges()
        .all(|(a, b)| f.codomain.equal_or_adjacent(f.table[a], f.table[b]))
}

/// Largest domain accepted by [`is_continuous_by_subsets`].
pub const SUBSET_CHECK_MAX_POINTS: usize = 16;

/// Continuity in its original form: the image of every k-connected subset is
/// k-connected. Exponential in the domain size.
pub fn is_continuous_by_subsets(f: &DigitalMap) -> Result<bool> {
    let n = f.domain.len();
    if n > SUBSET_CHECK_MAX_POINTS {
        return Err(Error::TooManyPoints {
            max: SUBSET_CHECK_MAX_POINTS,
            found: n,
        });
    }
    for mask in 1u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if !subset_connected(&members, |a, b| f.domain.is_adjacent(a, b)) {
            continue;
        }
        let mut values: Vec<usize> = members.iter().map(|&i| f.table[i]).collect();
        values.sort_unstable();
        values.dedup();
        if !subset_connected(&values, |a, b| f.codomain.is_adjacent(a, b)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subset_connected(members: &[usize], adjacent: impl Fn(usize, usize) -> bool) -> bool {
    if members.len() <= 1 {
        return true;
    }
    let mut reached = vec![false; members.len()];
    reached[0] = true;
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for b in 0..members.len() {
            if !reached[b] && adjacent(members[a], members[b]) {
                reached[b] = true;
                stack.push(b);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

/// The composite `g . f`.
pub fn compose(g: &DigitalMap, f: &DigitalMap) -> Result<DigitalMap> {
    if f.codomain != g.domain {
        return Err(Error::ShapeMismatch(
            "codomain of the first map is not the domain of the second".into(),
        ));
    }
    Ok(DigitalMap {
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
        table: f.table.iter().map(|&j| g.table[j]).collect(),
    })
}

/// Whether `f` is a digital homeomorphism with inverse `g`.
pub fn verify_homeomorphism(f: &DigitalMap, g: &DigitalMap) -> Result<bool> {
    if f.domain != g.codomain || f.codomain != g.domain {
        return Err(Error::ShapeMismatch(
            "the candidate inverse must go backwards between the same images".into(),
        ));
    }
    if !f.is_bijective() || !is_continuous(f) || !is_continuous(g) {
        return Ok(false);
    }
    let gf = compose(g, f)?;
    let fg = compose(f, g)?;
    Ok(gf == DigitalMap::identity(f.domain.clone()) && fg == DigitalMap::identity(f.codomain.clone()))
}

/// Translation of `image` by `offset` together with its inverse.
pub fn translation(image: &Arc<DigitalImage>, offset: &[i64]) -> Result<(DigitalMap, DigitalMap)> {
    let moved = Arc::new(image.translate(offset)?);
    let back: Vec<i64> = offset
        .iter()
        .map(|c| c.checked_neg().ok_or(Error::CoordinateOverflow))
        .collect::<Result<_>>()?;
    let forward = DigitalMap::from_fn(image.clone(), moved.clone(), |p| {
        p.translate(offset).expect("translated already")
    })?;
    let inverse = DigitalMap::from_fn(moved, image.clone(), |p| {
        p.translate(&back).expect("inverse translation of a translated point")
    })?;
    Ok((forward, inverse))
}

/// Inclusion of `sub` into `image`; both must carry the same adjacency.
pub fn inclusion(sub: Arc<DigitalImage>, image: Arc<DigitalImage>) -> Result<DigitalMap> {
    if sub.adjacency() != image.adjacency() {
        return Err(Error::ShapeMismatch("images carry different adjacency relations".into()));
    }
    DigitalMap::from_fn(sub, image, |p| p.clone())
}
