//! Digital paths and loops, their products, and trivial extensions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::image::{digital_interval, DigitalImage};
use crate::lattice::LatticePoint;
use crate::maps::DigitalMap;

/// A digital k-path `[0, m]_Z -> X`, stored as its `m + 1` values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitalPath {
    target: Arc<DigitalImage>,
    values: Vec<usize>,
}

impl DigitalPath {
    /// Builds a path from point indices. Needs `m >= 1` and consecutive values
    /// equal or adjacent.
    pub fn from_indices(target: Arc<DigitalImage>, values: Vec<usize>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidPath("a path needs m >= 1".into()));
        }
        if let Some(bad) = values.iter().find(|&&v| v >= target.len()) {
            return Err(Error::IndexOutOfRange {
                index: *bad as i64,
                range: format!("0..{}", target.len()),
            });
        }
        if let Some(t) = values
            .windows(2)
            .position(|w| !target.equal_or_adjacent(w[0], w[1]))
        {
            return Err(Error::InvalidPath(format!(
                "step {t} -> {} jumps from {} to {}",
                t + 1,
                target.point(values[t]),
                target.point(values[t + 1])
            )));
        }
        Ok(DigitalPath { target, values })
    }

    pub fn from_points(target: Arc<DigitalImage>, points: &[LatticePoint]) -> Result<Self> {
        let values = points
            .iter()
            .map(|p| target.require(p))
            .collect::<Result<Vec<_>>>()?;
        DigitalPath::from_indices(target, values)
    }

    /// The constant path of length `m` at `p`.
    pub fn constant(target: Arc<DigitalImage>, p: &LatticePoint, m: usize) -> Result<Self> {
        let i = target.require(p)?;
        DigitalPath::from_indices(target, vec![i; m + 1])
    }

    pub fn target(&self) -> &Arc<DigitalImage> {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        self.values.iter().map(|&v| self.target.point(v).clone()).collect()
    }

    /// The parameter length `m`.
    pub fn len(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start(&self) -> usize {
        self.values[0]
    }

    pub fn end(&self) -> usize {
        self.values[self.values.len() - 1]
    }

    pub fn is_loop(&self) -> bool {
        self.start() == self.end()
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// The path as a map `[0, m]_Z -> X`.
    pub fn as_map(&self) -> DigitalMap {
        let interval = Arc::new(digital_interval(0, self.len() as i64).expect("m >= 1"));
        DigitalMap::from_indices(interval, self.target.clone(), self.values.clone())
            .expect("path values index the target")
    }
}

/// The product `f * g`: `f` followed by `g`, of length `m_f + m_g`.
pub fn path_product(f: &DigitalPath, g: &DigitalPath) -> Result<DigitalPath> {
    if f.target != g.target {
        return Err(Error::ShapeMismatch("paths lie in different images".into()));
    }
    if f.end() != g.start() {
        return Err(Error::EndpointMismatch);
    }
    let mut values = f.values.clone();
    values.extend_from_slice(&g.values[1..]);
    Ok(DigitalPath {
        target: f.target.clone(),
        values,
    })
}

fn check_loop_pair(f: &DigitalPath, g: &DigitalPath) -> Result<()> {
    if f.target != g.target {
        return Err(Error::ShapeMismatch("loops lie in different images".into()));
    }
    for (name, l) in [("first", f), ("second", g)] {
        if !l.is_loop() {
            return Err(Error::NotALoop(format!("{name} path does not return to its start")));
        }
    }
    if f.start() != g.start() {
        return Err(Error::BasePointMismatch);
    }
    Ok(())
}

/// Whether `g` is a trivial extension of `f`.
///
/// Splitting `f` at a parameter value and inserting a constant path there
/// repeats the value at the junction, so `g` is a trivial extension of `f`
/// exactly when `g` arises from `f` by repeating entries: there is a
/// nondecreasing surjection `r: [0, m_g] -> [0, m_f]` with unit steps and
/// `g = f . r`. This is decided by a reachability table over `(t, r(t))`.
pub fn is_trivial_extension(f: &DigitalPath, g: &DigitalPath) -> Result<bool> {
    check_loop_pair(f, g)?;
    Ok(is_stutter_of(&f.values, &g.values))
}

/// Whether `long` is `short` with some entries repeated (each entry kept at least once).
pub(crate) fn is_stutter_of(short: &[usize], long: &[usize]) -> bool {
    if long.len() < short.len() || long[0] != short[0] {
        return false;
    }
    // reach[i]: long[..=t] can be produced with r(t) = i
    let mut reach = vec![false; short.len()];
    reach[0] = true;
    for &value in &long[1..] {
        let mut next = vec![false; short.len()];
        for i in 0..short.len() {
            if !reach[i] {
                continue;
            }
            if short[i] == value {
                next[i] = true;
            }
            if i + 1 < short.len() && short[i + 1] == value {
                next[i + 1] = true;
            }
        }
        reach = next;
    }
    reach[short.len() - 1]
}

/// All trivial extensions of `f` of parameter length exactly `len`, in
/// lexicographic order of their value sequences, without duplicates.
pub fn trivial_extensions(f: &DigitalPath, len: usize) -> Vec<DigitalPath> {
    let m = f.len();
    if len < m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut counts = vec![1usize; m + 1];
    // distribute len - m extra repetitions over the m + 1 entries
    fn place(
        slot: usize,
        remaining: usize,
        counts: &mut Vec<usize>,
        f: &DigitalPath,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slot + 1 == counts.len() {
            counts[slot] = 1 + remaining;
            let seq = f
                .values
                .iter()
                .zip(counts.iter())
                .flat_map(|(&v, &c)| std::iter::repeat_n(v, c))
                .collect();
            out.push(seq);
            return;
        }
        for extra in 0..=remaining {
            counts[slot] = 1 + extra;
            place(slot + 1, remaining - extra, counts, f, out);
        }
    }
    place(0, len - m, &mut counts, f, &mut out);
    out.sort();
    out.dedup();
    out.into_iter()
        .map(|values| DigitalPath {
            target: f.target.clone(),
            values,
        })
        .collect()
}
