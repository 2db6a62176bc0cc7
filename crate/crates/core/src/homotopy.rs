//! Digital homotopies and the homotopy decision procedure.
//!
//! Two continuous maps `f, g: X -> Y` are digitally homotopic exactly when they
//! lie in the same connected component of the graph whose vertices are the
//! continuous maps `X -> Y` and whose edges join maps that are pointwise equal
//! or adjacent: a homotopy of length `m` is a walk of `m` steps in that graph.
//! The search below explores this graph breadth-first from `g`, so the witness
//! it returns has minimum length; among minimum-length witnesses it picks the
//! lexicographically least frame sequence.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::image::{digital_interval, DigitalImage};
use crate::lattice::LatticePoint;
use crate::maps::{is_continuous, DigitalMap};
use crate::path::{trivial_extensions, DigitalPath};

/// Default cap on the number of maps a single search may visit.
pub const DEFAULT_STATE_CAP: usize = 2_000_000;

/// A digital homotopy `F: X x [0,m]_Z -> Y`, stored as its frames `F_0, ..., F_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    frames: Vec<DigitalMap>,
}

impl Homotopy {
    /// Wraps a frame sequence. Requires at least two frames with a common
    /// domain and codomain; use [`is_homotopy_valid`] to check continuity.
    pub fn new(frames: Vec<DigitalMap>) -> Result<Self> {
        if frames.len() < 2 {
            return Err(Error::InvalidHomotopy("a homotopy needs m >= 1".into()));
        }
        let (d, c) = (frames[0].domain(), frames[0].codomain());
        if frames.iter().any(|f| f.domain() != d || f.codomain() != c) {
            return Err(Error::InvalidHomotopy("frames have different shapes".into()));
        }
        Ok(Homotopy { frames })
    }

    /// The homotopy of length one from `f` to itself.
    pub fn lazy(f: &DigitalMap) -> Self {
        Homotopy {
            frames: vec![f.clone(), f.clone()],
        }
    }

    pub fn frames(&self) -> &[DigitalMap] {
        &self.frames
    }

    /// The parameter length `m`.
    pub fn len(&self) -> usize {
        self.frames.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn source(&self) -> &Arc<DigitalImage> {
        self.frames[0].domain()
    }

    pub fn target(&self) -> &Arc<DigitalImage> {
        self.frames[0].codomain()
    }

    pub fn start(&self) -> &DigitalMap {
        &self.frames[0]
    }

    pub fn end(&self) -> &DigitalMap {
        &self.frames[self.frames.len() - 1]
    }

    pub fn reversed(&self) -> Self {
        let mut frames = self.frames.clone();
        frames.reverse();
        Homotopy { frames }
    }

    /// `self` followed by `other`; the last frame of `self` must be the first of `other`.
    pub fn then(&self, other: &Homotopy) -> Result<Self> {
        if self.end() != other.start() {
            return Err(Error::InvalidHomotopy(
                "homotopies do not meet in a common map".into(),
            ));
        }
        let mut frames = self.frames.clone();
        frames.extend_from_slice(&other.frames[1..]);
        Ok(Homotopy { frames })
    }

    /// The track `t -> F(x, t)` of domain point index `x`.
    pub fn track(&self, x: usize) -> Vec<usize> {
        self.frames.iter().map(|f| f.at(x)).collect()
    }
}

/// Checks that `homotopy` runs from `f` to `g`, every frame is continuous, and
/// every track `t -> F(x, t)` moves only between equal or adjacent points.
pub fn is_homotopy_valid(homotopy: &Homotopy, f: &DigitalMap, g: &DigitalMap) -> bool {
    if homotopy.start() != f || homotopy.end() != g {
        return false;
    }
    if !homotopy.frames.iter().all(is_continuous) {
        return false;
    }
    let target = homotopy.target();
    homotopy.frames.windows(2).all(|w| {
        w[0].table()
            .iter()
            .zip(w[1].table())
            .all(|(&a, &b)| target.equal_or_adjacent(a, b))
    })
}

/// The space of continuous maps `X -> Y` with some domain points pinned.
struct MapSpace<'a> {
    domain: &'a DigitalImage,
    codomain: &'a DigitalImage,
    pins: Vec<Option<usize>>,
    // closed neighbourhoods in ascending order
    closed: Vec<Vec<usize>>,
}

impl<'a> MapSpace<'a> {
    fn new(domain: &'a DigitalImage, codomain: &'a DigitalImage, pins: &[(usize, usize)]) -> Self {
        let mut pin_table = vec![None; domain.len()];
        for &(x, y) in pins {
            pin_table[x] = Some(y);
        }
        let closed = (0..codomain.len())
            .map(|y| {
                let mut list = codomain.neighbor_indices(y).to_vec();
                list.push(y);
                list.sort_unstable();
                list
            })
            .collect();
        MapSpace {
            domain,
            codomain,
            pins: pin_table,
            closed,
        }
    }

    /// Every continuous, pin-respecting map one step from `h`, in lexicographic order.
    fn step_neighbors(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = vec![0usize; h.len()];
        self.extend(h, 0, &mut current, &mut out);
        out
    }

    fn extend(&self, h: &[usize], x: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if x == h.len() {
            out.push(current.clone());
            return;
        }
        let pinned = self.pins[x];
        for &y in &self.closed[h[x]] {
            if pinned.is_some_and(|p| p != y) {
                continue;
            }
            let fits = self
                .domain
                .neighbor_indices(x)
                .iter()
                .take_while(|&&w| w < x)
                .all(|&w| self.codomain.equal_or_adjacent(current[w], y));
            if fits {
                current[x] = y;
                self.extend(h, x + 1, current, out);
            }
        }
    }
}

fn check_pair(f: &DigitalMap, g: &DigitalMap) -> Result<()> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(Error::ShapeMismatch("maps have different domains or codomains".into()));
    }
    if !is_continuous(f) || !is_continuous(g) {
        return Err(Error::NotContinuous);
    }
    Ok(())
}

/// Minimum-length, lexicographically least homotopy from `f` to `g` among
/// those whose frames respect `pins`, or `None` when there is none.
fn search(f: &DigitalMap, g: &DigitalMap, pins: &[(usize, usize)], cap: usize) -> Result<Option<Homotopy>> {
    if f == g {
        return Ok(Some(Homotopy::lazy(f)));
    }
    let space = MapSpace::new(f.domain(), f.codomain(), pins);
    let start = g.table().to_vec();
    let goal = f.table().to_vec();
    let mut dist: HashMap<Vec<usize>, usize> = HashMap::new();
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    let mut found = None;
    'bfs: while let Some(h) = queue.pop_front() {
        let d = dist[&h];
        for next in space.step_neighbors(&h) {
            if dist.contains_key(&next) {
                continue;
            }
            if next == goal {
                found = Some(d + 1);
                dist.insert(next, d + 1);
                break 'bfs;
            }
            if dist.len() >= cap {
                return Err(Error::StateCapExceeded { cap });
            }
            dist.insert(next.clone(), d + 1);
            queue.push_back(next);
        }
    }
    let Some(length) = found else {
        return Ok(None);
    };
    // every map closer to g than f has been labelled, so walk greedily downhill
    let mut frames = vec![f.clone()];
    let mut current = goal;
    for remaining in (0..length).rev() {
        current = space
            .step_neighbors(&current)
            .into_iter()
            .find(|h| dist.get(h) == Some(&remaining))
            .expect("a downhill neighbour exists on a shortest path");
        frames.push(
            DigitalMap::from_indices(f.domain().clone(), f.codomain().clone(), current.clone())
                .expect("search stays inside the map space"),
        );
    }
    Ok(Some(Homotopy { frames }))
}

/// A homotopy from `f` to `g` if one exists, using [`DEFAULT_STATE_CAP`].
pub fn are_homotopic(f: &DigitalMap, g: &DigitalMap) -> Result<Option<Homotopy>> {
    are_homotopic_with_cap(f, g, DEFAULT_STATE_CAP)
}

pub fn are_homotopic_with_cap(f: &DigitalMap, g: &DigitalMap, cap: usize) -> Result<Option<Homotopy>> {
    check_pair(f, g)?;
    search(f, g, &[], cap)
}

/// A homotopy from `f` to `g` that keeps each point of `fixed` at its common
/// value under `f` and `g` throughout.
pub fn are_homotopic_relative(
    f: &DigitalMap,
    g: &DigitalMap,
    fixed: &[LatticePoint],
    cap: usize,
) -> Result<Option<Homotopy>> {
    check_pair(f, g)?;
    let mut pins = Vec::with_capacity(fixed.len());
    for p in fixed {
        let x = f.domain().require(p)?;
        if f.at(x) != g.at(x) {
            return Err(Error::BasePointNotFixed(format!(
                "the maps disagree at {p}"
            )));
        }
        pins.push((x, f.at(x)));
    }
    search(f, g, &pins, cap)
}

/// A pointed homotopy from `f` to `g` fixing `x0 -> y0`.
pub fn are_pointed_homotopic(
    f: &DigitalMap,
    g: &DigitalMap,
    x0: &LatticePoint,
    y0: &LatticePoint,
) -> Result<Option<Homotopy>> {
    are_pointed_homotopic_with_cap(f, g, x0, y0, DEFAULT_STATE_CAP)
}

pub fn are_pointed_homotopic_with_cap(
    f: &DigitalMap,
    g: &DigitalMap,
    x0: &LatticePoint,
    y0: &LatticePoint,
    cap: usize,
) -> Result<Option<Homotopy>> {
    check_pair(f, g)?;
    let x = f.domain().require(x0)?;
    let y = f.codomain().require(y0)?;
    for (name, map) in [("first", f), ("second", g)] {
        if map.at(x) != y {
            return Err(Error::BasePointNotFixed(format!(
                "{name} map sends {x0} to {}, not {y0}",
                map.codomain().point(map.at(x))
            )));
        }
    }
    search(f, g, &[(x, y)], cap)
}

/// Evidence that two loops define the same loop class: trivial extensions of
/// equal length and an endpoint-fixed homotopy between them.
#[derive(Clone, Debug)]
pub struct LoopEquivalence {
    pub first_extension: DigitalPath,
    pub second_extension: DigitalPath,
    pub homotopy: Homotopy,
}

/// Searches for trivial extensions `f'` of `f` and `g'` of `g` of a common
/// length at most `max_len`, joined by a homotopy holding both endpoints
/// fixed. `None` means nothing was found within the bound.
pub fn loop_equivalence(
    f: &DigitalPath,
    g: &DigitalPath,
    max_len: usize,
    cap: usize,
) -> Result<Option<LoopEquivalence>> {
    if f.target() != g.target() {
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
    let base = f.start();
    let target = f.target();
    for len in f.len().max(g.len())..=max_len {
        let interval = digital_interval(0, len as i64)?;
        let space = MapSpace::new(&interval, target, &[(0, base), (len, base)]);
        let goals: HashSet<Vec<usize>> = trivial_extensions(f, len)
            .into_iter()
            .map(|p| p.values().to_vec())
            .collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for start in trivial_extensions(g, len) {
            let start = start.values().to_vec();
            if !seen.insert(start.clone()) {
                continue;
            }
            let mut queue = VecDeque::from([start.clone()]);
            let mut hit = goals.contains(&start).then(|| start.clone());
            while hit.is_none() {
                let Some(h) = queue.pop_front() else { break };
                for next in space.step_neighbors(&h) {
                    if seen.contains(&next) {
                        continue;
                    }
                    if seen.len() >= cap {
                        return Err(Error::StateCapExceeded { cap });
                    }
                    seen.insert(next.clone());
                    if goals.contains(&next) {
                        hit = Some(next);
                        break;
                    }
                    queue.push_back(next);
                }
            }
            if let Some(goal) = hit {
                let first = DigitalPath::from_indices(target.clone(), goal)?;
                let second = DigitalPath::from_indices(target.clone(), start)?;
                let homotopy = are_homotopic_relative(
                    &first.as_map(),
                    &second.as_map(),
                    &[LatticePoint::from([0]), LatticePoint::from([len as i64])],
                    cap,
                )?
                .expect("both extensions lie in one component");
                return Ok(Some(LoopEquivalence {
                    first_extension: first,
                    second_extension: second,
                    homotopy,
                }));
            }
        }
    }
    Ok(None)
}

/// Bounded check that `f` and `g` lie in the same loop class.
pub fn loops_equivalent(f: &DigitalPath, g: &DigitalPath, max_len: usize) -> Result<bool> {
    loop_equivalence(f, g, max_len, DEFAULT_STATE_CAP).map(|w| w.is_some())
}

/// All continuous maps `domain -> codomain`, in lexicographic order of their tables.
pub fn continuous_maps(domain: &Arc<DigitalImage>, codomain: &Arc<DigitalImage>) -> Vec<DigitalMap> {
    let mut out = Vec::new();
    let mut current = vec![0usize; domain.len()];
    fn extend(
        domain: &DigitalImage,
        codomain: &DigitalImage,
        x: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if x == current.len() {
            out.push(current.clone());
            return;
        }
        for y in 0..codomain.len() {
            let fits = domain
                .neighbor_indices(x)
                .iter()
                .take_while(|&&w| w < x)
                .all(|&w| codomain.equal_or_adjacent(current[w], y));
            if fits {
                current[x] = y;
                extend(domain, codomain, x + 1, current, out);
            }
        }
    }
    let mut tables = Vec::new();
    if !codomain.is_empty() || domain.is_empty() {
        extend(domain, codomain, 0, &mut current, &mut tables);
    }
    for table in tables {
        out.push(
            DigitalMap::from_indices(domain.clone(), codomain.clone(), table)
                .expect("enumerated tables index the codomain"),
        );
    }
    out
}
