//! Digital images: finite point sets with an adjacency relation.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{adjacent_unchecked, neighbor_offsets, AdjacencySpec, LatticePoint};

/// The adjacency relation carried by a [`DigitalImage`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Adjacency {
    /// The `k(u,n)` rule on `Z^n`.
    Lattice(AdjacencySpec),
    /// An explicit edge set on points of `Z^dim`, as produced by
    /// [`cartesian_product`](crate::product::cartesian_product). The edges live
    /// in the image itself.
    Explicit { dim: usize },
}

impl Adjacency {
    pub fn dim(&self) -> usize {
        match self {
            Adjacency::Lattice(spec) => spec.n(),
            Adjacency::Explicit { dim } => *dim,
        }
    }
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Adjacency::Lattice(spec) => {
                write!(f, "k({},{}) = {}-adjacency", spec.u(), spec.n(), spec.k())
            }
            Adjacency::Explicit { dim } => write!(f, "explicit edge set in Z^{dim}"),
        }
    }
}

/// A finite digital image `(X, k)`.
///
/// Points are kept in lexicographic order and are addressed by their index in
/// that order. Adjacency lists are precomputed and sorted.
#[derive(Clone)]
pub struct DigitalImage {
    adjacency: Adjacency,
    points: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
    neighbors: Vec<Vec<usize>>,
}

impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency
            && self.points == other.points
            && self.neighbors == other.neighbors
    }
}

impl Eq for DigitalImage {}

impl fmt::Debug for DigitalImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DigitalImage")
            .field("adjacency", &self.adjacency)
            .field("points", &self.points)
            .finish()
    }
}

fn sorted_unique(dim: usize, points: impl IntoIterator<Item = LatticePoint>) -> Result<Vec<LatticePoint>> {
    let mut points: Vec<LatticePoint> = points.into_iter().collect();
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    points.sort();
    points.dedup();
    Ok(points)
}

fn index_of_points(points: &[LatticePoint]) -> HashMap<LatticePoint, usize> {
    points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
}

impl DigitalImage {
    /// Builds an image with `k(u,n)` adjacency. Duplicate points are merged.
    pub fn new(spec: AdjacencySpec, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let points = sorted_unique(spec.n(), points)?;
        let index = index_of_points(&points);
        let neighbors = lattice_neighbors(spec, &points, &index);
        Ok(DigitalImage {
            adjacency: Adjacency::Lattice(spec),
            points,
            index,
            neighbors,
        })
    }

    /// Builds an image whose adjacency is the given undirected edge set.
    pub fn with_edges(
        dim: usize,
        points: impl IntoIterator<Item = LatticePoint>,
        edges: impl IntoIterator<Item = (LatticePoint, LatticePoint)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyPoint);
        }
        let points = sorted_unique(dim, points)?;
        let index = index_of_points(&points);
        let mut neighbors = vec![Vec::new(); points.len()];
        for (p, q) in edges {
            let i = *index
                .get(&p)
                .ok_or_else(|| Error::InvalidEdge(format!("endpoint {p} is not a point of the image")))?;
            let j = *index
                .get(&q)
                .ok_or_else(|| Error::InvalidEdge(format!("endpoint {q} is not a point of the image")))?;
            if i == j {
                return Err(Error::InvalidEdge(format!("loop at {p}")));
            }
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        Ok(DigitalImage {
            adjacency: Adjacency::Explicit { dim },
            points,
            index,
            neighbors,
        })
    }

    pub fn empty(spec: AdjacencySpec) -> Self {
        DigitalImage {
            adjacency: Adjacency::Lattice(spec),
            points: Vec::new(),
            index: HashMap::new(),
            neighbors: Vec::new(),
        }
    }

    pub fn adjacency(&self) -> Adjacency {
        self.adjacency
    }

    /// The `k(u,n)` parameters, or `None` for explicit-edge images.
    pub fn spec(&self) -> Option<AdjacencySpec> {
        match self.adjacency {
            Adjacency::Lattice(spec) => Some(spec),
            Adjacency::Explicit { .. } => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.adjacency.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &LatticePoint {
        &self.points[index]
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.index.contains_key(p)
    }

    /// Like [`index_of`](Self::index_of) but reports a missing point as an error.
    pub fn require(&self, p: &LatticePoint) -> Result<usize> {
        self.index_of(p).ok_or_else(|| Error::PointNotInImage(p.to_string()))
    }

    /// Sorted indices of the points adjacent to point `i`.
    pub fn neighbor_indices(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }

    pub fn equal_or_adjacent(&self, i: usize, j: usize) -> bool {
        i == j || self.is_adjacent(i, j)
    }

    /// Number of unordered adjacent pairs.
    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Unordered adjacent index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |j| **j > i).map(move |j| (i, *j)))
    }

    /// Component label of every point; labels are numbered in order of each
    /// component's least point.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.len()];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.len() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(i) = queue.pop_front() {
                for &j in &self.neighbors[i] {
                    if label[j] == usize::MAX {
                        label[j] = next;
                        queue.push_back(j);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Whether the image is k-connected. Images with at most one point count as connected.
    pub fn is_connected(&self) -> bool {
        self.component_labels().iter().all(|l| *l == 0)
    }

    /// The image shifted by a fixed lattice vector. Explicit edges are carried along.
    pub fn translate(&self, offset: &[i64]) -> Result<Self> {
        let moved = self
            .points
            .iter()
            .map(|p| p.translate(offset))
            .collect::<Result<Vec<_>>>()?;
        match self.adjacency {
            Adjacency::Lattice(spec) => DigitalImage::new(spec, moved),
            Adjacency::Explicit { dim } => {
                let edges: Vec<_> = self
                    .edges()
                    .map(|(i, j)| (moved[i].clone(), moved[j].clone()))
                    .collect();
                DigitalImage::with_edges(dim, moved, edges)
            }
        }
    }

    /// The subimage on `points`, with the induced adjacency.
    pub fn subimage(&self, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let points: Vec<LatticePoint> = points.into_iter().collect();
        for p in &points {
            self.require(p)?;
        }
        match self.adjacency {
            Adjacency::Lattice(spec) => DigitalImage::new(spec, points),
            Adjacency::Explicit { dim } => {
                let keep: std::collections::HashSet<usize> =
                    points.iter().map(|p| self.index[p]).collect();
                let edges: Vec<_> = self
                    .edges()
                    .filter(|(i, j)| keep.contains(i) && keep.contains(j))
                    .map(|(i, j)| (self.points[i].clone(), self.points[j].clone()))
                    .collect();
                DigitalImage::with_edges(dim, points, edges)
            }
        }
    }
}

fn lattice_neighbors(
    spec: AdjacencySpec,
    points: &[LatticePoint],
    index: &HashMap<LatticePoint, usize>,
) -> Vec<Vec<usize>> {
    let k = spec.k() as usize;
    let mut neighbors = vec![Vec::new(); points.len()];
    if k < points.len() {
        let offsets = neighbor_offsets(spec);
        for (i, p) in points.iter().enumerate() {
            for offset in &offsets {
                // points whose neighbour would overflow simply have no neighbour there
                if let Ok(q) = p.translate(offset) {
                    if let Some(&j) = index.get(&q) {
                        neighbors[i].push(j);
                    }
                }
            }
            neighbors[i].sort_unstable();
        }
    } else {
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if adjacent_unchecked(points[i].coords(), points[j].coords(), spec.u()) {
                    neighbors[i].push(j);
                    neighbors[j].push(i);
                }
            }
        }
    }
    neighbors
}

/// Points of `image` adjacent to `p`, in canonical order.
pub fn neighbors(p: &LatticePoint, image: &DigitalImage) -> Result<Vec<LatticePoint>> {
    let i = image.require(p)?;
    Ok(image
        .neighbor_indices(i)
        .iter()
        .map(|&j| image.point(j).clone())
        .collect())
}

/// Partition of the image into maximal k-connected subsets. Blocks are sorted
/// internally and listed in order of their least point.
pub fn connected_components(image: &DigitalImage) -> Vec<Vec<LatticePoint>> {
    let labels = image.component_labels();
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); count];
    for (i, label) in labels.into_iter().enumerate() {
        blocks[label].push(image.point(i).clone());
    }
    blocks
}

/// The digital interval `[a, b]_Z` with 2-adjacency.
pub fn digital_interval(a: i64, b: i64) -> Result<DigitalImage> {
    if a >= b {
        return Err(Error::InvalidInterval { a, b });
    }
    let spec = AdjacencySpec::new(1, 1).expect("k(1,1) is valid");
    DigitalImage::new(spec, (a..=b).map(|z| LatticePoint::from([z])))
}
