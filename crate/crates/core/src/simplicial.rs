//! Standard simplexes, face functions, and singular simplexes of a digital image.
//!
//! The standard `n`-simplex is the set of unit vectors `e_0, ..., e_n` of
//! `Z^(n+1)` with `k(2, n+1)` adjacency. Any two distinct vertices differ in
//! exactly two coordinates, so the simplex is a complete graph and a map out
//! of it is continuous exactly when its values are pairwise equal or
//! adjacent. A singular `n`-simplex is therefore an ordered `(n+1)`-tuple of
//! such points; degenerate tuples with repeated values are included.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::image::DigitalImage;
use crate::lattice::{AdjacencySpec, LatticePoint};

/// The digitally standard `n`-simplex with vertex order `e_0 < ... < e_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StandardSimplex {
    n: usize,
}

impl StandardSimplex {
    pub fn new(n: usize) -> Self {
        StandardSimplex { n }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The vertex `e_i` as a lattice point of `Z^(n+1)`.
    pub fn vertex(&self, i: usize) -> LatticePoint {
        let mut coords = vec![0; self.n + 1];
        coords[i] = 1;
        LatticePoint::new(coords).expect("n + 1 >= 1 coordinates")
    }

    /// The simplex as a digital image with `k(2, n+1)` adjacency (`k(1,1)` for `n = 0`).
    pub fn image(&self) -> DigitalImage {
        let u = 2.min(self.n + 1);
        let spec = AdjacencySpec::new(u, self.n + 1).expect("u <= n + 1");
        DigitalImage::new(spec, (0..=self.n).map(|i| self.vertex(i)))
            .expect("vertices have n + 1 coordinates")
    }
}

/// The `i`-th face function `Delta^(n-1) -> Delta^n` on vertex indices: the
/// order-preserving injection that misses `i`.
pub fn face_vertex_map(i: usize, n: usize) -> Result<Vec<usize>> {
    if n == 0 || i > n {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            range: format!("0..={n} with n >= 1"),
        });
    }
    Ok((0..n).map(|j| if j < i { j } else { j + 1 }).collect())
}

/// The `i`-th face function on barycentric coordinates: a zero is inserted at position `i`.
pub fn face_barycentric(i: usize, coords: &[u8]) -> Result<Vec<u8>> {
    let n = coords.len();
    if i > n {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            range: format!("0..={n}"),
        });
    }
    let mut out = coords.to_vec();
    out.insert(i, 0);
    Ok(out)
}

/// Composite of vertex maps: `(outer . inner)(j) = outer[inner[j]]`.
pub fn compose_vertex_maps(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&j| outer[j]).collect()
}

/// A digitally singular `n`-simplex, stored as the indices of its values at `e_0, ..., e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularSimplex {
    image: Arc<DigitalImage>,
    values: Vec<usize>,
}

impl SingularSimplex {
    /// Checks the pairwise equal-or-adjacent condition.
    pub fn new(image: Arc<DigitalImage>, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ShapeMismatch("a simplex needs at least one value".into()));
        }
        if let Some(bad) = values.iter().find(|&&v| v >= image.len()) {
            return Err(Error::IndexOutOfRange {
                index: *bad as i64,
                range: format!("0..{}", image.len()),
            });
        }
        if !is_singular(&image, &values) {
            return Err(Error::NotContinuous);
        }
        Ok(SingularSimplex { image, values })
    }

    pub fn from_points(image: Arc<DigitalImage>, points: &[LatticePoint]) -> Result<Self> {
        let values = points
            .iter()
            .map(|p| image.require(p))
            .collect::<Result<Vec<_>>>()?;
        SingularSimplex::new(image, values)
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        self.values.iter().map(|&v| self.image.point(v).clone()).collect()
    }

    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        (1..self.values.len()).any(|i| self.values[..i].contains(&self.values[i]))
    }
}

pub(crate) fn is_singular(image: &DigitalImage, values: &[usize]) -> bool {
    values.iter().enumerate().all(|(i, &a)| {
        values[i + 1..]
            .iter()
            .all(|&b| image.equal_or_adjacent(a, b))
    })
}

/// `sigma . epsilon_i`: the face obtained by deleting the value at position `i`.
pub fn apply_face(sigma: &SingularSimplex, i: usize) -> Result<SingularSimplex> {
    let n = sigma.dim();
    if n == 0 || i > n {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            range: format!("0..={n} with n >= 1"),
        });
    }
    let mut values = sigma.values.clone();
    values.remove(i);
    Ok(SingularSimplex {
        image: sigma.image.clone(),
        values,
    })
}

/// The singular `n`-simplexes of an image in lexicographic order of their
/// index tuples, stored flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexBasis {
    n: usize,
    flat: Vec<usize>,
}

impl SimplexBasis {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.flat.len() / (self.n + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn get(&self, k: usize) -> &[usize] {
        let w = self.n + 1;
        &self.flat[k * w..(k + 1) * w]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.flat.chunks_exact(self.n + 1)
    }

    /// Position of a value tuple in the basis.
    pub fn position(&self, values: &[usize]) -> Option<usize> {
        if values.len() != self.n + 1 {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(values) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Backtracking enumeration of all singular `n`-simplexes, pruned by adjacency.
pub fn singular_basis(image: &DigitalImage, n: usize) -> SimplexBasis {
    let mut flat = Vec::new();
    let mut current = Vec::with_capacity(n + 1);
    // candidates for position > 0 are the closed neighbourhood of the first value
    let closed: Vec<Vec<usize>> = (0..image.len())
        .map(|y| {
            let mut list = image.neighbor_indices(y).to_vec();
            list.push(y);
            list.sort_unstable();
            list
        })
        .collect();
    fn extend(
        image: &DigitalImage,
        closed: &[Vec<usize>],
        n: usize,
        current: &mut Vec<usize>,
        flat: &mut Vec<usize>,
    ) {
        if current.len() == n + 1 {
            flat.extend_from_slice(current);
            return;
        }
        let candidates: &[usize] = match current.first() {
            None => &[],
            Some(&first) => &closed[first],
        };
        if current.is_empty() {
            for v in 0..image.len() {
                current.push(v);
                extend(image, closed, n, current, flat);
                current.pop();
            }
            return;
        }
        for &v in candidates {
            if current[1..].iter().all(|&w| image.equal_or_adjacent(w, v)) {
                current.push(v);
                extend(image, closed, n, current, flat);
                current.pop();
            }
        }
    }
    extend(image, &closed, n, &mut current, &mut flat);
    SimplexBasis { n, flat }
}

/// All singular `n`-simplexes of `image`, in canonical order.
pub fn enumerate_singular(image: &Arc<DigitalImage>, n: usize) -> Vec<SingularSimplex> {
    singular_basis(image, n)
        .iter()
        .map(|values| SingularSimplex {
            image: image.clone(),
            values: values.to_vec(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn image(u: usize, n: usize, list: &[&[i64]]) -> Arc<DigitalImage> {
        Arc::new(
            DigitalImage::new(
                AdjacencySpec::new(u, n).unwrap(),
                list.iter().map(|c| LatticePoint::from(*c)),
            )
            .unwrap(),
        )
    }

    fn square(u: usize) -> Arc<DigitalImage> {
        image(u, 2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])
    }

    #[test]
    fn standard_simplex_is_complete() {
        for n in 0..=5 {
            let delta = StandardSimplex::new(n).image();
            assert_eq!(delta.len(), n + 1);
            assert_eq!(delta.edge_count(), n * (n + 1) / 2);
            for v in delta.points() {
                assert_eq!(v.coords().iter().filter(|&&c| c == 1).count(), 1);
                assert_eq!(v.coords().iter().sum::<i64>(), 1);
            }
        }
    }

    #[test]
    fn face_functions_of_the_2_simplex() {
        assert_eq!(face_vertex_map(0, 2).unwrap(), vec![1, 2]);
        assert_eq!(face_vertex_map(1, 2).unwrap(), vec![0, 2]);
        assert_eq!(face_vertex_map(2, 2).unwrap(), vec![0, 1]);
        assert_eq!(face_vertex_map(0, 1).unwrap(), vec![1]);
        assert!(face_vertex_map(3, 2).is_err());
        assert!(face_vertex_map(0, 0).is_err());
    }

    #[test]
    fn vertex_and_barycentric_forms_agree() {
        for n in 1..=5 {
            for i in 0..=n {
                let map = face_vertex_map(i, n).unwrap();
                for j in 0..n {
                    let mut t = vec![0u8; n];
                    t[j] = 1;
                    let image = face_barycentric(i, &t).unwrap();
                    assert_eq!(image.iter().position(|&c| c == 1), Some(map[j]));
                }
            }
        }
    }

    #[test]
    fn face_examples() {
        let x = image(1, 1, &[&[0], &[1]]);
        let s = SingularSimplex::new(x.clone(), vec![0, 1]).unwrap();
        assert_eq!(apply_face(&s, 0).unwrap().values(), &[1]);
        assert_eq!(apply_face(&s, 1).unwrap().values(), &[0]);
        assert!(apply_face(&s, 2).is_err());
        let point = SingularSimplex::new(x.clone(), vec![0]).unwrap();
        assert!(apply_face(&point, 0).is_err());
        let constant = SingularSimplex::new(x, vec![1; 4]).unwrap();
        assert_eq!(apply_face(&constant, 2).unwrap().values(), &[1, 1, 1]);
    }

    #[test]
    fn enumeration_counts() {
        let one = image(1, 2, &[&[4, 4]]);
        for n in 0..=4 {
            assert_eq!(enumerate_singular(&one, n).len(), 1);
        }
        let edge = image(1, 1, &[&[0], &[1]]);
        let tuples: Vec<Vec<usize>> = enumerate_singular(&edge, 1)
            .into_iter()
            .map(|s| s.values().to_vec())
            .collect();
        assert_eq!(tuples, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        // frozen after the filter-all-tuples oracle below
        assert_eq!(enumerate_singular(&square(1), 1).len(), 12);
        assert_eq!(enumerate_singular(&square(1), 2).len(), 28);
        let empty = Arc::new(DigitalImage::empty(AdjacencySpec::new(1, 2).unwrap()));
        assert!(enumerate_singular(&empty, 2).is_empty());
    }

    #[test]
    fn complete_images_have_all_tuples() {
        let sq = square(2);
        for n in 0..=3 {
            assert_eq!(enumerate_singular(&sq, n).len(), 4usize.pow(n as u32 + 1));
        }
    }

    #[test]
    fn non_singular_tuples_are_rejected() {
        let sq = square(1);
        let a = sq.index_of(&LatticePoint::from([0, 0])).unwrap();
        let c = sq.index_of(&LatticePoint::from([1, 1])).unwrap();
        assert_eq!(SingularSimplex::new(sq, vec![a, c]), Err(Error::NotContinuous));
    }

    #[test]
    fn basis_positions() {
        let sq = square(1);
        let basis = singular_basis(&sq, 2);
        for (k, values) in basis.iter().enumerate() {
            assert_eq!(basis.position(values), Some(k));
        }
        assert_eq!(basis.position(&[0, 3]), None);
    }
}
