//! Cartesian products `X x [0,m]_Z` and the slice inclusions `psi_i`.
//!
//! The product adjacency joins `(x1, t1)` and `(x2, t2)` when either
//! `x1 ~ x2` and `t1 = t2`, or `x1 = x2` and `|t1 - t2| = 1`. This is not a
//! `k(u,n)` relation in general, so products are explicit-edge images whose
//! points are `x` with `t` appended as a last coordinate.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy::Homotopy;
use crate::image::{Adjacency, DigitalImage};
use crate::lattice::LatticePoint;
use crate::maps::DigitalMap;

/// Endpoints `(a, b)` of a digital interval image, or an error if `interval` is not one.
fn interval_bounds(interval: &DigitalImage) -> Result<(i64, i64)> {
    let is_line = matches!(interval.adjacency(), Adjacency::Lattice(s) if s.n() == 1 && s.u() == 1);
    if !is_line || interval.len() < 2 {
        return Err(Error::ShapeMismatch("second factor must be a digital interval".into()));
    }
    let a = interval.point(0).coords()[0];
    let b = interval.point(interval.len() - 1).coords()[0];
    if (b - a + 1) as usize != interval.len() {
        return Err(Error::ShapeMismatch("second factor has gaps".into()));
    }
    Ok((a, b))
}

/// The cartesian product graph `X x [a,b]_Z`.
pub fn cartesian_product(image: &DigitalImage, interval: &DigitalImage) -> Result<DigitalImage> {
    let (a, b) = interval_bounds(interval)?;
    let points: Vec<LatticePoint> = image
        .points()
        .iter()
        .flat_map(|p| (a..=b).map(move |t| p.extended(t)))
        .collect();
    let mut edges = Vec::new();
    for (i, j) in image.edges() {
        for t in a..=b {
            edges.push((image.point(i).extended(t), image.point(j).extended(t)));
        }
    }
    for p in image.points() {
        for t in a..b {
            edges.push((p.extended(t), p.extended(t + 1)));
        }
    }
    DigitalImage::with_edges(image.dim() + 1, points, edges)
}

/// The slice inclusion `x -> (x, i)` into `X x [0,m]_Z`, for `i` an endpoint of the interval.
pub fn psi(image: &Arc<DigitalImage>, interval: &DigitalImage, i: i64) -> Result<DigitalMap> {
    let (a, b) = interval_bounds(interval)?;
    if i != a && i != b {
        return Err(Error::IndexOutOfRange {
            index: i,
            range: format!("{{{a}, {b}}}"),
        });
    }
    let product = Arc::new(cartesian_product(image, interval)?);
    DigitalMap::from_fn(image.clone(), product, |p| p.extended(i))
}

/// The projection `(x, t) -> x` from a product built by [`cartesian_product`].
pub fn projection(product: &Arc<DigitalImage>, image: &Arc<DigitalImage>) -> Result<DigitalMap> {
    if product.dim() != image.dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: image.dim() + 1,
            found: product.dim(),
        });
    }
    let table = product
        .points()
        .iter()
        .map(|p| {
            let coords = &p.coords()[..image.dim()];
            image.require(&LatticePoint::from(coords))
        })
        .collect::<Result<Vec<_>>>()?;
    DigitalMap::from_indices(product.clone(), image.clone(), table)
}

/// A homotopy viewed as a single map `F: X x [0,m]_Z -> Y` on the product image.
pub fn homotopy_as_map(homotopy: &Homotopy) -> Result<DigitalMap> {
    let source = homotopy.source();
    let interval = crate::image::digital_interval(0, homotopy.len() as i64)?;
    let product = Arc::new(cartesian_product(source, &interval)?);
    let frames = homotopy.frames();
    let table = product
        .points()
        .iter()
        .map(|p| {
            let (x, t) = p.coords().split_at(source.dim());
            let i = source.require(&LatticePoint::from(x))?;
            Ok(frames[t[0] as usize].at(i))
        })
        .collect::<Result<Vec<_>>>()?;
    DigitalMap::from_indices(product, homotopy.target().clone(), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::digital_interval;
    use crate::lattice::AdjacencySpec;
    use crate::maps::{compose, is_continuous};

    fn line(points: &[i64]) -> Arc<DigitalImage> {
        Arc::new(
            DigitalImage::new(
                AdjacencySpec::new(1, 1).unwrap(),
                points.iter().map(|&z| LatticePoint::from([z])),
            )
            .unwrap(),
        )
    }

    #[test]
    fn point_times_edge_is_an_edge() {
        let p = cartesian_product(&line(&[7]), &digital_interval(0, 1).unwrap()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.edge_count(), 1);
    }

    #[test]
    fn edge_times_edge_is_a_four_cycle() {
        let p = cartesian_product(&line(&[0, 1]), &digital_interval(0, 1).unwrap()).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.edge_count(), 4);
        assert!((0..4).all(|i| p.neighbor_indices(i).len() == 2));
    }

    #[test]
    fn product_adjacency_is_not_diagonal() {
        // (0,0) and (1,1) differ in both factors, never adjacent in the product
        let p = cartesian_product(&line(&[0, 1]), &digital_interval(0, 1).unwrap()).unwrap();
        let a = p.index_of(&LatticePoint::from([0, 0])).unwrap();
        let b = p.index_of(&LatticePoint::from([1, 1])).unwrap();
        assert!(!p.is_adjacent(a, b));
    }

    #[test]
    fn psi_slices() {
        let x = line(&[0, 1, 2]);
        let interval = digital_interval(0, 2).unwrap();
        let psi0 = psi(&x, &interval, 0).unwrap();
        let psi2 = psi(&x, &interval, 2).unwrap();
        assert!(is_continuous(&psi0) && is_continuous(&psi2));
        let back = projection(psi0.codomain(), &x).unwrap();
        assert_eq!(compose(&back, &psi0).unwrap(), DigitalMap::identity(x.clone()));
        assert!(psi0.table().iter().all(|v| !psi2.table().contains(v)));
        assert!(matches!(psi(&x, &interval, 1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn rejects_non_interval_factor() {
        assert!(cartesian_product(&line(&[0]), &line(&[0, 2])).is_err());
    }
}
