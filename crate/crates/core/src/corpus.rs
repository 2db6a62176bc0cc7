//! Seeded generators for test images and continuous maps.
//!
//! All output is a function of the seed alone, so CLI reports built on it are reproducible.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::image::DigitalImage;
use crate::lattice::{AdjacencySpec, LatticePoint};
use crate::maps::DigitalMap;

/// Deterministic generator of random images and maps.
#[derive(Clone, Debug)]
pub struct CorpusRng {
    rng: ChaCha8Rng,
}

impl CorpusRng {
    pub fn new(seed: u64) -> Self {
        CorpusRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A random image with `1..=max_points` points in a small box of `Z^n`, `n <= max_dim`.
    pub fn image(&mut self, max_points: usize, max_dim: usize) -> DigitalImage {
        let n = self.rng.gen_range(1..=max_dim.max(1));
        let u = self.rng.gen_range(1..=n);
        let side: i64 = match n {
            1 => 8,
            2 => 4,
            _ => 3,
        };
        let target = self.rng.gen_range(1..=max_points.max(1));
        let mut points: Vec<LatticePoint> = Vec::with_capacity(target);
        let capacity = (side as usize).pow(n as u32);
        while points.len() < target.min(capacity) {
            let p = LatticePoint::new((0..n).map(|_| self.rng.gen_range(0..side)).collect())
                .expect("n >= 1");
            if !points.contains(&p) {
                points.push(p);
            }
        }
        DigitalImage::new(AdjacencySpec::new(u, n).expect("u <= n"), points).expect("points have n coordinates")
    }

    /// A random continuous map, built by backtracking over shuffled candidate values.
    /// Returns `None` only when the codomain is empty and the domain is not.
    pub fn continuous_map(&mut self, domain: &Arc<DigitalImage>, codomain: &Arc<DigitalImage>) -> Option<DigitalMap> {
        if domain.is_empty() {
            return Some(DigitalMap::from_indices(domain.clone(), codomain.clone(), Vec::new()).expect("empty table"));
        }
        if codomain.is_empty() {
            return None;
        }
        let mut table = vec![usize::MAX; domain.len()];
        let mut options: Vec<Vec<usize>> = vec![Vec::new(); domain.len()];
        let mut x = 0;
        // options[x] holds the untried values for x; a constant map always succeeds
        options[0] = self.shuffled(codomain.len());
        loop {
            match options[x].pop() {
                None => {
                    table[x] = usize::MAX;
                    x -= 1;
                }
                Some(y) => {
                    let fits = domain
                        .neighbor_indices(x)
                        .iter()
                        .take_while(|&&w| w < x)
                        .all(|&w| codomain.equal_or_adjacent(table[w], y));
                    if !fits {
                        continue;
                    }
                    table[x] = y;
                    x += 1;
                    if x == domain.len() {
                        break;
                    }
                    options[x] = self.shuffled(codomain.len());
                }
            }
        }
        Some(DigitalMap::from_indices(domain.clone(), codomain.clone(), table).expect("values index the codomain"))
    }

    fn shuffled(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(&mut self.rng);
        v
    }

    /// A random offset with entries in `-range..=range`.
    pub fn offset(&mut self, dim: usize, range: i64) -> Vec<i64> {
        (0..dim).map(|_| self.rng.gen_range(-range..=range)).collect()
    }

    /// A random nonempty subset of the points of `image`.
    pub fn subset(&mut self, image: &DigitalImage) -> Vec<LatticePoint> {
        let mut pts: Vec<LatticePoint> = image.points().to_vec();
        pts.shuffle(&mut self.rng);
        let k = self.rng.gen_range(1..=pts.len().max(1));
        pts.truncate(k);
        pts
    }
}

/// The four points `(0,0), (1,0), (1,1), (0,1)` with `k(u,2)` adjacency.
pub fn square(u: usize) -> Result<DigitalImage> {
    DigitalImage::new(
        AdjacencySpec::new(u, 2)?,
        [[0, 0], [1, 0], [1, 1], [0, 1]].into_iter().map(LatticePoint::from),
    )
}

/// The 8-point boundary of the `3 x 3` block with 4-adjacency, a cycle of length 8.
pub fn ring8() -> Result<DigitalImage> {
    let pts = [[0, 0], [1, 0], [2, 0], [2, 1], [2, 2], [1, 2], [0, 2], [0, 1]];
    DigitalImage::new(AdjacencySpec::new(1, 2)?, pts.into_iter().map(LatticePoint::from))
}

/// A reproducible list of `count` random images.
pub fn random_images(seed: u64, count: usize, max_points: usize, max_dim: usize) -> Vec<Arc<DigitalImage>> {
    let mut rng = CorpusRng::new(seed);
    (0..count).map(|_| Arc::new(rng.image(max_points, max_dim))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::is_continuous;

    #[test]
    fn deterministic() {
        assert_eq!(random_images(7, 10, 12, 3), random_images(7, 10, 12, 3));
        assert_ne!(random_images(7, 10, 12, 3), random_images(8, 10, 12, 3));
    }

    #[test]
    fn maps_are_continuous() {
        let mut rng = CorpusRng::new(1);
        for _ in 0..50 {
            let x = Arc::new(rng.image(8, 3));
            let y = Arc::new(rng.image(8, 3));
            let f = rng.continuous_map(&x, &y).unwrap();
            assert!(is_continuous(&f));
        }
    }

    #[test]
    fn images_respect_bounds() {
        for x in random_images(3, 40, 12, 3) {
            assert!(!x.is_empty() && x.len() <= 12 && x.dim() <= 3);
        }
        assert_eq!(ring8().unwrap().edge_count(), 8);
    }
}
