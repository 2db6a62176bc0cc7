//! Singular chain groups, boundary matrices, and induced chain maps.
//!
//! Chain groups are indexed by the canonical simplex bases of
//! [`singular_basis`]: row and column `k` of every matrix here refer to the
//! `k`-th simplex in lexicographic order of its value tuple. The group in
//! dimension `-1` is zero, so `d_0` has no rows.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::image::DigitalImage;
use crate::maps::{is_continuous, DigitalMap};
use crate::matrix::IntegerMatrix;
use crate::simplicial::{is_singular, singular_basis, SimplexBasis, SingularSimplex};

/// Largest simplex dimension enumerated by default.
pub const DEFAULT_MAX_CHAIN_DIM: usize = 4;

/// A finite integer combination of singular `n`-simplexes of one image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    image: Arc<DigitalImage>,
    n: usize,
    terms: BTreeMap<Vec<usize>, BigInt>,
}

impl Chain {
    pub fn zero(image: Arc<DigitalImage>, n: usize) -> Self {
        Chain {
            image,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_simplex(sigma: &SingularSimplex) -> Self {
        let mut chain = Chain::zero(sigma.image().clone(), sigma.dim());
        chain.terms.insert(sigma.values().to_vec(), BigInt::one());
        chain
    }

    /// The chain with coordinates `coeffs` in the canonical basis.
    pub fn from_coordinates(image: Arc<DigitalImage>, basis: &SimplexBasis, coeffs: &[BigInt]) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coeffs.len(),
            });
        }
        let terms = basis
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(values, c)| (values.to_vec(), c.clone()))
            .collect();
        Ok(Chain {
            image,
            n: basis.dim(),
            terms,
        })
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Value tuples with their nonzero coefficients, in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &BigInt)> + '_ {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, values: &[usize]) -> BigInt {
        self.terms.get(values).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * sigma`, where `sigma` is given by its value tuple.
    pub fn add_term(&mut self, values: &[usize], coeff: &BigInt) -> Result<()> {
        if values.len() != self.n + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.n + 1,
                found: values.len(),
            });
        }
        if values.iter().any(|&v| v >= self.image.len()) || !is_singular(&self.image, values) {
            return Err(Error::ShapeMismatch(format!("{values:?} is not a singular simplex")));
        }
        self.add_unchecked(values, coeff);
        Ok(())
    }

    fn add_unchecked(&mut self, values: &[usize], coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(values.to_vec()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(values);
        }
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        if self.n != other.n || self.image != other.image {
            return Err(Error::ShapeMismatch("chains live in different groups".into()));
        }
        let mut out = self.clone();
        for (values, c) in &other.terms {
            out.add_unchecked(values, c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Chain {
        let mut out = Chain::zero(self.image.clone(), self.n);
        if !k.is_zero() {
            out.terms = self.terms.iter().map(|(s, c)| (s.clone(), c * k)).collect();
        }
        out
    }

    /// Coordinates in the canonical basis.
    pub fn coordinates(&self, basis: &SimplexBasis) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); basis.len()];
        for (values, c) in &self.terms {
            let k = basis
                .position(values)
                .ok_or_else(|| Error::ShapeMismatch(format!("{values:?} is not in the basis")))?;
            out[k] = c.clone();
        }
        Ok(out)
    }

    /// The boundary, extended linearly from [`boundary_of_simplex`].
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.image.clone(), self.n.saturating_sub(1));
        if self.n == 0 {
            return out;
        }
        let mut face = Vec::with_capacity(self.n);
        for (values, c) in &self.terms {
            for i in 0..=self.n {
                face.clear();
                face.extend(values.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, v)| *v));
                if i % 2 == 0 {
                    out.add_unchecked(&face, c);
                } else {
                    out.add_unchecked(&face, &-c);
                }
            }
        }
        out
    }
}

/// `sum_i (-1)^i sigma . epsilon_i`, or the zero chain for a 0-simplex.
pub fn boundary_of_simplex(sigma: &SingularSimplex) -> Chain {
    Chain::from_simplex(sigma).boundary()
}

/// Simplex bases and boundary matrices of one image, built on first use.
#[derive(Debug)]
pub struct ChainComplex {
    image: Arc<DigitalImage>,
    max_dim: usize,
    bases: Vec<OnceLock<SimplexBasis>>,
    boundaries: Vec<OnceLock<IntegerMatrix>>,
}

impl ChainComplex {
    pub fn new(image: Arc<DigitalImage>) -> Self {
        ChainComplex::with_max_dim(image, DEFAULT_MAX_CHAIN_DIM)
    }

    pub fn with_max_dim(image: Arc<DigitalImage>, max_dim: usize) -> Self {
        ChainComplex {
            image,
            max_dim,
            bases: (0..=max_dim).map(|_| OnceLock::new()).collect(),
            boundaries: (0..=max_dim).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_dim {
            return Err(Error::DimensionTooLarge {
                requested: n,
                max: self.max_dim,
            });
        }
        Ok(())
    }

    pub fn basis(&self, n: usize) -> Result<&SimplexBasis> {
        self.check(n)?;
        Ok(self.bases[n].get_or_init(|| singular_basis(&self.image, n)))
    }

    /// The matrix of `d_n`.
    pub fn boundary(&self, n: usize) -> Result<&IntegerMatrix> {
        self.check(n)?;
        if let Some(m) = self.boundaries[n].get() {
            return Ok(m);
        }
        let cols = self.basis(n)?;
        let matrix = if n == 0 {
            IntegerMatrix::zero(0, cols.len())
        } else {
            let rows = self.basis(n - 1)?;
            let mut face = Vec::with_capacity(n);
            let columns = cols
                .iter()
                .map(|values| {
                    let mut column = Vec::with_capacity(n + 1);
                    for i in 0..=n {
                        face.clear();
                        face.extend_from_slice(&values[..i]);
                        face.extend_from_slice(&values[i + 1..]);
                        let r = rows.position(&face).expect("faces of singular simplexes are singular");
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        column.push((r, BigInt::from(sign)));
                    }
                    column
                })
                .collect();
            IntegerMatrix::from_columns(rows.len(), columns).expect("rows come from the basis")
        };
        Ok(self.boundaries[n].get_or_init(|| matrix))
    }
}

/// The matrix of `d_n` over the canonical bases.
pub fn boundary_matrix(image: &Arc<DigitalImage>, n: usize) -> IntegerMatrix {
    ChainComplex::with_max_dim(image.clone(), n)
        .boundary(n)
        .expect("n is within the complex")
        .clone()
}

fn induced_on_bases(f: &DigitalMap, from: &SimplexBasis, to: &SimplexBasis) -> IntegerMatrix {
    let mut image = Vec::with_capacity(from.dim() + 1);
    let columns = from
        .iter()
        .map(|values| {
            image.clear();
            image.extend(values.iter().map(|&v| f.at(v)));
            let r = to.position(&image).expect("continuous maps send simplexes to simplexes");
            vec![(r, BigInt::one())]
        })
        .collect();
    IntegerMatrix::from_columns(to.len(), columns).expect("rows come from the basis")
}

/// The matrix of `f_#` in dimension `n` between the complexes of its domain and codomain.
pub fn induced_chain_map_between(
    f: &DigitalMap,
    source: &ChainComplex,
    target: &ChainComplex,
    n: usize,
) -> Result<IntegerMatrix> {
    if source.image() != f.domain() || target.image() != f.codomain() {
        return Err(Error::ShapeMismatch("complexes do not match the map".into()));
    }
    if !is_continuous(f) {
        return Err(Error::NotContinuous);
    }
    Ok(induced_on_bases(f, source.basis(n)?, target.basis(n)?))
}

/// The matrix of `f_#: S_n(X) -> S_n(Y)`.
pub fn induced_chain_map(f: &DigitalMap, n: usize) -> Result<IntegerMatrix> {
    let source = ChainComplex::with_max_dim(f.domain().clone(), n);
    let target = ChainComplex::with_max_dim(f.codomain().clone(), n);
    induced_chain_map_between(f, &source, &target, n)
}

/// Applies `f_#` to a chain.
pub fn push_chain(f: &DigitalMap, chain: &Chain) -> Result<Chain> {
    if chain.image() != f.domain() {
        return Err(Error::ShapeMismatch("chain is not on the domain of the map".into()));
    }
    if !is_continuous(f) {
        return Err(Error::NotContinuous);
    }
    let mut out = Chain::zero(f.codomain().clone(), chain.dim());
    for (values, c) in chain.terms() {
        let image: Vec<usize> = values.iter().map(|&v| f.at(v)).collect();
        out.add_unchecked(&image, c);
    }
    Ok(out)
}

/// `d_n . d_(n+1) = 0` as an exact matrix product.
pub fn verify_dd_zero(image: &Arc<DigitalImage>, n: usize) -> bool {
    let complex = ChainComplex::with_max_dim(image.clone(), n + 1);
    verify_dd_zero_in(&complex, n).unwrap_or(false)
}

pub fn verify_dd_zero_in(complex: &ChainComplex, n: usize) -> Result<bool> {
    let product = complex.boundary(n)?.mul(complex.boundary(n + 1)?)?;
    Ok(product.is_zero())
}

/// `f_# d_n = d'_n f_#` in dimension `n >= 1`.
pub fn verify_chain_commutes(f: &DigitalMap, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            range: "n >= 1".into(),
        });
    }
    let source = ChainComplex::with_max_dim(f.domain().clone(), n);
    let target = ChainComplex::with_max_dim(f.codomain().clone(), n);
    let upper = induced_chain_map_between(f, &source, &target, n)?;
    let lower = induced_chain_map_between(f, &source, &target, n - 1)?;
    let left = lower.mul(source.boundary(n)?)?;
    let right = target.boundary(n)?.mul(&upper)?;
    Ok(left == right)
}

/// Checks `f_# - g_# = d'_(n+1) phi_n + phi_(n-1) d_n` in dimension `n`, where
/// `phi[k]` is the matrix of `phi_k: S_k(X) -> S_(k+1)(Y)`. `phi[n-1]` is
/// not consulted when `n = 0`.
pub fn verify_chain_homotopy(phi: &[IntegerMatrix], f: &DigitalMap, g: &DigitalMap, n: usize) -> Result<bool> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(Error::ShapeMismatch("maps have different shapes".into()));
    }
    if phi.len() <= n {
        return Err(Error::ShapeMismatch(format!(
            "need phi_0..phi_{n}, got {} matrices",
            phi.len()
        )));
    }
    let source = ChainComplex::with_max_dim(f.domain().clone(), n + 1);
    let target = ChainComplex::with_max_dim(f.codomain().clone(), n + 1);
    let shape = |k: usize| -> Result<(usize, usize)> {
        Ok((target.basis(k + 1)?.len(), source.basis(k)?.len()))
    };
    let check = |k: usize| -> Result<()> {
        let (r, c) = shape(k)?;
        if phi[k].rows() != r || phi[k].cols() != c {
            return Err(Error::ShapeMismatch(format!(
                "phi_{k} should be {r}x{c}, found {}x{}",
                phi[k].rows(),
                phi[k].cols()
            )));
        }
        Ok(())
    };
    check(n)?;
    let difference = induced_chain_map_between(f, &source, &target, n)?
        .sub(&induced_chain_map_between(g, &source, &target, n)?)?;
    let mut rhs = target.boundary(n + 1)?.mul(&phi[n])?;
    if n > 0 {
        check(n - 1)?;
        rhs = rhs.add(&phi[n - 1].mul(source.boundary(n)?)?)?;
    }
    Ok(difference == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{AdjacencySpec, LatticePoint};

    fn image(u: usize, n: usize, list: &[&[i64]]) -> Arc<DigitalImage> {
        Arc::new(
            DigitalImage::new(
                AdjacencySpec::new(u, n).unwrap(),
                list.iter().map(|c| LatticePoint::from(*c)),
            )
            .unwrap(),
        )
    }

    fn chain(x: &Arc<DigitalImage>, terms: &[(&[usize], i64)]) -> Chain {
        let n = terms[0].0.len() - 1;
        let mut c = Chain::zero(x.clone(), n);
        for (values, k) in terms {
            c.add_term(values, &BigInt::from(*k)).unwrap();
        }
        c
    }

    #[test]
    fn boundary_examples() {
        let x = image(1, 1, &[&[0], &[1]]);
        let ab = SingularSimplex::new(x.clone(), vec![0, 1]).unwrap();
        assert_eq!(boundary_of_simplex(&ab), chain(&x, &[(&[1], 1), (&[0], -1)]));
        let aba = SingularSimplex::new(x.clone(), vec![0, 1, 0]).unwrap();
        assert_eq!(
            boundary_of_simplex(&aba),
            chain(&x, &[(&[1, 0], 1), (&[0, 0], -1), (&[0, 1], 1)])
        );
        let point = SingularSimplex::new(x, vec![1]).unwrap();
        assert!(boundary_of_simplex(&point).is_zero());
    }

    #[test]
    fn constant_simplexes_alternate() {
        let p = image(1, 2, &[&[3, 3]]);
        for n in 1..=5 {
            let s = SingularSimplex::new(p.clone(), vec![0; n + 1]).unwrap();
            let b = boundary_of_simplex(&s);
            if n % 2 == 1 {
                assert!(b.is_zero());
            } else {
                assert_eq!(b, chain(&p, &[(&vec![0; n], 1)]));
            }
        }
    }

    #[test]
    fn one_point_boundary_matrices() {
        let p = image(1, 1, &[&[0]]);
        assert_eq!(boundary_matrix(&p, 0), IntegerMatrix::zero(0, 1));
        assert_eq!(boundary_matrix(&p, 1), IntegerMatrix::zero(1, 1));
        assert_eq!(boundary_matrix(&p, 2), IntegerMatrix::identity(1));
    }

    #[test]
    fn edge_boundary_has_rank_one() {
        let x = image(1, 1, &[&[0], &[1]]);
        let d1 = boundary_matrix(&x, 1);
        assert_eq!((d1.rows(), d1.cols()), (2, 4));
        assert_eq!(crate::snf::smith_normal_form(&d1).rank, 1);
    }

    #[test]
    fn dd_zero_small() {
        let p = image(1, 1, &[&[0]]);
        for n in 1..=3 {
            assert!(verify_dd_zero(&p, n));
        }
        let sq = image(1, 2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        assert!(verify_dd_zero(&sq, 1));
        assert!(verify_dd_zero(&sq, 2));
    }

    #[test]
    fn induced_identity_and_constant() {
        let sq = image(1, 2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        assert!(induced_chain_map(&DigitalMap::identity(sq.clone()), 2).unwrap().is_identity());
        let p = image(1, 1, &[&[9]]);
        let c = DigitalMap::constant(sq.clone(), p.clone(), &LatticePoint::from([9])).unwrap();
        let m = induced_chain_map(&c, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 12));
        assert!(m.columns().iter().all(|col| col == &[(0, BigInt::one())]));
        assert!(verify_chain_commutes(&c, 1).unwrap());
        assert!(verify_chain_commutes(&c, 2).unwrap());
    }

    #[test]
    fn non_continuous_maps_are_rejected() {
        let line = image(1, 1, &[&[0], &[1]]);
        let far = image(1, 1, &[&[0], &[5]]);
        let f = DigitalMap::from_indices(line, far, vec![0, 1]).unwrap();
        assert_eq!(induced_chain_map(&f, 1), Err(Error::NotContinuous));
    }

    #[test]
    fn chain_homotopy_with_zero_phi() {
        let sq = image(1, 2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let id = DigitalMap::identity(sq.clone());
        let complex = ChainComplex::new(sq.clone());
        let phi: Vec<IntegerMatrix> = (0..=2)
            .map(|k| IntegerMatrix::zero(complex.basis(k + 1).unwrap().len(), complex.basis(k).unwrap().len()))
            .collect();
        for n in 0..=2 {
            assert!(verify_chain_homotopy(&phi, &id, &id, n).unwrap());
        }
        let c = DigitalMap::constant(sq.clone(), sq.clone(), &LatticePoint::from([0, 0])).unwrap();
        assert!(!verify_chain_homotopy(&phi, &id, &c, 0).unwrap());
        assert!(verify_chain_homotopy(&phi[..1], &id, &id, 1).is_err());
    }

    #[test]
    fn chain_boundary_matches_matrix() {
        let sq = image(2, 2, &[&[0, 0], &[1, 0], &[1, 1]]);
        let complex = ChainComplex::new(sq.clone());
        let basis = complex.basis(2).unwrap();
        let coeffs: Vec<BigInt> = (0..basis.len()).map(|k| BigInt::from(k as i64 % 5 - 2)).collect();
        let z = Chain::from_coordinates(sq.clone(), basis, &coeffs).unwrap();
        let via_matrix = complex.boundary(2).unwrap().apply(&coeffs).unwrap();
        assert_eq!(z.boundary().coordinates(complex.basis(1).unwrap()).unwrap(), via_matrix);
    }
}
