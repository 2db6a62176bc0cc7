//! Digital homology groups, generators, and induced maps.
//!
//! `H_n = Z_n / B_n` is read off two Smith normal forms. The rank of `d_n`
//! gives the cycle rank, and the invariant factors of `d_(n+1)` give the
//! boundary lattice inside it, so
//! `betti = |S_n| - rank d_n - rank d_(n+1)` and the torsion is the list of
//! factors of `d_(n+1)` above one.
//!
//! In dimension zero every singular 1-simplex `(x, y)` has boundary `y - x`.
//! Two points therefore have the same class exactly when a chain of adjacent
//! points joins them, and `H_0` is free on the components.
//!
//! Generators come from the change-of-basis matrices. With `U d_n V = D`
//! and `r = rank d_n`, the columns of `V` from `r` on are a basis `K` of the
//! cycles. The boundaries have coordinates `C` in that basis, the rows of
//! `V^-1 d_(n+1)` from `r` on. A second reduction `U_C C V_C = D_C` turns
//! `K U_C^-1` into a basis in which the boundaries are `d_i e_i`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chains::{push_chain, Chain, ChainComplex, DEFAULT_MAX_CHAIN_DIM};
use crate::error::{Error, Result};
use crate::homotopy::{is_homotopy_valid, Homotopy};
use crate::image::{digital_interval, DigitalImage};
use crate::maps::{compose, inclusion, is_continuous, verify_homeomorphism, DigitalMap};
use crate::matrix::IntegerMatrix;
use crate::product::{cartesian_product, psi};
use crate::simplicial::SimplexBasis;
use crate::snf::{smith_normal_form, smith_normal_form_with_transforms};

/// `Z^betti (+) Z/t_1 (+) ... (+) Z/t_k` with `t_1 | ... | t_k`, all `t_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        HomologyGroup {
            betti: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Number of generators, `betti + |torsion|`.
    pub fn rank(&self) -> usize {
        self.betti + self.torsion.len()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

/// Equality of canonical forms, which is isomorphism.
pub fn groups_isomorphic(g: &HomologyGroup, h: &HomologyGroup) -> bool {
    g == h
}

/// Largest dimension for which homology is available under a chain-dimension cap.
pub fn max_homology_dim(max_chain_dim: usize) -> usize {
    max_chain_dim.saturating_sub(1)
}

fn check_dim(n: usize, max_chain_dim: usize) -> Result<()> {
    if n + 1 > max_chain_dim {
        return Err(Error::DimensionTooLarge {
            requested: n,
            max: max_homology_dim(max_chain_dim),
        });
    }
    Ok(())
}

/// `H_n` from a complex whose bases reach dimension `n + 1`.
pub fn homology_in(complex: &ChainComplex, n: usize) -> Result<HomologyGroup> {
    check_dim(n, complex.max_dim())?;
    let size = complex.basis(n)?.len();
    let rank_in = if n == 0 {
        0
    } else {
        smith_normal_form(complex.boundary(n)?).rank
    };
    let out = smith_normal_form(complex.boundary(n + 1)?);
    Ok(HomologyGroup {
        betti: size - rank_in - out.rank,
        torsion: out.torsion(),
    })
}

/// `H_n(X)` for `n <= 3`.
pub fn homology(image: &Arc<DigitalImage>, n: usize) -> Result<HomologyGroup> {
    check_dim(n, DEFAULT_MAX_CHAIN_DIM)?;
    homology_in(&ChainComplex::with_max_dim(image.clone(), n + 1), n)
}

/// A cycle standing for one generator of `H_n`; `order` is `None` for a free generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClassRep {
    pub cycle: Chain,
    pub order: Option<BigInt>,
}

/// Generators of `H_n(X)` together with the data needed to find the class of any cycle.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    image: Arc<DigitalImage>,
    n: usize,
    group: HomologyGroup,
    generators: Vec<HomologyClassRep>,
    basis: SimplexBasis,
    v_inv: IntegerMatrix,
    cycle_rank_offset: usize,
    u_c: IntegerMatrix,
    // (row of U_C y, order) for each generator
    slots: Vec<(usize, Option<BigInt>)>,
}

impl HomologyBasis {
    pub fn new(complex: &ChainComplex, n: usize) -> Result<Self> {
        check_dim(n, complex.max_dim())?;
        let image = complex.image().clone();
        let basis = complex.basis(n)?.clone();
        let size = basis.len();
        let mut b = smith_normal_form_with_transforms(complex.boundary(n)?);
        let t = b.transforms.take().expect("transforms requested");
        let r = b.rank;
        let kernel_cols: Vec<Vec<(usize, BigInt)>> = t.v.columns()[r..].to_vec();
        let kernel = IntegerMatrix::from_columns(size, kernel_cols)?;
        let projected = t.v_inv.mul(complex.boundary(n + 1)?)?;
        let c_cols: Vec<Vec<(usize, BigInt)>> = projected
            .columns()
            .iter()
            .map(|col| {
                debug_assert!(col.iter().all(|(i, _)| *i >= r), "d_n d_(n+1) = 0");
                col.iter().filter(|(i, _)| *i >= r).map(|(i, x)| (i - r, x.clone())).collect()
            })
            .collect();
        let c = IntegerMatrix::from_columns(size - r, c_cols)?;
        let mut sc = smith_normal_form_with_transforms(&c);
        let tc = sc.transforms.take().expect("transforms requested");
        let gens = kernel.mul(&tc.u_inv)?;
        let mut slots = Vec::new();
        for i in sc.rank..size - r {
            slots.push((i, None));
        }
        for (i, d) in sc.invariant_factors.iter().enumerate() {
            if !d.is_one() {
                slots.push((i, Some(d.clone())));
            }
        }
        let generators = slots
            .iter()
            .map(|(i, order)| {
                let coeffs: Vec<BigInt> = (0..size).map(|k| gens.get(k, *i)).collect();
                Ok(HomologyClassRep {
                    cycle: Chain::from_coordinates(image.clone(), &basis, &coeffs)?,
                    order: order.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let group = HomologyGroup {
            betti: size - r - sc.rank,
            torsion: sc.torsion(),
        };
        Ok(HomologyBasis {
            image,
            n,
            group,
            generators,
            basis,
            v_inv: t.v_inv,
            cycle_rank_offset: r,
            u_c: tc.u,
            slots,
        })
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &HomologyGroup {
        &self.group
    }

    pub fn generators(&self) -> &[HomologyClassRep] {
        &self.generators
    }

    /// Coordinates of the class of `z` on the generators; torsion coordinates are reduced
    /// into `0..order`.
    pub fn class_of(&self, z: &Chain) -> Result<Vec<BigInt>> {
        if z.image() != &self.image || z.dim() != self.n {
            return Err(Error::ShapeMismatch("chain is not in this chain group".into()));
        }
        if !z.boundary().is_zero() {
            return Err(Error::ShapeMismatch("chain is not a cycle".into()));
        }
        let x = z.coordinates(&self.basis)?;
        let w = self.v_inv.apply(&x)?;
        let y = self.u_c.apply(&w[self.cycle_rank_offset..])?;
        Ok(self
            .slots
            .iter()
            .map(|(i, order)| match order {
                Some(d) => y[*i].mod_floor(d),
                None => y[*i].clone(),
            })
            .collect())
    }

    /// Reduces torsion rows of a matrix whose rows are indexed by these generators.
    pub fn reduce_rows(&self, m: &IntegerMatrix) -> Result<IntegerMatrix> {
        if m.rows() != self.slots.len() {
            return Err(Error::DimensionMismatch {
                expected: self.slots.len(),
                found: m.rows(),
            });
        }
        let columns = m
            .columns()
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(i, x)| match &self.slots[*i].1 {
                        Some(d) => (*i, x.mod_floor(d)),
                        None => (*i, x.clone()),
                    })
                    .collect()
            })
            .collect();
        IntegerMatrix::from_columns(m.rows(), columns)
    }
}

/// Cycle representatives generating `H_n(X)`: free generators first, then torsion.
pub fn homology_generators(image: &Arc<DigitalImage>, n: usize) -> Result<Vec<HomologyClassRep>> {
    check_dim(n, DEFAULT_MAX_CHAIN_DIM)?;
    let complex = ChainComplex::with_max_dim(image.clone(), n + 1);
    Ok(HomologyBasis::new(&complex, n)?.generators)
}

/// The matrix of `f_*` on the generators of two homology bases.
pub fn induced_homology_map_between(f: &DigitalMap, from: &HomologyBasis, to: &HomologyBasis) -> Result<IntegerMatrix> {
    if from.image() != f.domain() || to.image() != f.codomain() || from.dim() != to.dim() {
        return Err(Error::ShapeMismatch("homology bases do not match the map".into()));
    }
    if !is_continuous(f) {
        return Err(Error::NotContinuous);
    }
    let columns = from
        .generators()
        .iter()
        .map(|g| {
            let coords = to.class_of(&push_chain(f, &g.cycle)?)?;
            Ok(coords
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    IntegerMatrix::from_columns(to.generators().len(), columns)
}

fn basis_of(image: &Arc<DigitalImage>, n: usize) -> Result<HomologyBasis> {
    check_dim(n, DEFAULT_MAX_CHAIN_DIM)?;
    HomologyBasis::new(&ChainComplex::with_max_dim(image.clone(), n + 1), n)
}

/// The matrix of `f_*: H_n(X) -> H_n(Y)` on the generators of [`homology_generators`].
pub fn induced_homology_map(f: &DigitalMap, n: usize) -> Result<IntegerMatrix> {
    if !is_continuous(f) {
        return Err(Error::NotContinuous);
    }
    induced_homology_map_between(f, &basis_of(f.domain(), n)?, &basis_of(f.codomain(), n)?)
}

/// `(g . f)_* = g_* f_*` and `id_* = id` in dimension `n`.
pub fn verify_functoriality(f: &DigitalMap, g: &DigitalMap, n: usize) -> Result<bool> {
    let gf = compose(g, f)?;
    let x = basis_of(f.domain(), n)?;
    let y = basis_of(f.codomain(), n)?;
    let z = basis_of(g.codomain(), n)?;
    let f_star = induced_homology_map_between(f, &x, &y)?;
    let g_star = induced_homology_map_between(g, &y, &z)?;
    let gf_star = induced_homology_map_between(&gf, &x, &z)?;
    let product = z.reduce_rows(&g_star.mul(&f_star)?)?;
    let id_star = induced_homology_map_between(&DigitalMap::identity(f.domain().clone()), &x, &x)?;
    Ok(product == gf_star && id_star.is_identity())
}

/// Outcome of the cartesian-product homotopy check. The conclusion is only
/// implied when the hypothesis holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiReport {
    pub dim: usize,
    pub m: usize,
    /// `(psi_0)_* = (psi_m)_*` on `H_n(X) -> H_n(X x [0,m]_Z)`.
    pub hypothesis: bool,
    /// `f_* = g_*`.
    pub conclusion: bool,
}

impl PsiReport {
    /// False only if the hypothesis holds and the conclusion fails.
    pub fn consistent(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

impl fmt::Display for PsiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hyp = if self.hypothesis { "holds" } else { "fails" };
        let concl = match (self.hypothesis, self.conclusion) {
            (true, true) => "holds",
            (true, false) => "VIOLATED",
            (false, true) => "holds (not implied)",
            (false, false) => "fails (not implied)",
        };
        write!(f, "n = {}, m = {}: hypothesis {hyp}, conclusion {concl}", self.dim, self.m)
    }
}

/// Checks the product-slice criterion for a homotopy `homotopy` from `f` to `g`.
pub fn verify_psi_homotopy_theorem(f: &DigitalMap, g: &DigitalMap, homotopy: &Homotopy, n: usize) -> Result<PsiReport> {
    if !is_homotopy_valid(homotopy, f, g) {
        return Err(Error::InvalidHomotopy("not a homotopy from f to g".into()));
    }
    let m = homotopy.len();
    let x = f.domain();
    let interval = digital_interval(0, m as i64)?;
    let product = Arc::new(cartesian_product(x, &interval)?);
    let bx = basis_of(x, n)?;
    let bp = basis_of(&product, n)?;
    let psi0 = psi(x, &interval, 0)?;
    let psim = psi(x, &interval, m as i64)?;
    let hypothesis = induced_homology_map_between(&psi0, &bx, &bp)? == induced_homology_map_between(&psim, &bx, &bp)?;
    let by = basis_of(f.codomain(), n)?;
    let conclusion = induced_homology_map_between(f, &bx, &by)? == induced_homology_map_between(g, &bx, &by)?;
    Ok(PsiReport {
        dim: n,
        m,
        hypothesis,
        conclusion,
    })
}

/// The inclusion `A -> X` is injective on `n`-chains: its matrix has distinct unit columns.
pub fn verify_inclusion_mono(a: &Arc<DigitalImage>, x: &Arc<DigitalImage>, n: usize) -> Result<bool> {
    let i = inclusion(a.clone(), x.clone())?;
    let m = crate::chains::induced_chain_map(&i, n)?;
    let mut rows: Vec<usize> = Vec::with_capacity(m.cols());
    for column in m.columns() {
        match column.as_slice() {
            [(r, v)] if v.is_one() => rows.push(*r),
            _ => return Ok(false),
        }
    }
    let count = rows.len();
    rows.sort_unstable();
    rows.dedup();
    Ok(rows.len() == count)
}

/// For a homeomorphism `f` with inverse `g`: the groups agree in dimensions `0..=max_n` and
/// `f_*`, `g_*` are mutually inverse there.
pub fn verify_homeomorphism_invariance(f: &DigitalMap, g: &DigitalMap, max_n: usize) -> Result<bool> {
    if !verify_homeomorphism(f, g)? {
        return Ok(false);
    }
    for n in 0..=max_n {
        let x = basis_of(f.domain(), n)?;
        let y = basis_of(f.codomain(), n)?;
        if !groups_isomorphic(x.group(), y.group()) {
            return Ok(false);
        }
        let f_star = induced_homology_map_between(f, &x, &y)?;
        let g_star = induced_homology_map_between(g, &y, &x)?;
        let gf = x.reduce_rows(&g_star.mul(&f_star)?)?;
        let fg = y.reduce_rows(&f_star.mul(&g_star)?)?;
        if !gf.is_identity() || !fg.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}
