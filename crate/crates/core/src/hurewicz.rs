//! The loop-to-simplex assignment `h` and the four-point counterexample.
//!
//! `h` reads a loop `f` of length `m` through the inclusion of the first unit
//! interval and the vertex map `e_0 -> 0`, `e_1 -> 1`, so `h(f)` is the
//! singular 1-simplex `(f(0), f(1))`. Loop classes allow inserting constant
//! segments anywhere, including before the first step, so `h` depends on the
//! representative rather than on the class.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::chains::Chain;
use crate::error::{Error, Result};
use crate::homotopy::loops_equivalent;
use crate::image::DigitalImage;
use crate::lattice::{AdjacencySpec, LatticePoint};
use crate::path::{path_product, DigitalPath};

/// `h(f) = f . i . eta`, the 1-simplex `(f(0), f(1))` with coefficient one.
pub fn hurewicz_h(l: &DigitalPath) -> Result<Chain> {
    if l.len() < 2 {
        return Err(Error::InvalidPath(format!("h needs a loop of length m >= 2, got m = {}", l.len())));
    }
    if !l.is_loop() {
        return Err(Error::NotALoop("h is defined on loops".into()));
    }
    if l.len() < 3 {
        log::warn!("h applied to a loop of length {}", l.len());
    }
    let mut chain = Chain::zero(l.target().clone(), 1);
    chain.add_term(&l.values()[..2], &BigInt::one())?;
    Ok(chain)
}

/// The three verdicts of the counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurewiczReport {
    pub f: Vec<LatticePoint>,
    pub g: Vec<LatticePoint>,
    /// `e_(x0) * f` has exactly the values of `g`.
    pub product_equals_g: bool,
    /// `[f] = [g]` via a bounded loop-class search.
    pub loops_equivalent: bool,
    pub loop_bound: usize,
    pub h_f: Vec<LatticePoint>,
    pub h_g: Vec<LatticePoint>,
    /// `h(f) != h(g)`.
    pub h_differs: bool,
}

impl HurewiczReport {
    pub fn all_hold(&self) -> bool {
        self.product_equals_g && self.loops_equivalent && self.h_differs
    }
}

fn seq(points: &[LatticePoint]) -> String {
    let parts: Vec<String> = points.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

impl fmt::Display for HurewiczReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "image: 4-square, u = 1, n = 2")?;
        writeln!(out, "f = {}", seq(&self.f))?;
        writeln!(out, "g = {}", seq(&self.g))?;
        writeln!(out, "(a) e_x0 * f equals g as sequences: {}", self.product_equals_g)?;
        writeln!(out, "(b) [f] = [g] (bound {}): {}", self.loop_bound, self.loops_equivalent)?;
        writeln!(
            out,
            "(c) h(f) = {} differs from h(g) = {}: {}",
            seq(&self.h_f),
            seq(&self.h_g),
            self.h_differs
        )
    }
}

/// Builds the 4-square loops `f = x0 x1 x2 x3 x0` and `g = x0 x0 x1 x2 x3 x0` and checks
/// the three verdicts.
pub fn hurewicz_counterexample() -> Result<HurewiczReport> {
    let xs: Vec<LatticePoint> = [[0, 0], [1, 0], [1, 1], [0, 1]].into_iter().map(LatticePoint::from).collect();
    let square = Arc::new(DigitalImage::new(AdjacencySpec::new(1, 2)?, xs.clone())?);
    let f_points = vec![xs[0].clone(), xs[1].clone(), xs[2].clone(), xs[3].clone(), xs[0].clone()];
    let mut g_points = vec![xs[0].clone()];
    g_points.extend(f_points.iter().cloned());
    let f = DigitalPath::from_points(square.clone(), &f_points)?;
    let g = DigitalPath::from_points(square.clone(), &g_points)?;
    let e = DigitalPath::constant(square.clone(), &xs[0], 1)?;
    let product_equals_g = path_product(&e, &f)?.values() == g.values();
    let loop_bound = g.len();
    let equivalent = loops_equivalent(&f, &g, loop_bound)?;
    let h_f = hurewicz_h(&f)?;
    let h_g = hurewicz_h(&g)?;
    let simplex = |c: &Chain| -> Vec<LatticePoint> {
        c.terms()
            .next()
            .map(|(v, _)| v.iter().map(|&i| square.point(i).clone()).collect())
            .unwrap_or_default()
    };
    Ok(HurewiczReport {
        f: f_points,
        g: g_points,
        product_equals_g,
        loops_equivalent: equivalent,
        loop_bound,
        h_f: simplex(&h_f),
        h_g: simplex(&h_g),
        h_differs: h_f != h_g,
    })
}
