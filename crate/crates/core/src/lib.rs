//! Exact digital topology.
//!
//! A digital image is a finite set of lattice points of `Z^n` with the
//! `k(u,n)` adjacency, under which two points are adjacent when they differ by
//! at most one in every coordinate and differ in between 1 and `u`
//! coordinates. This crate decides digital continuity and digital homotopy,
//! builds the singular chain complex whose `n`-simplexes are ordered tuples of
//! pairwise equal-or-adjacent points, and computes its integer homology with
//! torsion and induced maps.
//!
//! ```
//! use std::sync::Arc;
//! use dighom::{homology, AdjacencySpec, DigitalImage, LatticePoint};
//!
//! let square = DigitalImage::new(
//!     AdjacencySpec::new(1, 2)?,
//!     [[0, 0], [1, 0], [1, 1], [0, 1]].map(LatticePoint::from),
//! )?;
//! let square = Arc::new(square);
//! assert_eq!(homology(&square, 0)?.to_string(), "Z");
//! assert_eq!(homology(&square, 1)?.to_string(), "Z");
//! # Ok::<(), dighom::Error>(())
//! ```
//!
//! The guide in `book/` walks through each module; its code blocks are compiled
//! and run as doc-tests of this crate.

pub mod chains;
pub mod cli;
pub mod corpus;
pub mod document;
pub mod error;
pub mod homology;
pub mod homotopy;
pub mod hurewicz;
pub mod image;
pub mod lattice;
pub mod maps;
pub mod matrix;
pub mod path;
pub mod product;
pub mod simplicial;
pub mod snf;

pub use chains::{
    boundary_matrix, boundary_of_simplex, induced_chain_map, verify_chain_commutes, verify_chain_homotopy,
    verify_dd_zero, Chain, ChainComplex, DEFAULT_MAX_CHAIN_DIM,
};
pub use error::{Error, Result};
pub use homology::{
    groups_isomorphic, homology, homology_generators, induced_homology_map, verify_functoriality,
    verify_homeomorphism_invariance, verify_inclusion_mono, verify_psi_homotopy_theorem, HomologyBasis,
    HomologyClassRep, HomologyGroup, PsiReport,
};
pub use homotopy::{
    are_homotopic, are_homotopic_with_cap, are_pointed_homotopic, continuous_maps, is_homotopy_valid,
    loop_equivalence, loops_equivalent, Homotopy, LoopEquivalence, DEFAULT_STATE_CAP,
};
pub use hurewicz::{hurewicz_counterexample, hurewicz_h, HurewiczReport};
pub use image::{connected_components, digital_interval, neighbors, Adjacency, DigitalImage};
pub use lattice::{adjacent, neighbor_count, AdjacencySpec, LatticePoint};
pub use maps::{compose, is_continuous, is_continuous_by_subsets, translation, verify_homeomorphism, DigitalMap};
pub use matrix::IntegerMatrix;
pub use path::{is_trivial_extension, path_product, trivial_extensions, DigitalPath};
pub use product::{cartesian_product, psi};
pub use simplicial::{apply_face, enumerate_singular, face_vertex_map, SingularSimplex, StandardSimplex};
pub use snf::{smith_normal_form, smith_normal_form_with_transforms, SmithDecomposition};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/adjacency.md")]
    mod adjacency {}
    #[doc = include_str!("../../../book/src/continuity.md")]
    mod continuity {}
    #[doc = include_str!("../../../book/src/loops.md")]
    mod loops {}
    #[doc = include_str!("../../../book/src/simplexes.md")]
    mod simplexes {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
