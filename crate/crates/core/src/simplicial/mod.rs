//! Finite-type truncated simplicial sets.
//!
//! An [`SSetFT`] stores only nondegenerate simplices and their faces in
//! Eilenberg–Zilber normal form ([`DegSimplex`]); everything else is derived.
//! [`Levelwise`] is the explicit table form used for constructions that are
//! easier to describe dimensionwise, such as diagonals of bisimplicial sets.

mod bisimplicial;
mod chains;
mod iso;
mod ops;
mod sset;
mod surj;
mod tables;

pub use bisimplicial::BisimplicialFT;
pub use chains::{normalized_chains, reduced_chains, relative_chains, ChainComplex, ChainComplexJson, SparseMatrix};
pub use iso::find_isomorphism;
pub use ops::{coproduct, product, product_with_pairs, quotient, quotient_of_coproduct, smash, wedge, SubComplex};
pub use sset::{
    circle_bouquet, from_simplicial_complex, point, simplicial_circle, simplicial_sphere, standard_simplex, DegSimplex,
    FaceJson, SSetFT, SSetJson, SimplexJson,
};
#[allow(unused_imports)]
pub(crate) use sset::{binomial, UnionFind};
pub use surj::Surj;
pub use tables::{Encoded, Levelwise};
