//! Reduced universal monoids of (simplicial) action categories, their
//! classifying spaces, and exact integer homology for checking cofiber
//! statements on small instances.
//!
//! The modules build on each other bottom-up:
//!
//! * [`presentations`]: words, oriented rewrite systems, finite monoids.
//! * [`simplicial`]: finite-type simplicial sets, bisimplicial diagonals,
//!   normalized chains.
//! * [`categories`]: finite categories, nerves, universal monoids.
//! * [`actions`]: monoid actions, action categories, `J^M[X]` and tensor
//!   products, Borel models.
//! * [`homology`]: Smith normal form, homology groups, word-length filtered
//!   chains of classifying spaces.

pub mod error;
pub mod int;
pub mod par;
pub mod presentations;
pub mod simplicial;
pub mod categories;
pub mod actions;
pub mod homology;

pub use error::{Error, Result};
