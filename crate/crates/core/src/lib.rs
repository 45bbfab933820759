//! Exact computation of twisted Alexander polynomials (polynomial torsions)
//! of deficiency-one presented 3-manifold groups, together with the
//! character-product formula for finite abelian covers.
//!
//! The crate is `no_std` and only needs `alloc`. Enable the `std` feature to
//! get [`std::error::Error`] integration, and `parallel` to evaluate the
//! per-character factors of a cover product on a rayon thread pool.
//!
//! Layout:
//!
//! * [`scalars`] - rationals, cyclotomic fields, Laurent polynomials,
//!   rational functions, dense matrices, determinants and integer Smith forms.
//! * [`groups`] - words, presentations, knot/link/braid ingestion,
//!   abelianization and Reidemeister-Schreier rewriting.
//! * [`fox`] - Fox free differential calculus.
//! * [`reps`] - abelian maps, matrix representations, characters and their
//!   tensor products.
//! * [`torsion`] - torsion of based chain complexes and the presentation
//!   (Wada) torsion, with comparison up to units.
//! * [`covers`] - both sides of the abelian cover product formula and the
//!   classical branched-cover corollaries.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod covers;
pub mod error;
pub mod fox;
pub mod groups;
pub mod reps;
pub mod scalars;
pub mod torsion;

pub use error::{Error, Result};
