//! Exact arithmetic tower: rationals, the cyclotomic field Q(zeta_N),
//! multivariate Laurent polynomials over it and their fractions, plus the
//! dense linear algebra used by the torsion engines.

pub mod cyclo;
pub mod det;
pub mod laurent;
pub mod matrix;
pub mod parse;
pub mod ratfunc;
pub mod rational;
pub mod snf;

use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use cyclo::{cyclo_embed_root_of_unity, CycloField, CycloNum};
pub use det::{det_field, det_fraction_free, inverse, pivot_columns, rank};
pub use laurent::{LaurentPoly, Monomial};
pub use matrix::Matrix;
pub use ratfunc::{ratfunc_equal, RatFunc};
pub use rational::Rational;
pub use snf::{hermite_normal_form, smith_normal_form, IntMatrix, Lattice, Snf};

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for Rational {}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}
