//! Torsion of based chain complexes, the presentation (Wada) torsion, and
//! comparison of torsion values up to units.

mod chain;
mod unit;
mod wada;

pub use chain::{chain_torsion, sign_exponent, BasedChainComplex};
pub use unit::{equal_up_to_unit, supported_in_lattice, TorsionValue, UnitGroup, UnitWitness};
pub use wada::{presentation_complex, wada_column, wada_torsion};
