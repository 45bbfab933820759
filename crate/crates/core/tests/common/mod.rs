#![allow(dead_code)]

pub mod chain;
pub mod props;

use std::sync::Arc;

use twalex_core::groups::{abelianization, presentation_from_braid, Presentation};
use twalex_core::reps::{AbelMap, MatRep, TensorRep};
use twalex_core::scalars::parse::{parse_cyclo, parse_ratfunc};
use twalex_core::scalars::{CycloField, CycloNum, Lattice, Matrix};
use twalex_core::torsion::{equal_up_to_unit, wada_torsion, TorsionValue, UnitGroup};

pub fn field(n: u64) -> Arc<CycloField> {
    CycloField::new(n).unwrap()
}

pub fn unknot() -> Presentation {
    presentation_from_braid(&[], 1).unwrap()
}

pub fn trefoil() -> Presentation {
    presentation_from_braid(&[1, 1, 1], 2).unwrap()
}

pub fn figure_eight() -> Presentation {
    presentation_from_braid(&[1, -2, 1, -2], 3).unwrap()
}

pub fn hopf() -> Presentation {
    presentation_from_braid(&[1, 1], 2).unwrap()
}

pub fn default_phi(p: &Presentation) -> AbelMap {
    AbelMap::from_abelianization(&abelianization(p).unwrap())
}

pub fn torsion(p: &Presentation, phi: &AbelMap, rho: &MatRep) -> TorsionValue {
    wada_torsion(p, &TensorRep::new(phi, rho).unwrap()).unwrap()
}

pub fn untwisted(p: &Presentation) -> TorsionValue {
    let f = field(1);
    torsion(p, &default_phi(p), &MatRep::trivial(&f, p.num_generators()))
}

/// A torsion value read from text, with the full unit group in `n` variables.
pub fn expected(text: &str, n: usize, conductor: u64) -> TorsionValue {
    let f = field(conductor);
    TorsionValue::new(
        parse_ratfunc(text, Some(&f), n).unwrap(),
        UnitGroup::new(conductor, Lattice::full(n)),
    )
    .unwrap()
}

pub fn same_up_to_unit(a: &TorsionValue, b: &TorsionValue) -> bool {
    equal_up_to_unit(a, b).unwrap().is_some()
}

pub fn cyclo_matrix(f: &Arc<CycloField>, rows: &[&[&str]]) -> Matrix<CycloNum> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| parse_cyclo(s, Some(f)).unwrap()).collect())
            .collect(),
    )
}

/// The integral `SL(2)` rep `a -> [[1,1],[0,1]]`, `b -> [[1,0],[-1,1]]`.
pub fn braid_rep(f: &Arc<CycloField>) -> MatRep {
    MatRep::new(
        f,
        vec![
            cyclo_matrix(f, &[&["1", "1"], &["0", "1"]]),
            cyclo_matrix(f, &[&["1", "0"], &["-1", "1"]]),
        ],
    )
    .unwrap()
}

/// Every generator sent to the same scalar `z^k` of `Q(zeta_n)`.
pub fn scalar_rep(f: &Arc<CycloField>, gens: usize, exps: &[i64]) -> MatRep {
    let images = (0..gens)
        .map(|j| {
            let z = CycloNum::zeta_pow(f, exps[j % exps.len()]);
            Matrix::from_rows(vec![vec![z]])
        })
        .collect();
    MatRep::new(f, images).unwrap()
}
