mod common;

use common::chain;
use twalex_core::scalars::rational::int;
use twalex_core::scalars::Matrix;
use twalex_core::torsion::{chain_torsion, BasedChainComplex};

#[test]
fn acyclic_complexes_agree_with_brute_force() {
    assert_eq!(chain::run(0x7a1e, 200, true), 0);
}

#[test]
fn complexes_with_homology_agree_with_brute_force() {
    // the sign factor must actually be exercised
    assert!(chain::run(0xb0b, 100, false) > 0);
}

#[test]
fn torsion_is_inverse_under_shift_of_degree() {
    // moving a 1x1 piece up one degree inverts its contribution
    let two = Matrix::from_rows(vec![vec![int(2)]]);
    let low = BasedChainComplex::new(vec![1, 1], vec![two.clone()]).unwrap();
    let high = BasedChainComplex::new(vec![0, 1, 1], vec![Matrix::zeros(0, 1), two]).unwrap();
    let a = chain_torsion(&low).unwrap();
    let b = chain_torsion(&high).unwrap();
    assert_eq!(a * b, int(1));
}
