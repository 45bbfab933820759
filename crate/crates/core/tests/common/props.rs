//! Property checks shared between the property tests and the acceptance run.
//! Each check panics on the first counterexample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twalex_core::fox::{fox_derivative, GroupRingElem};
use twalex_core::groups::{wirtinger_from_pd, FinAbGroup, Presentation, Word};
use twalex_core::reps::{characters, MatRep, TensorRep};
use twalex_core::scalars::rational::int;
use twalex_core::scalars::{
    det_field, det_fraction_free, smith_normal_form, CycloNum, IntMatrix, LaurentPoly, Matrix,
    Monomial, RatFunc, Rational,
};
use twalex_core::torsion::{equal_up_to_unit, wada_column, wada_torsion, TorsionValue};

use super::*;

fn all_columns_agree(p: &Presentation, rep: &TensorRep) {
    let base = wada_torsion(p, rep).unwrap();
    let mut seen = 0;
    for j in 0..p.num_generators() {
        if let Some(q) = wada_column(p, rep, j).unwrap() {
            let v = TorsionValue::new(q, base.units.clone()).unwrap();
            assert!(equal_up_to_unit(&v, &base).unwrap().is_some(), "column {j}");
            seen += 1;
        }
    }
    assert!(seen >= 2, "need two usable columns to compare");
}

pub fn wada_column_independence() {
    let f = field(3);
    for p in [trefoil(), figure_eight(), hopf()] {
        let phi = default_phi(&p);
        all_columns_agree(&p, &TensorRep::new(&phi, &MatRep::trivial(&f, p.num_generators())).unwrap());
        let rho = scalar_rep(&f, p.num_generators(), &[1]);
        all_columns_agree(&p, &TensorRep::new(&phi, &rho).unwrap());
    }
    let p = trefoil();
    all_columns_agree(&p, &TensorRep::new(&default_phi(&p), &braid_rep(&f)).unwrap());
    // a redundant Wirtinger presentation: every column is usable
    let pd = wirtinger_from_pd(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]).unwrap();
    all_columns_agree(&pd, &TensorRep::new(&default_phi(&pd), &MatRep::trivial(&f, 4)).unwrap());
}

pub fn conjugation_invariance() {
    let f = field(6);
    let p = trefoil();
    let phi = default_phi(&p);
    let rho = braid_rep(&f);
    let base = torsion(&p, &phi, &rho);
    for conj in [
        cyclo_matrix(&f, &[&["2", "1"], &["1", "1"]]),
        cyclo_matrix(&f, &[&["z", "0"], &["1", "1/3"]]),
        cyclo_matrix(&f, &[&["0", "1"], &["-1", "z^2"]]),
    ] {
        let other = rho.conjugate(&conj).unwrap();
        other.validate(&p).unwrap();
        assert_eq!(torsion(&p, &phi, &other).value, base.value);
    }
    assert!(rho.conjugate(&cyclo_matrix(&f, &[&["1", "1"], &["1", "1"]])).is_none());
}

pub fn direct_sum_squares_scalar_torsion() {
    let f = field(3);
    for p in [trefoil(), figure_eight(), unknot(), hopf()] {
        let phi = default_phi(&p);
        for rho in [MatRep::trivial(&f, p.num_generators()), scalar_rep(&f, p.num_generators(), &[1])] {
            let single = torsion(&p, &phi, &rho);
            let double = torsion(&p, &phi, &rho.direct_sum(&rho));
            assert!(same_up_to_unit(&double, &single.mul(&single)), "{}", double.render());
        }
    }
}

pub fn character_orthogonality() {
    for orders in [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 4], vec![3, 3]] {
        let g = FinAbGroup::new(orders).unwrap();
        let f = field(g.exponent());
        let chars = characters(&g);
        assert_eq!(chars.len() as u64, g.order());
        let elems = g.elements();
        for (a, xi) in chars.iter().enumerate() {
            for (b, psi) in chars.iter().enumerate() {
                let mut s = CycloNum::from_int(0).with_field(&f);
                for e in &elems {
                    s = s + xi.value(&g, e, &f).unwrap() * psi.value(&g, e, &f).unwrap().conj();
                }
                let want = if a == b { g.order() as i64 } else { 0 };
                assert_eq!(s, CycloNum::from_int(want), "{:?} {xi} {psi}", g.orders());
            }
        }
    }
}

/// `u - 1 = sum_j (du/dx_j)(x_j - 1)` in the free group ring on three letters.
pub fn fox_fundamental_formula(u: &Word) {
    let mut acc = GroupRingElem::zero();
    for j in 0..3 {
        let xj = GroupRingElem::from_word(Word::gen(j)).sub(&GroupRingElem::one());
        acc = acc.add(&fox_derivative(u, j).mul(&xj));
    }
    assert_eq!(acc, GroupRingElem::from_word(u.clone()).sub(&GroupRingElem::one()), "{u:?}");
}

pub fn random_word(rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(0..=16);
    let letters: Vec<i64> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=3);
            if rng.gen() { g } else { -g }
        })
        .collect();
    Word::from_signed(&letters)
}

pub fn fox_on_random_words(seed: u64, count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        fox_fundamental_formula(&random_word(&mut rng));
    }
}

fn det_i64(m: &IntMatrix) -> i64 {
    let q = Matrix::from_fn(m.rows(), m.cols(), |i, j| int(m[(i, j)]));
    let d: Rational = det_field(&q);
    assert!(d.is_integer());
    d.to_integer().try_into().unwrap()
}

/// `U m V = D` exactly, `U` and `V` unimodular, factors positive and dividing.
pub fn smith_form_oracle(m: &IntMatrix) {
    let s = smith_normal_form(m).unwrap();
    let q = |a: &IntMatrix| a.map(|&x| int(x));
    assert_eq!(q(&s.u).mul(&q(m)).mul(&q(&s.v)), q(&s.d));
    let f = s.invariant_factors();
    for w in f.windows(2) {
        assert!(w[1] % w[0] == 0, "{f:?}");
    }
    assert!(f.iter().all(|&x| x > 0));
    assert_eq!(det_i64(&s.u).abs(), 1);
    assert_eq!(det_i64(&s.v).abs(), 1);
}

pub fn smith_on_random_matrices(seed: u64, count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let (rows, cols) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        smith_form_oracle(&IntMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-9..=9)));
    }
}

fn laplace(m: &Matrix<LaurentPoly>) -> LaurentPoly {
    let n = m.rows();
    if n == 0 {
        return LaurentPoly::from_int(1);
    }
    let mut acc = LaurentPoly::from_int(0);
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = m[(0, j)].clone() * laplace(&m.select_rows(&rows).select_cols(&cols));
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Bareiss, Laplace and Gaussian elimination over the fraction field agree.
pub fn determinant_oracles(seed: u64, count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let n = rng.gen_range(1..=5);
        let m = Matrix::from_fn(n, n, |_, _| {
            let mut p = LaurentPoly::from_int(0);
            for _ in 0..rng.gen_range(0..=2) {
                let e = vec![rng.gen_range(-1..=2), rng.gen_range(0..=1)];
                p = p + LaurentPoly::term(Monomial::new(e), CycloNum::from_int(rng.gen_range(-2..=2)));
            }
            p
        });
        let ff = det_fraction_free(&m);
        assert_eq!(ff, laplace(&m));
        let over_field = det_field(&m.map(|x| RatFunc::from_poly(x.clone())));
        assert_eq!(over_field, RatFunc::from_poly(ff));
    }
}
