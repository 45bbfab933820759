//! Fox free differential calculus.
//!
//! Derivatives satisfy `d(uv)/dx = du/dx + u dv/dx`, so evaluation under a
//! representation multiplies prefixes on the left.

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::groups::{Presentation, Word};
use crate::reps::{RepValue, TensorRep};
use crate::scalars::{CycloNum, LaurentPoly, Matrix};

/// An element of the integral group ring of a free group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElem {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, 1);
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, &a) in &self.terms {
            for (v, &b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }
}

/// The Fox derivative `dw/dx_gen`.
pub fn fox_derivative(w: &Word, gen: usize) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l.gen == gen && !l.inverse {
            out.add_term(prefix.clone(), 1);
        }
        prefix.push(l);
        if l.gen == gen && l.inverse {
            out.add_term(prefix.clone(), -1);
        }
    }
    out
}

/// Linear extension of `w -> Phi(w)`.
pub fn evaluate(e: &GroupRingElem, rep: &TensorRep) -> Matrix<LaurentPoly> {
    let m = rep.dim();
    let mut acc = Matrix::<LaurentPoly>::zeros(m, m);
    for (w, &c) in e.terms() {
        let v = rep.eval(w);
        let c = CycloNum::from_int(c);
        for i in 0..m {
            for j in 0..m {
                let x = &v.matrix[(i, j)];
                if !x.is_zero() {
                    let cur = core::mem::replace(&mut acc[(i, j)], LaurentPoly::zero());
                    acc[(i, j)] = cur + LaurentPoly::term(v.monomial.clone(), x.clone() * &c);
                }
            }
        }
    }
    acc
}

/// The block Fox Jacobian `A[i][j] = Phi(dr_i/dx_j)`, of size
/// `(rels * m) x (gens * m)`.
///
/// Computed in one pass over each relator, accumulating prefix values.
pub fn fox_jacobian(p: &Presentation, rep: &TensorRep) -> Matrix<LaurentPoly> {
    let m = rep.dim();
    let (r, k) = (p.relators().len(), p.num_generators());
    let mut a = Matrix::<LaurentPoly>::zeros(r * m, k * m);
    for (ri, rel) in p.relators().iter().enumerate() {
        let mut prefix = RepValue::identity(m);
        for l in rel.letters() {
            let sign = if l.inverse {
                prefix = prefix.mul(rep.generator_inverse(l.gen));
                -1
            } else {
                1
            };
            add_block(&mut a, ri * m, l.gen * m, &prefix, sign);
            if !l.inverse {
                prefix = prefix.mul(rep.generator(l.gen));
            }
        }
    }
    a
}

fn add_block(a: &mut Matrix<LaurentPoly>, r0: usize, c0: usize, v: &RepValue, sign: i64) {
    let m = v.matrix.rows();
    let s = CycloNum::from_int(sign);
    for i in 0..m {
        for j in 0..m {
            let x = &v.matrix[(i, j)];
            if x.is_zero() {
                continue;
            }
            let cur = core::mem::replace(&mut a[(r0 + i, c0 + j)], LaurentPoly::zero());
            a[(r0 + i, c0 + j)] = cur + LaurentPoly::term(v.monomial.clone(), x.clone() * &s);
        }
    }
}

/// `Phi(x_j) - I` for every generator.
pub fn generator_columns(rep: &TensorRep) -> Vec<Matrix<LaurentPoly>> {
    (0..rep.num_generators())
        .map(|j| rep.generator(j).to_laurent().sub(&Matrix::identity(rep.dim())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{AbelMap, MatRep};
    use crate::scalars::{CycloField, Monomial, Ring};
    use alloc::vec;
    use proptest::prelude::*;

    fn sum_matrices<T: Ring>(ms: impl IntoIterator<Item = Matrix<T>>, r: usize, c: usize) -> Matrix<T> {
        ms.into_iter().fold(Matrix::zeros(r, c), |acc, m| acc.add(&m))
    }

    fn w(s: &[i64]) -> Word {
        Word::from_signed(s)
    }

    #[test]
    fn axioms_and_commutator() {
        assert_eq!(fox_derivative(&w(&[1]), 0), GroupRingElem::one());
        let mut e = GroupRingElem::zero();
        e.add_term(w(&[-1]), -1);
        assert_eq!(fox_derivative(&w(&[-1]), 0), e);

        let comm = w(&[1, 2, -1, -2]);
        let expect = GroupRingElem::one().sub(&GroupRingElem::from_word(w(&[1, 2, -1])));
        assert_eq!(fox_derivative(&comm, 0), expect);
    }

    fn hopf_rep() -> TensorRep {
        let f = CycloField::new(1).unwrap();
        let phi = AbelMap::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        TensorRep::new(&phi, &MatRep::trivial(&f, 2)).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let f = CycloField::new(1).unwrap();
        let phi = AbelMap::new(1, vec![vec![1]]).unwrap();
        let rep = TensorRep::new(&phi, &MatRep::trivial(&f, 1)).unwrap();
        let e = GroupRingElem::one().sub(&GroupRingElem::from_word(w(&[1])));
        let t = LaurentPoly::var(0);
        assert_eq!(evaluate(&e, &rep)[(0, 0)], LaurentPoly::from_int(1) - t);
        assert!(evaluate(&GroupRingElem::zero(), &rep).is_zero());

        let e = GroupRingElem::one().sub(&GroupRingElem::from_word(w(&[1, 2, -1])));
        let t2 = LaurentPoly::monomial(Monomial::var(1));
        assert_eq!(evaluate(&e, &hopf_rep())[(0, 0)], LaurentPoly::from_int(1) - t2);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(prop_oneof![-2i64..=-1, 1i64..=2], 0..=12)
            .prop_map(|v| Word::from_signed(&v))
    }

    proptest! {
        #[test]
        fn fundamental_formula(u in arb_word()) {
            let mut acc = GroupRingElem::zero();
            for j in 0..2 {
                let xj = GroupRingElem::from_word(Word::gen(j)).sub(&GroupRingElem::one());
                acc = acc.add(&fox_derivative(&u, j).mul(&xj));
            }
            let expect = GroupRingElem::from_word(u.clone()).sub(&GroupRingElem::one());
            prop_assert_eq!(acc, expect);
        }

        #[test]
        fn derivative_of_trivial_product(u in arb_word()) {
            let uu = Word::from_letters(u.letters().iter().copied().chain(u.inverse().letters().iter().copied()));
            for j in 0..2 {
                prop_assert!(fox_derivative(&uu, j).is_zero());
            }
        }

        #[test]
        fn evaluation_is_multiplicative(u in arb_word(), v in arb_word()) {
            let rep = hopf_rep();
            let a = GroupRingElem::from_word(u).add(&GroupRingElem::one());
            let b = GroupRingElem::from_word(v).sub(&GroupRingElem::one());
            prop_assert_eq!(evaluate(&a.mul(&b), &rep), evaluate(&a, &rep).mul(&evaluate(&b, &rep)));
        }
    }

    #[test]
    fn jacobian_matches_derivatives() {
        let p = Presentation::parse(&["a", "b"], &["a b A B"]).unwrap();
        let rep = hopf_rep();
        let a = fox_jacobian(&p, &rep);
        for j in 0..2 {
            let d = evaluate(&fox_derivative(&p.relators()[0], j), &rep);
            assert_eq!(a[(0, j)], d[(0, 0)]);
        }
        // sum_j A_j (Phi(x_j) - I) = Phi(r) - I = 0
        let cols = generator_columns(&rep);
        let s = sum_matrices(
            (0..2).map(|j| a.select_cols(&[j]).mul(&cols[j])),
            1,
            1,
        );
        assert!(s.is_zero());
    }
}
