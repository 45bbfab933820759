//! Abelian maps, matrix representations, characters of finite abelian
//! groups, their tensor products and pullbacks to cover subgroups.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::groups::{Abelianization, EpiToG, FinAbGroup, Presentation, SubgroupData, Word};
use crate::scalars::{
    cyclo_embed_root_of_unity, det_field, inverse, smith_normal_form, CycloField, CycloNum,
    IntMatrix, Lattice, LaurentPoly, Matrix, Monomial,
};

/// A homomorphism from a presented group to `Z^n`, given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelMap {
    n: usize,
    images: Vec<Vec<i64>>,
}

impl AbelMap {
    pub fn new(n: usize, images: Vec<Vec<i64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoFreeAbelianization);
        }
        if images.iter().any(|v| v.len() != n) {
            return Err(Error::validation(format!("phi images must have length {n}")));
        }
        Ok(AbelMap { n, images })
    }

    pub fn from_abelianization(ab: &Abelianization) -> Self {
        AbelMap {
            n: ab.rank,
            images: ab.phi.clone(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Vec<i64> {
        let mut v = alloc::vec![0; self.n];
        for l in w.letters() {
            for (x, y) in v.iter_mut().zip(&self.images[l.gen]) {
                *x += l.sign() * y;
            }
        }
        v
    }

    pub fn image_lattice(&self) -> Lattice {
        Lattice::new(self.n, &self.images)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        if self.images.is_empty() {
            return Ok(false);
        }
        let m = IntMatrix::from_fn(self.n, self.images.len(), |i, j| self.images[j][i]);
        let f = smith_normal_form(&m)?.invariant_factors();
        Ok(f.len() == self.n && f.iter().all(|&d| d == 1))
    }

    /// Every relator must map to zero.
    pub fn check_relators(&self, p: &Presentation) -> Result<()> {
        if self.images.len() != p.num_generators() {
            return Err(Error::validation("phi must give one image per generator"));
        }
        for (i, r) in p.relators().iter().enumerate() {
            if self.apply(r).iter().any(|&x| x != 0) {
                return Err(Error::validation(format!(
                    "phi does not kill relator {} ({})",
                    i + 1,
                    r.render(p.generators())
                )));
            }
        }
        Ok(())
    }

    /// Relators plus surjectivity onto `Z^n`.
    pub fn validate(&self, p: &Presentation) -> Result<()> {
        self.check_relators(p)?;
        if !self.is_surjective()? {
            return Err(Error::validation("phi is not surjective onto Z^n"));
        }
        Ok(())
    }
}

/// A matrix representation over `Q(zeta_N)`, given on generators.
#[derive(Debug, Clone, PartialEq)]
pub struct MatRep {
    dim: usize,
    field: Arc<CycloField>,
    images: Vec<Matrix<CycloNum>>,
    inverses: Vec<Matrix<CycloNum>>,
}

impl MatRep {
    /// Generator images must be invertible square matrices of one size.
    pub fn new(field: &Arc<CycloField>, images: Vec<Matrix<CycloNum>>) -> Result<Self> {
        let dim = images.first().map_or(1, Matrix::rows);
        if dim == 0 {
            return Err(Error::validation("representation of dimension 0"));
        }
        let mut inverses = Vec::with_capacity(images.len());
        let mut embedded = Vec::with_capacity(images.len());
        for (j, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::validation(format!(
                    "image of generator {} is not {dim}x{dim}",
                    j + 1
                )));
            }
            let mut e = Matrix::zeros(dim, dim);
            for a in 0..dim {
                for b in 0..dim {
                    e[(a, b)] = m[(a, b)].embed(field)?;
                }
            }
            let inv = inverse(&e).ok_or_else(|| {
                Error::validation(format!("image of generator {} is singular", j + 1))
            })?;
            embedded.push(e);
            inverses.push(inv);
        }
        Ok(MatRep {
            dim,
            field: field.clone(),
            images: embedded,
            inverses,
        })
    }

    /// The trivial one-dimensional representation.
    pub fn trivial(field: &Arc<CycloField>, num_generators: usize) -> Self {
        let one = Matrix::from_rows(alloc::vec![alloc::vec![CycloNum::one().with_field(field)]]);
        MatRep {
            dim: 1,
            field: field.clone(),
            images: alloc::vec![one.clone(); num_generators],
            inverses: alloc::vec![one; num_generators],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn images(&self) -> &[Matrix<CycloNum>] {
        &self.images
    }

    pub fn eval(&self, w: &Word) -> Matrix<CycloNum> {
        let mut acc = Matrix::identity(self.dim);
        for l in w.letters() {
            let m = if l.inverse {
                &self.inverses[l.gen]
            } else {
                &self.images[l.gen]
            };
            acc = acc.mul(m);
        }
        acc
    }

    /// Determinant one on generators (only when `dim >= 2`) and every
    /// relator sent to the identity.
    pub fn validate(&self, p: &Presentation) -> Result<()> {
        if self.images.len() != p.num_generators() {
            return Err(Error::validation("rho must give one image per generator"));
        }
        if self.dim >= 2 {
            for (j, m) in self.images.iter().enumerate() {
                if !det_field(m).is_one() {
                    return Err(Error::validation(format!(
                        "rho({}) has determinant {}, expected 1",
                        p.generators()[j],
                        det_field(m)
                    )));
                }
            }
        }
        self.check_relators(p)
    }

    pub fn check_relators(&self, p: &Presentation) -> Result<()> {
        let id = Matrix::identity(self.dim);
        for (i, r) in p.relators().iter().enumerate() {
            if self.eval(r) != id {
                return Err(Error::validation(format!(
                    "rho does not satisfy relator {} ({})",
                    i + 1,
                    r.render(p.generators())
                )));
            }
        }
        Ok(())
    }

    /// Block-diagonal sum of two representations of the same group.
    pub fn direct_sum(&self, other: &MatRep) -> MatRep {
        assert_eq!(self.images.len(), other.images.len());
        MatRep {
            dim: self.dim + other.dim,
            field: self.field.clone(),
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
            inverses: self
                .inverses
                .iter()
                .zip(&other.inverses)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// `P rho P^-1`; `None` if `P` is singular.
    pub fn conjugate(&self, p: &Matrix<CycloNum>) -> Option<MatRep> {
        let pinv = inverse(p)?;
        Some(MatRep {
            dim: self.dim,
            field: self.field.clone(),
            images: self.images.iter().map(|m| p.mul(m).mul(&pinv)).collect(),
            inverses: self.inverses.iter().map(|m| p.mul(m).mul(&pinv)).collect(),
        })
    }
}

/// A character of `Z/q1 + ... + Z/qr`, `e_i -> zeta_{q_i}^{k_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub ks: Vec<u64>,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.ks.iter().all(|&k| k == 0)
    }

    /// `xi(g)` as an element of the session field.
    pub fn value(&self, group: &FinAbGroup, g: &[u64], field: &Arc<CycloField>) -> Result<CycloNum> {
        let mut acc = CycloNum::one().with_field(field);
        for ((&k, &x), &q) in self.ks.iter().zip(g).zip(group.orders()) {
            let e = ((k * x) % q) as i64;
            acc = acc * cyclo_embed_root_of_unity(q, e, field)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.ks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

/// All `|G|` characters in lexicographic order of `(k1, ..., kr)`.
pub fn characters(group: &FinAbGroup) -> Vec<Character> {
    group
        .elements()
        .into_iter()
        .map(|ks| Character { ks })
        .collect()
}

/// `t_i -> xi(pi_bar(e_i))`.
pub fn pullback_character(
    xi: &Character,
    group: &FinAbGroup,
    pi_bar: &EpiToG,
    field: &Arc<CycloField>,
) -> Result<Vec<CycloNum>> {
    (0..pi_bar.num_vars())
        .map(|i| {
            let g: Vec<u64> = (0..group.rank())
                .map(|r| pi_bar.matrix()[(r, i)].rem_euclid(group.orders()[r] as i64) as u64)
                .collect();
            xi.value(group, &g, field)
        })
        .collect()
}

/// The value `Phi(w) = t^a * M` of a word under a [`TensorRep`].
#[derive(Debug, Clone, PartialEq)]
pub struct RepValue {
    pub monomial: Monomial,
    pub matrix: Matrix<CycloNum>,
}

impl RepValue {
    pub fn identity(m: usize) -> Self {
        RepValue {
            monomial: Monomial::one(),
            matrix: Matrix::identity(m),
        }
    }

    pub fn mul(&self, other: &RepValue) -> RepValue {
        RepValue {
            monomial: self.monomial.mul(&other.monomial),
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn to_laurent(&self) -> Matrix<LaurentPoly> {
        self.matrix.map(|c| LaurentPoly::term(self.monomial.clone(), c.clone()))
    }
}

/// `Phi(x) = twist(x) * t^phi(x) * rho(x)` on generators, acting on the
/// left.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorRep {
    n: usize,
    dim: usize,
    field: Arc<CycloField>,
    exponents: Vec<Vec<i64>>,
    twists: Vec<CycloNum>,
    gens: Vec<RepValue>,
    gen_inverses: Vec<RepValue>,
}

impl TensorRep {
    pub fn new(phi: &AbelMap, rho: &MatRep) -> Result<Self> {
        if phi.images().len() != rho.images().len() {
            return Err(Error::validation("phi and rho cover different generator counts"));
        }
        let k = rho.images().len();
        let one = CycloNum::one().with_field(rho.field());
        let mut t = TensorRep {
            n: phi.num_vars(),
            dim: rho.dim(),
            field: rho.field().clone(),
            exponents: phi.images().to_vec(),
            twists: alloc::vec![one; k],
            gens: Vec::new(),
            gen_inverses: Vec::new(),
        };
        t.rebuild(rho.images(), &rho.inverses);
        Ok(t)
    }

    fn rebuild(&mut self, mats: &[Matrix<CycloNum>], invs: &[Matrix<CycloNum>]) {
        self.gens = (0..mats.len())
            .map(|j| RepValue {
                monomial: Monomial::new(self.exponents[j].clone()),
                matrix: mats[j].scale(&self.twists[j]),
            })
            .collect();
        self.gen_inverses = (0..mats.len())
            .map(|j| RepValue {
                monomial: Monomial::new(self.exponents[j].iter().map(|&e| -e).collect()),
                matrix: invs[j].scale(&self.twists[j].inverse().unwrap()),
            })
            .collect();
    }

    /// Multiplies each generator's scalar twist by `prod xi_bar_i^phi_i(x)`,
    /// the substitution `t_i -> xi_bar(t_i) t_i`.
    pub fn twist(&self, xi_bar: &[CycloNum]) -> TensorRep {
        assert_eq!(xi_bar.len(), self.n);
        let mut out = self.clone();
        for (j, e) in self.exponents.iter().enumerate() {
            let mut s = CycloNum::one();
            for (x, &a) in xi_bar.iter().zip(e) {
                s = s * x.pow(a);
            }
            if s.is_one() {
                continue;
            }
            out.twists[j] = out.twists[j].clone() * &s;
            let inv = s.inverse().unwrap();
            out.gens[j].matrix = out.gens[j].matrix.scale(&s);
            out.gen_inverses[j].matrix = out.gen_inverses[j].matrix.scale(&inv);
        }
        out
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn twists(&self) -> &[CycloNum] {
        &self.twists
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    /// Lattice spanned by the monomial parts; torsion units live here.
    pub fn lattice(&self) -> Lattice {
        Lattice::new(self.n, &self.exponents)
    }

    pub fn generator(&self, j: usize) -> &RepValue {
        &self.gens[j]
    }

    pub fn generator_inverse(&self, j: usize) -> &RepValue {
        &self.gen_inverses[j]
    }

    pub fn eval(&self, w: &Word) -> RepValue {
        let mut acc = RepValue::identity(self.dim);
        for l in w.letters() {
            let g = if l.inverse {
                &self.gen_inverses[l.gen]
            } else {
                &self.gens[l.gen]
            };
            acc = acc.mul(g);
        }
        acc
    }

    /// Every relator must evaluate to the identity.
    pub fn check_relators(&self, p: &Presentation) -> Result<()> {
        let id = RepValue::identity(self.dim);
        for (i, r) in p.relators().iter().enumerate() {
            if self.eval(r) != id {
                return Err(Error::Internal(format!(
                    "Phi does not satisfy relator {}",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// `phi_hat = phi . inclusion` and `rho_hat = rho . inclusion`.
///
/// `phi_hat` is generally not onto `Z^n`; its image is the sublattice
/// `ker pi_bar`.
pub fn pullback(sub: &SubgroupData, phi: &AbelMap, rho: &MatRep) -> Result<(AbelMap, MatRep)> {
    let images: Vec<Vec<i64>> = sub.inclusion.iter().map(|w| phi.apply(w)).collect();
    let phi_hat = AbelMap {
        n: phi.num_vars(),
        images,
    };
    let mats: Vec<Matrix<CycloNum>> = sub.inclusion.iter().map(|w| rho.eval(w)).collect();
    let invs: Vec<Matrix<CycloNum>> = sub
        .inclusion
        .iter()
        .map(|w| rho.eval(&w.inverse()))
        .collect();
    let rho_hat = MatRep {
        dim: rho.dim(),
        field: rho.field().clone(),
        images: mats,
        inverses: invs,
    };
    let fail = |e: Error| Error::Internal(format!("pulled-back data on the cover: {e}"));
    phi_hat.check_relators(&sub.presentation).map_err(fail)?;
    rho_hat.check_relators(&sub.presentation).map_err(fail)?;
    Ok((phi_hat, rho_hat))
}

/// Checks `pi_bar(phi_hat(g)) = 0` for every cover generator.
pub fn check_kernel(phi_hat: &AbelMap, group: &FinAbGroup, pi_bar: &EpiToG) -> Result<()> {
    for v in phi_hat.images() {
        if pi_bar.apply(group, v).iter().any(|&x| x != 0) {
            return Err(Error::Internal(String::from(
                "a cover generator leaves the kernel of pi_bar",
            )));
        }
    }
    Ok(())
}
