use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::chain::BasedChainComplex;
use super::unit::{TorsionValue, UnitGroup};
use crate::error::{Error, Result};
use crate::fox::{fox_jacobian, generator_columns};
use crate::groups::Presentation;
use crate::reps::TensorRep;
use crate::scalars::{det_fraction_free, LaurentPoly, Matrix, RatFunc};

fn require_deficiency_one(p: &Presentation) -> Result<()> {
    if p.deficiency() != 1 {
        return Err(Error::Unsupported(format!(
            "presentation has deficiency {}, torsion needs deficiency 1",
            p.deficiency()
        )));
    }
    Ok(())
}

/// `det(A without block column j) / det(Phi(x_j) - I)`, or `None` when the
/// denominator vanishes. The numerator may be zero.
pub fn wada_column(p: &Presentation, rep: &TensorRep, j: usize) -> Result<Option<RatFunc>> {
    require_deficiency_one(p)?;
    let a = fox_jacobian(p, rep);
    let cols = generator_columns(rep);
    Ok(column_quotient(&a, &cols[j], j, rep.dim()))
}

fn column_quotient(
    a: &Matrix<LaurentPoly>,
    dj: &Matrix<LaurentPoly>,
    j: usize,
    m: usize,
) -> Option<RatFunc> {
    let den = det_fraction_free(dj);
    if den.is_zero() {
        return None;
    }
    let keep: Vec<usize> = (0..a.cols()).filter(|&c| c / m != j).collect();
    let num = det_fraction_free(&a.select_cols(&keep));
    RatFunc::new(num, den)
}

/// Polynomial torsion of the presentation 2-complex twisted by `rep`.
///
/// Uses the first generator `x_j` with `det(Phi(x_j) - I) != 0`. Units are
/// `+-zeta_N^b t^a` with `a` in the lattice spanned by the monomial parts of
/// `rep`.
pub fn wada_torsion(p: &Presentation, rep: &TensorRep) -> Result<TorsionValue> {
    require_deficiency_one(p)?;
    if rep.num_generators() != p.num_generators() {
        return Err(Error::validation("representation and presentation disagree on generators"));
    }
    let a = fox_jacobian(p, rep);
    let cols = generator_columns(rep);
    let m = rep.dim();
    for (j, dj) in cols.iter().enumerate() {
        let Some(q) = column_quotient(&a, dj, j, m) else {
            continue;
        };
        if q.is_zero() {
            return Err(Error::NotAcyclic(format!(
                "Fox Jacobian minor vanishes for column {}",
                p.generators()[j]
            )));
        }
        let units = UnitGroup::new(rep.field().conductor(), rep.lattice());
        return TorsionValue::new(q, units);
    }
    Err(Error::NotAcyclic(
        "det(Phi(x_j) - I) vanishes for every generator".into(),
    ))
}

/// The twisted cellular complex `C_2 -> C_1 -> C_0` of the presentation
/// 2-complex, `d_2 = A^T` and `d_1` the row of blocks `(Phi(x_j) - I)^T`.
pub fn presentation_complex(p: &Presentation, rep: &TensorRep) -> Result<BasedChainComplex<RatFunc>> {
    let m = rep.dim();
    let k = p.num_generators();
    let r = p.relators().len();
    let a = fox_jacobian(p, rep);
    let cols = generator_columns(rep);
    let d2 = a.transpose().map(|x| RatFunc::from_poly(x.clone()));
    let d1 = Matrix::from_fn(m, k * m, |i, c| {
        RatFunc::from_poly(cols[c / m][(c % m, i)].clone())
    });
    BasedChainComplex::new(alloc::vec![m, k * m, r * m], alloc::vec![d1, d2])
}
