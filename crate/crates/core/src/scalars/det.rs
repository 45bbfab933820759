//! Exact determinants and elimination.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::laurent::{LaurentPoly, Monomial};
use super::matrix::Matrix;
use super::Field;

/// Determinant of a square matrix of Laurent polynomials.
///
/// Each row is first divided by the largest monomial dividing all of its
/// entries so the remaining entries are ordinary polynomials; fraction-free
/// (Bareiss) elimination then needs only exact polynomial division. The
/// extracted monomials are multiplied back into the result.
pub fn det_fraction_free(m: &Matrix<LaurentPoly>) -> LaurentPoly {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut a = m.clone();
    let mut extracted = Monomial::one();
    for i in 0..n {
        let content = a
            .row(i)
            .iter()
            .filter_map(LaurentPoly::monomial_content)
            .reduce(|x, y| x.gcd(&y));
        let Some(content) = content else {
            return LaurentPoly::zero();
        };
        if !content.is_one() {
            let inv = content.inv();
            for j in 0..n {
                a[(i, j)] = a[(i, j)].shift(&inv);
            }
            extracted = extracted.mul(&content);
        }
    }

    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        // smallest nonzero pivot keeps intermediate growth down
        let pivot = (k..n)
            .filter(|&i| !a[(i, k)].is_zero())
            .min_by_key(|&i| a[(i, k)].num_terms());
        let Some(p) = pivot else {
            return LaurentPoly::zero();
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            let aik = a[(i, k)].clone();
            for j in k + 1..n {
                let num = pivot.clone() * &a[(i, j)] - &(aik.clone() * &a[(k, j)]);
                a[(i, j)] = if prev.is_one() {
                    num
                } else {
                    num.div_exact(&prev)
                        .expect("Bareiss step is an exact division")
                };
            }
            a[(i, k)] = LaurentPoly::zero();
        }
        prev = pivot;
    }
    let d = a[(n - 1, n - 1)].shift(&extracted);
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant over a field by Gaussian elimination.
pub fn det_field<F: Field>(m: &Matrix<F>) -> F {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut det = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return F::zero();
        };
        if p != k {
            a.swap_rows(p, k);
            det = -det;
        }
        let pivot = a[(k, k)].clone();
        let inv = pivot.inv().unwrap();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let factor = a[(i, k)].clone() * &inv;
            for j in k + 1..n {
                let v = a[(i, j)].clone() - &(factor.clone() * &a[(k, j)]);
                a[(i, j)] = v;
            }
            a[(i, k)] = F::zero();
        }
        det = det * &pivot;
    }
    det
}

/// Indices of a maximal set of linearly independent columns, chosen greedily
/// from the left.
pub fn pivot_columns<F: Field>(m: &Matrix<F>) -> Vec<usize> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, row);
        let inv = a[(row, col)].inv().unwrap();
        for i in row + 1..a.rows() {
            if a[(i, col)].is_zero() {
                continue;
            }
            let factor = a[(i, col)].clone() * &inv;
            for j in col..a.cols() {
                let v = a[(i, j)].clone() - &(factor.clone() * &a[(row, j)]);
                a[(i, j)] = v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    pivot_columns(m).len()
}

/// Gauss-Jordan inverse, `None` when singular.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut b = Matrix::<F>::identity(n);
    for k in 0..n {
        let p = (k..n).find(|&i| !a[(i, k)].is_zero())?;
        a.swap_rows(p, k);
        b.swap_rows(p, k);
        let inv = a[(k, k)].inv()?;
        for j in 0..n {
            a[(k, j)] = a[(k, j)].clone() * &inv;
            b[(k, j)] = b[(k, j)].clone() * &inv;
        }
        for i in 0..n {
            if i == k || a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone();
            for j in 0..n {
                let va = a[(i, j)].clone() - &(f.clone() * &a[(k, j)]);
                a[(i, j)] = va;
                let vb = b[(i, j)].clone() - &(f.clone() * &b[(k, j)]);
                b[(i, j)] = vb;
            }
        }
    }
    Some(b)
}
