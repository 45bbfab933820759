use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalars::{det_field, pivot_columns, rank, Field, Matrix};

/// A finite chain complex `C_top -> ... -> C_0` of based vector spaces.
///
/// Boundaries act on column vectors: `d_i : C_i -> C_{i-1}` is a
/// `dim C_{i-1} x dim C_i` matrix.
#[derive(Debug, Clone)]
pub struct BasedChainComplex<F> {
    dims: Vec<usize>,
    boundaries: Vec<Matrix<F>>,
    homology: Vec<Vec<Vec<F>>>,
}

impl<F: Field> BasedChainComplex<F> {
    /// `boundaries[i - 1]` is `d_i`, for `i = 1..dims.len()`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<Matrix<F>>) -> Result<Self> {
        if dims.is_empty() || boundaries.len() + 1 != dims.len() {
            return Err(Error::validation("need one boundary map between consecutive degrees"));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.rows() != dims[i] || d.cols() != dims[i + 1] {
                return Err(Error::validation(format!(
                    "d_{} should be {}x{}, got {}x{}",
                    i + 1,
                    dims[i],
                    dims[i + 1],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for i in 1..boundaries.len() {
            if !boundaries[i - 1].mul(&boundaries[i]).is_zero() {
                return Err(Error::validation(format!("d_{} d_{} != 0", i, i + 1)));
            }
        }
        let homology = alloc::vec![Vec::new(); dims.len()];
        Ok(BasedChainComplex {
            dims,
            boundaries,
            homology,
        })
    }

    /// Supplies a homology basis in degree `i`, as cycles in `C_i`.
    pub fn with_homology(mut self, degree: usize, basis: Vec<Vec<F>>) -> Result<Self> {
        if degree >= self.dims.len() {
            return Err(Error::validation(format!("no chain group in degree {degree}")));
        }
        for h in &basis {
            if h.len() != self.dims[degree] {
                return Err(Error::validation("homology vector has the wrong length"));
            }
            if degree > 0 && self.boundaries[degree - 1].mul_vec(h).iter().any(|x| !x.is_zero()) {
                return Err(Error::validation(format!(
                    "homology vector in degree {degree} is not a cycle"
                )));
            }
        }
        self.homology[degree] = basis;
        Ok(self)
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_i`, or `None` outside `1..=top`.
    pub fn boundary(&self, i: usize) -> Option<&Matrix<F>> {
        i.checked_sub(1).and_then(|k| self.boundaries.get(k))
    }

    pub fn homology(&self, degree: usize) -> &[Vec<F>] {
        &self.homology[degree]
    }

    fn rank_of(&self, i: usize) -> usize {
        self.boundary(i).map_or(0, rank)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|i| self.dims[i] - self.rank_of(i) - self.rank_of(i + 1))
            .collect()
    }
}

/// `|C| = sum_k alpha_k beta_k mod 2`, with `alpha_k = sum_{j<=k} dim C_j`
/// and `beta_k = sum_{j<=k} dim H_j`.
pub fn sign_exponent(dims: &[usize], betti: &[usize]) -> usize {
    let mut alpha = 0;
    let mut beta = 0;
    let mut total = 0;
    for (d, b) in dims.iter().zip(betti) {
        alpha += d;
        beta += b;
        total += alpha * beta;
    }
    total % 2
}

/// Sign-determined torsion
/// `(-1)^|C| prod_i [d_{i+1}(b^{i+1}) h^i b^i / c^i]^((-1)^(i+1))`.
///
/// `b^i` is the greedy set of pivot columns of `d_i`, so `d_i(b^i)` is a
/// basis of the boundaries in degree `i - 1`. With this convention the
/// complex `F --(t - 1)--> F` in degrees 1, 0 has torsion `1/(t - 1)`.
pub fn chain_torsion<F: Field>(c: &BasedChainComplex<F>) -> Result<F> {
    let betti = c.betti_numbers();
    let top = c.top_degree();
    let b: Vec<Vec<usize>> = (0..=top)
        .map(|i| c.boundary(i).map_or_else(Vec::new, pivot_columns))
        .collect();

    let mut tor = F::one();
    for i in 0..=top {
        let n = c.dims[i];
        let h = c.homology(i);
        if h.len() != betti[i] {
            return Err(Error::validation(format!(
                "degree {i}: {} homology vectors supplied, Betti number is {}",
                h.len(),
                betti[i]
            )));
        }
        let mut cols: Vec<Vec<F>> = Vec::with_capacity(n);
        if let Some(d) = c.boundary(i + 1) {
            cols.extend(b[i + 1].iter().map(|&j| d.column(j)));
        }
        cols.extend(h.iter().cloned());
        for &j in &b[i] {
            cols.push((0..n).map(|r| if r == j { F::one() } else { F::zero() }).collect());
        }
        let m = Matrix::from_columns(n, &cols);
        let det = det_field(&m);
        let Some(inv) = det.inv() else {
            return Err(Error::validation(format!(
                "degree {i}: boundaries, homology basis and lifts do not form a basis"
            )));
        };
        tor = if i % 2 == 0 { tor * &inv } else { tor * &det };
    }
    if sign_exponent(&c.dims, &betti) == 1 {
        tor = -tor;
    }
    Ok(tor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{int, Rational};
    use crate::scalars::{LaurentPoly, RatFunc};
    use alloc::vec;
    use num_traits::One;

    #[test]
    fn identity_complex_is_one() {
        let d: Matrix<Rational> = Matrix::identity(1);
        let c = BasedChainComplex::new(vec![1, 1], vec![d]).unwrap();
        assert!(chain_torsion(&c).unwrap().is_one());
    }

    #[test]
    fn one_by_one_convention() {
        let t = LaurentPoly::var(0);
        let tm1 = RatFunc::from_poly(t - LaurentPoly::one());
        let c = BasedChainComplex::new(vec![1, 1], vec![Matrix::from_rows(vec![vec![tm1.clone()]])])
            .unwrap();
        assert_eq!(chain_torsion(&c).unwrap(), tm1.inverse().unwrap());
    }

    #[test]
    fn homology_required() {
        let z: Matrix<Rational> = Matrix::zeros(1, 1);
        let c = BasedChainComplex::new(vec![1, 1], vec![z]).unwrap();
        assert!(chain_torsion(&c).is_err());
        let c = c
            .with_homology(0, vec![vec![int(2)]])
            .unwrap()
            .with_homology(1, vec![vec![int(3)]])
            .unwrap();
        // alpha = (1, 2), beta = (1, 2): |C| = 1 + 4, odd
        assert_eq!(chain_torsion(&c).unwrap(), -(int(3) / int(2)));
    }

    #[test]
    fn rejects_non_complex() {
        let d1: Matrix<Rational> = Matrix::identity(1);
        let d2: Matrix<Rational> = Matrix::identity(1);
        assert!(BasedChainComplex::new(vec![1, 1, 1], vec![d1, d2]).is_err());
    }
}
