use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;

use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::scalars::{hermite_normal_form, smith_normal_form, IntMatrix};

/// The abelianization `Z^n + torsion` of a presented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<i64>,
    /// Image in `Z^n` of each generator under the projection onto the free
    /// part.
    pub phi: Vec<Vec<i64>>,
}

/// Smith normal form of the abelianized relator matrix.
///
/// The free-part projection is brought to a canonical basis of `Z^n` by a
/// Hermite normal form, so a knot's meridians all map to `+t`.
pub fn abelianization(p: &Presentation) -> Result<Abelianization> {
    let k = p.num_generators();
    let m = p.relator_matrix();
    let snf = smith_normal_form(&m)?;
    let factors = snf.invariant_factors();
    let r = factors.len();
    let n = k - r;
    if n == 0 {
        return Err(Error::NoFreeAbelianization);
    }
    // x -> x V, free coordinates r..k
    let proj_t = IntMatrix::from_fn(n, k, |i, j| snf.v[(j, r + i)]);
    let h = hermite_normal_form(&proj_t)?;
    let phi = (0..k).map(|j| (0..n).map(|i| h[(i, j)]).collect()).collect();
    Ok(Abelianization {
        rank: n,
        torsion: factors.into_iter().filter(|&d| d > 1).collect(),
        phi,
    })
}

/// A finite abelian group `Z/q1 + ... + Z/qr`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinAbGroup {
    orders: Vec<u64>,
}

impl FinAbGroup {
    /// Orders must be at least 2; the empty list is the trivial group.
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if let Some(q) = orders.iter().find(|&&q| q < 2) {
            return Err(Error::validation(format!("cyclic factor of order {q}; orders must be >= 2")));
        }
        let mut total: u64 = 1;
        for &q in &orders {
            total = total
                .checked_mul(q)
                .filter(|&t| t <= 1 << 20)
                .ok_or_else(|| Error::Unsupported(format!("group of order > {}", 1 << 20)))?;
        }
        Ok(FinAbGroup { orders })
    }

    pub fn trivial() -> Self {
        FinAbGroup { orders: Vec::new() }
    }

    pub fn cyclic(q: u64) -> Result<Self> {
        Self::new(alloc::vec![q])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &q| a.lcm(&q))
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Reduces an integer vector into canonical coordinates.
    pub fn reduce(&self, v: &[i64]) -> Vec<u64> {
        assert_eq!(v.len(), self.orders.len());
        v.iter()
            .zip(&self.orders)
            .map(|(&x, &q)| x.rem_euclid(q as i64) as u64)
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((&x, &y), &q)| (x + y) % q)
            .collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((&x, &y), &q)| (x + q - y) % q)
            .collect()
    }

    /// Position of an element in [`elements`](Self::elements).
    pub fn index_of(&self, g: &[u64]) -> usize {
        g.iter()
            .zip(&self.orders)
            .fold(0, |acc, (&x, &q)| acc * q as usize + x as usize)
    }

    /// All elements in lexicographic order of their coordinates.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = alloc::vec![Vec::new()];
        for &q in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..q).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

/// An epimorphism `Z^n -> G`, column `i` being the image of `t_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpiToG {
    matrix: IntMatrix,
}

impl EpiToG {
    /// Checks that the columns generate `G` via the Smith form of
    /// `[pi_bar | diag(q)]`.
    pub fn new(group: &FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        let r = group.rank();
        if matrix.rows() != r {
            return Err(Error::validation(format!(
                "pi_bar has {} rows but G has {} cyclic factors",
                matrix.rows(),
                r
            )));
        }
        let n = matrix.cols();
        let stacked = IntMatrix::from_fn(r, n + r, |i, j| {
            if j < n {
                matrix[(i, j)]
            } else if j - n == i {
                group.orders()[i] as i64
            } else {
                0
            }
        });
        let f = smith_normal_form(&stacked)?.invariant_factors();
        if f.len() != r || f.iter().any(|&d| d != 1) {
            return Err(Error::validation("pi_bar is not surjective onto G"));
        }
        Ok(EpiToG { matrix })
    }

    pub fn identity(group: &FinAbGroup) -> Result<Self> {
        let r = group.rank();
        Self::new(group, IntMatrix::identity(r))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn num_vars(&self) -> usize {
        self.matrix.cols()
    }

    pub fn apply(&self, group: &FinAbGroup, v: &[i64]) -> Vec<u64> {
        let img: Vec<i64> = (0..self.matrix.rows())
            .map(|i| (0..self.matrix.cols()).map(|j| self.matrix[(i, j)] * v[j]).sum())
            .collect();
        group.reduce(&img)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn abelianizations() {
        let tref = Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap();
        let ab = abelianization(&tref).unwrap();
        assert_eq!((ab.rank, ab.torsion.len()), (1, 0));
        assert_eq!(ab.phi, vec![vec![1], vec![1]]);

        let hopf = Presentation::parse(&["a", "b"], &["a b A B"]).unwrap();
        let ab = abelianization(&hopf).unwrap();
        assert_eq!(ab.rank, 2);
        assert_eq!(ab.phi, vec![vec![1, 0], vec![0, 1]]);

        let tor = Presentation::parse(&["a"], &["a a"]).unwrap();
        assert_eq!(abelianization(&tor), Err(Error::NoFreeAbelianization));

        let mixed = Presentation::parse(&["a", "b"], &["b b b"]).unwrap();
        assert_eq!(abelianization(&mixed).unwrap().torsion, vec![3]);
    }

    #[test]
    fn groups_and_epis() {
        let g = FinAbGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        let els = g.elements();
        assert_eq!(els.len(), 6);
        for (i, e) in els.iter().enumerate() {
            assert_eq!(g.index_of(e), i);
        }
        assert!(FinAbGroup::new(vec![1]).is_err());
        assert_eq!(FinAbGroup::trivial().elements(), vec![Vec::<u64>::new()]);

        let v4 = FinAbGroup::new(vec![2, 2]).unwrap();
        assert!(EpiToG::new(&v4, IntMatrix::from_rows(vec![vec![1], vec![1]])).is_err());
        assert!(EpiToG::identity(&v4).is_ok());
        let z3 = FinAbGroup::cyclic(3).unwrap();
        assert!(EpiToG::new(&z3, IntMatrix::from_rows(vec![vec![3]])).is_err());
        assert!(EpiToG::new(&z3, IntMatrix::from_rows(vec![vec![2]])).is_ok());
    }
}
