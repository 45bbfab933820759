//! Smith and Hermite normal forms over the integers, and sublattices of Z^n.

use alloc::vec::Vec;

use super::matrix::Matrix;
use super::Ring;
use crate::error::{Error, Result};
use num_integer::Integer;

impl Ring for i64 {}

pub type IntMatrix = Matrix<i64>;

/// `u * m * v == d` with `d` diagonal, `d[i] | d[i+1]`, and `u`, `v`
/// unimodular.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)])
            .take_while(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn ck(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow("integer normal form"))
}

/// row_dst += q * row_src
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, q: i64) -> Result<()> {
    for j in 0..m.cols() {
        m[(dst, j)] = ck(m[(dst, j)].checked_add(ck(q.checked_mul(m[(src, j)]))?))?;
    }
    Ok(())
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        m[(i, j)] = -m[(i, j)];
    }
}

/// Replaces rows `a`, `b` by `(p a + q b, r a + s b)`; the caller keeps
/// `ps - qr = +-1`.
fn mix_rows(m: &mut IntMatrix, a: usize, b: usize, [p, q, r, s]: [i64; 4]) -> Result<()> {
    for j in 0..m.cols() {
        let (x, y) = (m[(a, j)], m[(b, j)]);
        m[(a, j)] = lin(p, x, q, y)?;
        m[(b, j)] = lin(r, x, s, y)?;
    }
    Ok(())
}

fn mix_cols(m: &mut IntMatrix, a: usize, b: usize, [p, q, r, s]: [i64; 4]) -> Result<()> {
    for i in 0..m.rows() {
        let (x, y) = (m[(i, a)], m[(i, b)]);
        m[(i, a)] = lin(p, x, q, y)?;
        m[(i, b)] = lin(r, x, s, y)?;
    }
    Ok(())
}

fn lin(p: i64, x: i64, q: i64, y: i64) -> Result<i64> {
    ck(ck(p.checked_mul(x))?.checked_add(ck(q.checked_mul(y))?))
}

/// A unimodular `[p, q, r, s]` sending `(a, b)` to `(gcd, 0)`.
fn gcd_step(a: i64, b: i64) -> [i64; 4] {
    if b % a == 0 {
        return [1, 0, -(b / a), 1];
    }
    let e = a.extended_gcd(&b);
    let g = e.gcd;
    [e.x, e.y, -(b / g), a / g]
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<Snf> {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        // bring the smallest nonzero entry of the remaining block to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if d[(i, j)] != 0
                    && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            for i in t + 1..r {
                if d[(i, t)] != 0 {
                    let g = gcd_step(d[(t, t)], d[(i, t)]);
                    mix_rows(&mut d, t, i, g)?;
                    mix_rows(&mut u, t, i, g)?;
                }
            }
            for j in t + 1..c {
                if d[(t, j)] != 0 {
                    let g = gcd_step(d[(t, t)], d[(t, j)]);
                    mix_cols(&mut d, t, j, g)?;
                    mix_cols(&mut v, t, j, g)?;
                }
            }
            if (t + 1..r).any(|i| d[(i, t)] != 0) {
                continue;
            }
            // divisibility of the rest of the block by the pivot
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| d[(i, j)] % d[(t, t)] != 0);
            match bad {
                Some((i, _)) => {
                    add_row(&mut d, t, i, 1)?;
                    add_row(&mut u, t, i, 1)?;
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    Ok(Snf { u, d, v })
}

/// Row-style Hermite normal form: `h = u * m`, `u` unimodular, `h` in row
/// echelon form with positive pivots and entries above each pivot reduced
/// into `[0, pivot)`. Zero rows are moved to the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> Result<IntMatrix> {
    let mut h = m.clone();
    let (r, c) = (h.rows(), h.cols());
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        loop {
            let nz: Vec<usize> = (row..r).filter(|&i| h[(i, col)] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| h[(i, col)].abs()).unwrap();
            h.swap_rows(row, p);
            let mut done = true;
            for i in row + 1..r {
                if h[(i, col)] != 0 {
                    let q = h[(i, col)].div_euclid(h[(row, col)]);
                    add_row(&mut h, i, row, -q)?;
                    if h[(i, col)] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[(row, col)] == 0 {
            continue;
        }
        if h[(row, col)] < 0 {
            negate_row(&mut h, row);
        }
        for i in 0..row {
            let q = h[(i, col)].div_euclid(h[(row, col)]);
            if q != 0 {
                add_row(&mut h, i, row, -q)?;
            }
        }
        row += 1;
    }
    Ok(h)
}

/// A sublattice of Z^n given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    /// Generators as columns: `dim x k`.
    gens: IntMatrix,
}

impl Lattice {
    pub fn new(dim: usize, generators: &[Vec<i64>]) -> Self {
        assert!(generators.iter().all(|g| g.len() == dim));
        Lattice {
            dim,
            gens: IntMatrix::from_fn(dim, generators.len(), |i, j| generators[j][i]),
        }
    }

    pub fn full(dim: usize) -> Self {
        let basis: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(dim, &basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> Vec<Vec<i64>> {
        (0..self.gens.cols()).map(|j| self.gens.column(j)).collect()
    }

    /// A basis in Hermite normal form.
    pub fn basis(&self) -> Result<Vec<Vec<i64>>> {
        let h = hermite_normal_form(&self.gens.transpose())?;
        Ok((0..h.rows())
            .map(|i| h.row(i).to_vec())
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect())
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        assert_eq!(v.len(), self.dim);
        if self.gens.cols() == 0 {
            return Ok(v.iter().all(|&x| x == 0));
        }
        let snf = smith_normal_form(&self.gens)?;
        let mut uv = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut s: i64 = 0;
            for (k, &x) in v.iter().enumerate() {
                s = ck(s.checked_add(ck(snf.u[(i, k)].checked_mul(x))?))?;
            }
            uv.push(s);
        }
        let factors = snf.invariant_factors();
        Ok(uv.iter().enumerate().all(|(i, &x)| match factors.get(i) {
            Some(&d) => x % d == 0,
            None => x == 0,
        }))
    }

    /// Index in Z^n, or `None` if the lattice does not have full rank.
    pub fn index(&self) -> Result<Option<u64>> {
        let snf = smith_normal_form(&self.gens)?;
        let f = snf.invariant_factors();
        if f.len() < self.dim {
            return Ok(None);
        }
        Ok(Some(f.iter().map(|&x| x as u64).product()))
    }

    /// The sum lattice generated by both.
    pub fn join(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let mut g = self.generators();
        g.extend(other.generators());
        Lattice::new(self.dim, &g)
    }
}
