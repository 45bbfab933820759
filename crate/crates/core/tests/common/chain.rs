//! An independent brute-force evaluation of `chain_torsion` on random
//! based complexes over Q.
//!
//! Determinants use Laplace expansion, and the lifts `b^i` are random
//! combinations of columns instead of pivot columns.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twalex_core::scalars::rational::int;
use twalex_core::scalars::{inverse, rank, Matrix, Rational};
use twalex_core::torsion::{chain_torsion, BasedChainComplex};

type Q = Rational;

pub fn laplace(m: &Matrix<Q>) -> Q {
    let n = m.rows();
    if n == 0 {
        return int(1);
    }
    let mut acc = int(0);
    for j in 0..n {
        if m[(0, j)] == int(0) {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = m.select_rows(&rows).select_cols(&cols);
        let term = m[(0, j)].clone() * laplace(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> (Matrix<Q>, Matrix<Q>) {
    loop {
        let a = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-3..=3)));
        if let Some(inv) = inverse(&a) {
            return (a, inv);
        }
    }
}

/// A complex with `r[i]` elementary pieces `F -> F` in degrees `i, i - 1`
/// and `h[i]` homology classes in degree `i`, in random bases.
pub struct Sample {
    pub complex: BasedChainComplex<Q>,
    pub homology: Vec<Vec<Vec<Q>>>,
}

pub fn sample(rng: &mut ChaCha8Rng, top: usize, acyclic: bool) -> Sample {
    loop {
        let r: Vec<usize> = (0..=top + 1)
            .map(|i| if i == 0 || i > top { 0 } else { rng.gen_range(0..=2) })
            .collect();
        let h: Vec<usize> = (0..=top)
            .map(|_| if acyclic { 0 } else { rng.gen_range(0..=1) })
            .collect();
        let dims: Vec<usize> = (0..=top).map(|i| r[i] + r[i + 1] + h[i]).collect();
        if dims.iter().any(|&d| d == 0 || d > 6) {
            continue;
        }
        // standard basis of C_i: [targets of d_{i+1} | homology | sources of d_i]
        let std_d = |i: usize| {
            Matrix::from_fn(dims[i - 1], dims[i], |row, col| {
                let src = col >= r[i + 1] + h[i] && col - (r[i + 1] + h[i]) == row;
                if src && row < r[i] {
                    int(1)
                } else {
                    int(0)
                }
            })
        };
        let changes: Vec<(Matrix<Q>, Matrix<Q>)> =
            dims.iter().map(|&d| random_invertible(rng, d)).collect();
        let boundaries: Vec<Matrix<Q>> = (1..=top)
            .map(|i| changes[i - 1].0.mul(&std_d(i)).mul(&changes[i].1))
            .collect();
        let homology: Vec<Vec<Vec<Q>>> = (0..=top)
            .map(|i| {
                (0..h[i])
                    .map(|k| {
                        let e: Vec<Q> = (0..dims[i])
                            .map(|c| if c == r[i + 1] + k { int(1) } else { int(0) })
                            .collect();
                        changes[i].0.mul_vec(&e)
                    })
                    .collect()
            })
            .collect();
        let mut complex = BasedChainComplex::new(dims, boundaries).unwrap();
        for (i, hb) in homology.iter().enumerate() {
            complex = complex.with_homology(i, hb.clone()).unwrap();
        }
        return Sample { complex, homology };
    }
}

/// Random vectors `v` in `C_i` with `d_i(v)` a basis of the image.
fn random_lifts(rng: &mut ChaCha8Rng, d: &Matrix<Q>) -> Vec<Vec<Q>> {
    let rk = rank(d);
    loop {
        let lifts: Vec<Vec<Q>> = (0..rk)
            .map(|_| (0..d.cols()).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let images: Vec<Vec<Q>> = lifts.iter().map(|v| d.mul_vec(v)).collect();
        if rank(&Matrix::from_columns(d.rows(), &images)) == rk {
            return lifts;
        }
    }
}

pub fn brute_force(rng: &mut ChaCha8Rng, s: &Sample) -> Q {
    let c = &s.complex;
    let top = c.top_degree();
    let dims = c.dims();
    let lifts: Vec<Vec<Vec<Q>>> = (0..=top + 1)
        .map(|i| match c.boundary(i) {
            Some(d) => random_lifts(rng, d),
            None => Vec::new(),
        })
        .collect();
    let mut tor = int(1);
    let mut alpha = 0;
    let mut beta = 0;
    let mut sign = 0;
    for i in 0..=top {
        let mut cols: Vec<Vec<Q>> = Vec::new();
        if let Some(d) = c.boundary(i + 1) {
            cols.extend(lifts[i + 1].iter().map(|v| d.mul_vec(v)));
        }
        cols.extend(s.homology[i].iter().cloned());
        cols.extend(lifts[i].iter().cloned());
        let det = laplace(&Matrix::from_columns(dims[i], &cols));
        assert_ne!(det, int(0));
        tor = if i % 2 == 0 { tor / det } else { tor * det };
        alpha += dims[i];
        beta += s.homology[i].len();
        sign += alpha * beta;
    }
    if sign % 2 == 1 {
        -tor
    } else {
        tor
    }
}

/// Compares `count` samples against the brute force; returns how many had
/// an odd sign exponent.
pub fn run(seed: u64, count: usize, acyclic: bool) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut odd_signs = 0;
    for n in 0..count {
        let s = sample(&mut rng, 1 + n % 3, acyclic);
        let got = chain_torsion(&s.complex).unwrap();
        assert_eq!(got, brute_force(&mut rng, &s), "sample {n}");
        let betti: Vec<usize> = s.homology.iter().map(Vec::len).collect();
        odd_signs += twalex_core::torsion::sign_exponent(s.complex.dims(), &betti);
    }
    odd_signs
}
