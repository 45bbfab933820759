use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{int, is_neg, render_abs, Rational};
use super::{Field, Ring};
use crate::error::{Error, Result};

/// The cyclotomic field Q(zeta_N), stored as Q[z] modulo the N-th cyclotomic
/// polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    conductor: u64,
    /// Phi_N, lowest degree first, monic.
    modulus: Vec<BigInt>,
}

impl CycloField {
    pub fn new(conductor: u64) -> Result<Arc<Self>> {
        if conductor == 0 {
            return Err(Error::validation("cyclotomic conductor must be positive"));
        }
        if conductor > 4096 {
            return Err(Error::Unsupported(alloc::format!(
                "cyclotomic conductor {conductor} is too large"
            )));
        }
        let modulus = cyclotomic_polynomial(conductor)
            .into_iter()
            .map(BigInt::from)
            .collect();
        Ok(Arc::new(CycloField { conductor, modulus }))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Degree over Q, i.e. Euler's totient of the conductor.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.modulus
    }

    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        if coeffs.len() > d {
            for k in (d..coeffs.len()).rev() {
                if coeffs[k].is_zero() {
                    continue;
                }
                let c = core::mem::replace(&mut coeffs[k], Rational::zero());
                for (i, m) in self.modulus[..d].iter().enumerate() {
                    if !m.is_zero() {
                        coeffs[k - d + i] -= c.clone() * m.clone();
                    }
                }
            }
            coeffs.truncate(d);
        }
        trim(&mut coeffs);
        coeffs
    }
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^n - 1 = prod_{d | n} Phi_d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = div_monic_int(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn div_monic_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &m) in den.iter().enumerate() {
            rem[k + i] -= c * m;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn join(a: &Option<Arc<CycloField>>, b: &Option<Arc<CycloField>>) -> Option<Arc<CycloField>> {
    match (a, b) {
        (Some(x), Some(y)) => {
            assert_eq!(
                x.conductor, y.conductor,
                "mixed cyclotomic conductors in one computation"
            );
            Some(x.clone())
        }
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

/// An element of Q(zeta_N).
///
/// Rational constants may be created without a field; they pick up the field
/// of whatever they are combined with. All non-rational values carry their
/// field, and combining values from different fields panics.
#[derive(Clone)]
pub struct CycloNum {
    field: Option<Arc<CycloField>>,
    /// Coordinates in the power basis 1, z, ..., z^(d-1), trailing zeros
    /// trimmed.
    coeffs: Vec<Rational>,
}

impl CycloNum {
    pub fn from_rational(r: Rational) -> Self {
        let mut coeffs = vec![r];
        trim(&mut coeffs);
        CycloNum {
            field: None,
            coeffs,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(int(v))
    }

    /// Builds `sum c_i z^i`, reducing modulo the cyclotomic polynomial.
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: Vec<Rational>) -> Self {
        CycloNum {
            coeffs: field.reduce(coeffs),
            field: Some(field.clone()),
        }
    }

    /// zeta_N^e for any integer e.
    pub fn zeta_pow(field: &Arc<CycloField>, e: i64) -> Self {
        let e = e.rem_euclid(field.conductor as i64) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        Self::from_coeffs(field, coeffs)
    }

    pub fn zeta(field: &Arc<CycloField>) -> Self {
        Self::zeta_pow(field, 1)
    }

    pub fn field(&self) -> Option<&Arc<CycloField>> {
        self.field.as_ref()
    }

    pub fn with_field(mut self, field: &Arc<CycloField>) -> Self {
        self.field = join(&self.field, &Some(field.clone()));
        self
    }

    /// Power-basis coordinates with trailing zeros trimmed.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `Some((c, k))` if the value is `c * z^k` with a single nonzero
    /// coordinate.
    pub fn single_term(&self) -> Option<(&Rational, usize)> {
        let mut it = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (k, c) = it.next()?;
        if it.next().is_some() {
            None
        } else {
            Some((c, k))
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(CycloNum {
                field: self.field.clone(),
                coeffs: vec![r.recip()],
            });
        }
        let field = self.field.as_ref().expect("irrational value without a field");
        let modulus: Vec<Rational> = field
            .modulus
            .iter()
            .map(|m| Rational::from_integer(m.clone()))
            .collect();
        let inv = poly_inv_mod(&self.coeffs, &modulus)?;
        Some(Self::from_coeffs(field, inv))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inverse().expect("negative power of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }

    /// The Galois automorphism zeta -> zeta^j, gcd(j, N) = 1.
    pub fn galois(&self, j: i64) -> Self {
        let Some(field) = &self.field else {
            return self.clone();
        };
        debug_assert_eq!((j.rem_euclid(field.conductor as i64) as u64).gcd(&field.conductor), 1);
        let mut acc = Self::zero().with_field(field);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + Self::zeta_pow(field, i as i64 * j).scale(c);
            }
        }
        acc
    }

    /// Complex conjugation, zeta -> zeta^(N-1).
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Returns `b` with `self == zeta_N^b`, if any.
    pub fn root_of_unity_exponent(&self, field: &Arc<CycloField>) -> Option<u64> {
        if self.is_one() {
            return Some(0);
        }
        (1..field.conductor).find(|&b| *self == Self::zeta_pow(field, b as i64))
    }

    /// Re-expresses a value of Q(zeta_M) inside Q(zeta_N), M | N, via
    /// zeta_M -> zeta_N^(N/M).
    pub fn embed(&self, target: &Arc<CycloField>) -> Result<Self> {
        let Some(src) = &self.field else {
            return Ok(self.clone().with_field(target));
        };
        if !target.conductor.is_multiple_of(src.conductor) {
            return Err(Error::ConductorMismatch {
                order: src.conductor,
                conductor: target.conductor,
            });
        }
        let step = (target.conductor / src.conductor) as i64;
        let mut acc = Self::zero().with_field(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + Self::zeta_pow(target, i as i64 * step).scale(c);
            }
        }
        Ok(acc)
    }

    /// Canonical text form: a polynomial in `z` with rational coefficients,
    /// highest power first, e.g. `1/2*z^2 - 1`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = is_neg(c);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = render_abs(c);
            match k {
                0 => out.push_str(&mag),
                _ => {
                    if mag != "1" {
                        out.push_str(&mag);
                        out.push('*');
                    }
                    out.push('z');
                    if k > 1 {
                        out.push('^');
                        out.push_str(&alloc::format!("{k}"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// True if the first nonzero coordinate (highest power) is negative.
    pub(crate) fn leading_negative(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_negative())
    }
}

/// The root of unity of order dividing `q` given by `zeta_q^k`, expressed in
/// `field`. Requires `q | N`.
pub fn cyclo_embed_root_of_unity(q: u64, k: i64, field: &Arc<CycloField>) -> Result<CycloNum> {
    if q == 0 || !field.conductor.is_multiple_of(q) {
        return Err(Error::ConductorMismatch {
            order: q,
            conductor: field.conductor,
        });
    }
    let e = k.rem_euclid(q as i64) * (field.conductor / q) as i64;
    Ok(CycloNum::zeta_pow(field, e))
}

// --- polynomial helpers over Q, lowest degree first ---

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let lead_inv = den[dd].recip();
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, m) in den.iter().enumerate() {
            rem[k + i] -= &c * m;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
fn poly_inv_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.into_iter().map(|x| x * &c).collect())
}

// --- trait impls ---

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Zero for CycloNum {
    fn zero() -> Self {
        CycloNum {
            field: None,
            coeffs: Vec::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for CycloNum {
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl<'a> Add<&'a CycloNum> for CycloNum {
    type Output = CycloNum;
    fn add(mut self, rhs: &'a CycloNum) -> CycloNum {
        self.field = join(&self.field, &rhs.field);
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        trim(&mut self.coeffs);
        self
    }
}

impl<'a> Sub<&'a CycloNum> for CycloNum {
    type Output = CycloNum;
    fn sub(mut self, rhs: &'a CycloNum) -> CycloNum {
        self.field = join(&self.field, &rhs.field);
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        trim(&mut self.coeffs);
        self
    }
}

impl<'a> Mul<&'a CycloNum> for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'a CycloNum) -> CycloNum {
        let field = join(&self.field, &rhs.field);
        let prod = poly_mul(&self.coeffs, &rhs.coeffs);
        let coeffs = match &field {
            Some(f) => f.reduce(prod),
            None => prod,
        };
        CycloNum { field, coeffs }
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        self + &rhs
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: CycloNum) -> CycloNum {
        self - &rhs
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        self * &rhs
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(mut self) -> CycloNum {
        for c in &mut self.coeffs {
            *c = -core::mem::replace(c, Rational::zero());
        }
        self
    }
}

impl Ring for CycloNum {}

impl Field for CycloNum {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
}
