use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::cyclo::CycloNum;
use super::laurent::{LaurentPoly, Monomial};
use super::{Field, Ring};

/// A fraction of Laurent polynomials.
///
/// The denominator is kept as an ordinary polynomial whose lexicographically
/// smallest term has coefficient 1. Fractions are not fully reduced in
/// several variables; common factors are stripped when one side divides the
/// other, and in one variable by a polynomial gcd. Equality is decided by
/// cross-multiplication.
#[derive(Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// `None` if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(RatFunc { num, den }.normalized())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn into_parts(self) -> (LaurentPoly, LaurentPoly) {
        (self.num, self.den)
    }

    pub fn inverse(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn num_vars_used(&self) -> usize {
        self.num.num_vars_used().max(self.den.num_vars_used())
    }

    pub fn substitute_scale(&self, scales: &[CycloNum]) -> Self {
        Self::new(
            self.num.substitute_scale(scales),
            self.den.substitute_scale(scales),
        )
        .expect("substitution by units keeps the denominator nonzero")
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        self.cancel_common();
        let content = self.den.monomial_content().unwrap().inv();
        self.num = self.num.shift(&content);
        self.den = self.den.shift(&content);
        let c = self.den.trailing().unwrap().1.clone();
        if !c.is_one() {
            let inv = c.inverse().unwrap();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    fn cancel_common(&mut self) {
        if self.den.is_monomial() {
            return;
        }
        if self.num_vars_used() <= 1 {
            let g = univariate_gcd(&self.num, &self.den);
            if g.num_terms() > 1 {
                self.num = self.num.div_exact(&g).expect("gcd divides numerator");
                self.den = self.den.div_exact(&g).expect("gcd divides denominator");
            }
            return;
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = LaurentPoly::one();
        } else if let Some(q) = self.den.div_exact(&self.num) {
            self.num = LaurentPoly::one();
            self.den = q;
        }
    }

    /// Canonical text: `num`, or `num/den` with parentheses around
    /// compound parts, e.g. `(t^2 - t + 1)/(t - 1)`.
    pub fn render(&self, nvars: usize) -> String {
        render_fraction(&self.num, &self.den, nvars)
    }
}

pub(crate) fn render_fraction(num: &LaurentPoly, den: &LaurentPoly, nvars: usize) -> String {
    let n = num.render(nvars);
    if den.is_one() {
        return n;
    }
    let d = den.render(nvars);
    let wrap = |s: String| {
        if s.contains(' ') || s.contains('*') {
            format!("({s})")
        } else {
            s
        }
    };
    format!("{}/{}", wrap(n), wrap(d))
}

/// Decides `f == g` by comparing `f.num * g.den` with `g.num * f.den`.
pub fn ratfunc_equal(f: &RatFunc, g: &RatFunc) -> bool {
    f.num.clone() * &g.den == g.num.clone() * &f.den
}

fn to_dense(p: &LaurentPoly) -> Vec<CycloNum> {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exp(0) as usize;
        if out.len() <= e {
            out.resize(e + 1, CycloNum::zero());
        }
        out[e] = c.clone();
    }
    out
}

fn from_dense(v: &[CycloNum]) -> LaurentPoly {
    LaurentPoly::from_terms(
        v.iter()
            .enumerate()
            .map(|(e, c)| (Monomial::new(alloc::vec![e as i64]), c.clone())),
    )
}

fn trim(v: &mut Vec<CycloNum>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn dense_rem(a: &[CycloNum], b: &[CycloNum]) -> Vec<CycloNum> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b[db].inverse().unwrap();
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap().clone() * &lead_inv;
        for (i, x) in b.iter().enumerate() {
            let v = core::mem::replace(&mut rem[k + i], CycloNum::zero()) - &(c.clone() * x);
            rem[k + i] = v;
        }
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut rem);
    rem
}

/// Monic gcd of two univariate polynomials (in `t1`) after stripping their
/// monomial content.
fn univariate_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let strip = |p: &LaurentPoly| p.shift(&p.monomial_content().unwrap().inv());
    let mut x = to_dense(&strip(a));
    let mut y = to_dense(&strip(b));
    while !y.is_empty() {
        let r = dense_rem(&x, &y);
        x = core::mem::replace(&mut y, r);
    }
    let lead_inv = x.last().unwrap().inverse().unwrap();
    let monic: Vec<CycloNum> = x.iter().map(|c| c.clone() * &lead_inv).collect();
    from_dense(&monic)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        ratfunc_equal(self, other)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(0))
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }
}

impl<'a> Add<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(self.num + &rhs.num, self.den).unwrap();
        }
        let num = self.num * &rhs.den + &(rhs.num.clone() * &self.den);
        RatFunc::new(num, self.den * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        RatFunc::new(self.num * &rhs.num, self.den * &rhs.den).unwrap()
    }
}

impl<'a> Div<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero.
    fn div(self, rhs: &'a RatFunc) -> RatFunc {
        RatFunc::new(self.num * &rhs.den, self.den * &rhs.num).expect("division by zero")
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Ring for RatFunc {}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
}
