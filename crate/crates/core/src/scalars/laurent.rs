use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::cyclo::CycloNum;
use super::Ring;

/// Exponent vector of a Laurent monomial `t1^e1 * ... * tn^en`.
///
/// Trailing zero exponents are trimmed, so the same monomial has one
/// representation regardless of the number of variables in play. Ordering is
/// lexicographic on the zero-padded vectors.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<i64>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(i: usize) -> Self {
        let mut v = alloc::vec![0; i + 1];
        v[i] = 1;
        Monomial(v)
    }

    pub fn exp(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    /// Exponents padded with zeros to `n` entries.
    pub fn padded(&self, n: usize) -> Vec<i64> {
        (0..n.max(self.0.len())).map(|i| self.exp(i)).collect()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exp(i) - other.exp(i)).collect())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exp(i).min(other.exp(i))).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A multivariate Laurent polynomial in `t1, ..., tn` with coefficients in
/// Q(zeta_N). No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, CycloNum>,
}

impl LaurentPoly {
    pub fn constant(c: CycloNum) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(CycloNum::from_int(v))
    }

    pub fn term(m: Monomial, c: CycloNum) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, CycloNum::one())
    }

    /// The variable `t_{i+1}` (0-based index).
    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, CycloNum)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = core::mem::replace(old, CycloNum::zero()) + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CycloNum)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> CycloNum {
        self.terms.get(m).cloned().unwrap_or_else(CycloNum::zero)
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Monomial, &CycloNum)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing(&self) -> Option<(&Monomial, &CycloNum)> {
        self.terms.iter().next()
    }

    /// Highest variable index in use plus one.
    pub fn num_vars_used(&self) -> usize {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    /// Componentwise minimum of the exponents, i.e. the largest monomial
    /// dividing every term. `None` for the zero polynomial.
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_nonnegative)
    }

    pub fn as_constant(&self) -> Option<CycloNum> {
        match self.terms.len() {
            0 => Some(CycloNum::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Multiplies by the monomial `t^m`.
    pub fn shift(&self, m: &Monomial) -> Self {
        if m.is_one() {
            return self.clone();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self;
        }
        acc
    }

    /// The substitution `t_i -> c_i * t_i`.
    pub fn substitute_scale(&self, scales: &[CycloNum]) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut c = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e != 0 {
                    c = c * &scales[i].pow(e);
                }
            }
            (m.clone(), c)
        }))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&CycloNum) -> CycloNum) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Exact quotient `self / g` in the Laurent ring, or `None` when `g` does
    /// not divide `self`.
    pub fn div_exact(&self, g: &LaurentPoly) -> Option<LaurentPoly> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mf = self.monomial_content().unwrap();
        let mg = g.monomial_content().unwrap();
        let q = poly_div_exact(&self.shift(&mf.inv()), &g.shift(&mg.inv()))?;
        Some(q.shift(&mf.div(&mg)))
    }

    /// Canonical text form in the variables `t` (one variable) or
    /// `t1, ..., tn`, highest term first.
    pub fn render(&self, nvars: usize) -> String {
        let nvars = nvars.max(self.num_vars_used());
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono = render_monomial(m, nvars);
            let (neg, body) = render_term(c, &mono);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

pub(crate) fn var_name(i: usize, nvars: usize) -> String {
    if nvars <= 1 {
        String::from("t")
    } else {
        format!("t{}", i + 1)
    }
}

fn render_monomial(m: &Monomial, nvars: usize) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = var_name(i, nvars);
        parts.push(if e == 1 { name } else { format!("{name}^{e}") });
    }
    parts.join("*")
}

/// Splits a term into a sign and its magnitude text.
fn render_term(c: &CycloNum, mono: &str) -> (bool, String) {
    if let Some((r, k)) = c.single_term() {
        let neg = super::rational::is_neg(r);
        let mag = super::rational::render_abs(r);
        let mut factors: Vec<String> = Vec::new();
        if mag != "1" || (k == 0 && mono.is_empty()) {
            factors.push(mag);
        }
        match k {
            0 => {}
            1 => factors.push(String::from("z")),
            _ => factors.push(format!("z^{k}")),
        }
        if !mono.is_empty() {
            factors.push(String::from(mono));
        }
        (neg, factors.join("*"))
    } else if mono.is_empty() {
        let neg = c.leading_negative();
        let body = if neg { (-c.clone()).render() } else { c.render() };
        if neg {
            (true, format!("({body})"))
        } else {
            (false, format!("({body})"))
        }
    } else {
        (false, format!("({})*{}", c.render(), mono))
    }
}

/// Division of ordinary polynomials (nonnegative exponents) by repeated
/// elimination of the lexicographically leading term.
fn poly_div_exact(f: &LaurentPoly, g: &LaurentPoly) -> Option<LaurentPoly> {
    let (lm, lc) = g.leading()?;
    let (lm, lc_inv) = (lm.clone(), lc.inverse()?);
    let mut rem = f.clone();
    let mut quot = LaurentPoly::zero();
    while let Some((m, c)) = rem.leading() {
        let qm = m.div(&lm);
        if !qm.is_nonnegative() {
            return None;
        }
        let qc = c.clone() * &lc_inv;
        let t = LaurentPoly::term(qm, qc);
        rem = rem - &(t.clone() * g);
        quot = quot + &t;
    }
    Some(quot)
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(0))
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl<'a> Add<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: &'a LaurentPoly) -> LaurentPoly {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
        self
    }
}

impl<'a> Sub<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: &'a LaurentPoly) -> LaurentPoly {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
        self
    }
}

impl<'a> Mul<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2);
            }
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -core::mem::replace(c, CycloNum::zero());
        }
        self
    }
}

impl Ring for LaurentPoly {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::cyclo::CycloField;
    use crate::scalars::rational::rat;

    fn t() -> LaurentPoly {
        LaurentPoly::var(0)
    }

    #[test]
    fn monomial_order_pads_with_zeros() {
        let a = Monomial::new(alloc::vec![-1]);
        assert!(a < Monomial::one());
        assert!(Monomial::new(alloc::vec![0, 1]) > Monomial::one());
        assert!(Monomial::new(alloc::vec![1]) > Monomial::new(alloc::vec![0, 5]));
        assert_eq!(Monomial::new(alloc::vec![2, 0, 0]), Monomial::new(alloc::vec![2]));
    }

    #[test]
    fn render_examples() {
        let one = LaurentPoly::one();
        let p = t().pow(2) - &t() + &one;
        assert_eq!(p.render(1), "t^2 - t + 1");
        assert_eq!((t() - &one).render(1), "t - 1");
        assert_eq!(LaurentPoly::zero().render(1), "0");

        let f = CycloField::new(5).unwrap();
        let c = CycloNum::from_coeffs(&f, alloc::vec![rat(-1, 1), rat(0, 1), rat(1, 2)]);
        let m = Monomial::new(alloc::vec![2, -1]);
        assert_eq!(LaurentPoly::term(m, c).render(2), "(1/2*z^2 - 1)*t1^2*t2^-1");

        let q = LaurentPoly::term(Monomial::var(0), -CycloNum::zeta(&f))
            + &LaurentPoly::from_int(-3);
        assert_eq!(q.render(1), "-z*t - 3");
    }

    #[test]
    fn exact_division() {
        let one = LaurentPoly::one();
        let a = t().pow(2) - &one;
        let b = t() - &one;
        assert_eq!(a.div_exact(&b), Some(t() + &one));
        assert_eq!(b.div_exact(&(t() + &one)), None);

        let s = LaurentPoly::var(1);
        let u = (t() * &s - &one).shift(&Monomial::new(alloc::vec![-2, 1]));
        let v = t() + &s.pow(3);
        let prod = u.clone() * &v;
        assert_eq!(prod.div_exact(&v), Some(u.clone()));
        assert_eq!(prod.div_exact(&u), Some(v));
    }

    #[test]
    fn substitution_scales_variables() {
        let one = LaurentPoly::one();
        let p = t().pow(2) - &t() + &one;
        let q = p.substitute_scale(&[CycloNum::from_int(-1)]);
        assert_eq!(q.render(1), "t^2 + t + 1");
    }
}
