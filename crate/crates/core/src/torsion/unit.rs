use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::ratfunc::render_fraction;
use crate::scalars::{CycloField, CycloNum, Lattice, LaurentPoly, Monomial, RatFunc};

/// Units `+-zeta_N^b t^a` with `a` in a sublattice of `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    pub allow_sign: bool,
    pub root_order: u64,
    pub lattice: Lattice,
}

impl UnitGroup {
    pub fn new(root_order: u64, lattice: Lattice) -> Self {
        UnitGroup {
            allow_sign: true,
            root_order,
            lattice,
        }
    }

    pub fn union(&self, other: &UnitGroup) -> UnitGroup {
        UnitGroup {
            allow_sign: self.allow_sign || other.allow_sign,
            root_order: self.root_order.lcm(&other.root_order),
            lattice: self.lattice.join(&other.lattice),
        }
    }

    /// Whether `c` is `zeta^b`, or `-zeta^b` when signs are allowed.
    pub fn contains_scalar(&self, c: &CycloNum) -> bool {
        let n = self.root_order as i64;
        c.pow(n).is_one() || (self.allow_sign && c.pow(2 * n).is_one())
    }
}

/// A nonzero torsion value together with its indeterminacy.
#[derive(Debug, Clone)]
pub struct TorsionValue {
    pub value: RatFunc,
    pub units: UnitGroup,
}

impl TorsionValue {
    pub fn new(value: RatFunc, units: UnitGroup) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::Internal(String::from("torsion value is zero")));
        }
        Ok(TorsionValue { value, units })
    }

    pub fn num_vars(&self) -> usize {
        self.units.lattice.dim()
    }

    /// Product of values; the units of both are allowed.
    pub fn mul(&self, other: &TorsionValue) -> TorsionValue {
        TorsionValue {
            value: self.value.clone() * &other.value,
            units: self.units.union(&other.units),
        }
    }

    /// A representative chosen for display: monomial content stripped from
    /// numerator and denominator, the denominator's leading coefficient made
    /// 1, and the numerator's leading coefficient simplified by a unit
    /// scalar.
    pub fn normalized(&self) -> (LaurentPoly, LaurentPoly) {
        let strip = |p: &LaurentPoly| p.shift(&p.monomial_content().unwrap().inv());
        let mut num = strip(self.value.num());
        let mut den = strip(self.value.den());
        let lead = den.leading().unwrap().1.inverse().unwrap();
        num = num.scale(&lead);
        den = den.scale(&lead);
        let c = num.leading().unwrap().1.clone();
        let u = best_unit(&c, &self.units);
        (num.scale(&u), den)
    }

    /// Canonical text of [`normalized`](Self::normalized), e.g.
    /// `(t^2 - t + 1)/(t - 1)`.
    pub fn render(&self) -> String {
        let (num, den) = self.normalized();
        render_fraction(&num, &den, self.num_vars())
    }
}

/// Picks `u` in the unit scalars making `u * c` as simple as possible:
/// fewest terms, then rational and positive.
fn best_unit(c: &CycloNum, units: &UnitGroup) -> CycloNum {
    let key = |x: &CycloNum| {
        let terms = x.coeffs().iter().filter(|r| !r.is_zero()).count();
        let rational_pos = x.as_rational().is_some_and(|r| r > num_rational::BigRational::zero());
        (terms, !rational_pos, x.coeffs().len())
    };
    let mut candidates = Vec::new();
    match c.field() {
        Some(f) if units.root_order.is_multiple_of(f.conductor()) || f.conductor() % units.root_order == 0 => {
            let n = f.conductor().min(units.root_order) as i64;
            let step = f.conductor() as i64 / n;
            for b in 0..n {
                candidates.push(CycloNum::zeta_pow(f, b * step));
            }
        }
        _ => candidates.push(CycloNum::one()),
    }
    if units.allow_sign {
        let neg: Vec<CycloNum> = candidates.iter().map(|u| -u.clone()).collect();
        candidates.extend(neg);
    }
    candidates
        .into_iter()
        .min_by_key(|u| key(&(u.clone() * c)))
        .unwrap()
}

/// The unit `coefficient * t^monomial` relating two torsion values.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitWitness {
    pub coefficient: CycloNum,
    pub monomial: Monomial,
}

impl UnitWitness {
    pub fn render(&self, nvars: usize) -> String {
        LaurentPoly::term(self.monomial.clone(), self.coefficient.clone()).render(nvars)
    }
}

/// Decides whether `x = u * y` for a unit `u` of the joint unit group and
/// returns `u`.
///
/// With `P = num_x den_y` and `Q = num_y den_x` the only candidate is the
/// ratio of leading terms, so a single comparison `P == u Q` decides.
pub fn equal_up_to_unit(x: &TorsionValue, y: &TorsionValue) -> Result<Option<UnitWitness>> {
    if x.value.is_zero() || y.value.is_zero() {
        return Err(Error::Internal(String::from("comparing a zero torsion value")));
    }
    let units = x.units.union(&y.units);
    let (xv, yv) = common_field(&x.value, &y.value)?;
    let p = xv.num().clone() * yv.den();
    let q = yv.num().clone() * xv.den();
    let (mp, cp) = p.leading().unwrap();
    let (mq, cq) = q.leading().unwrap();
    let a = mp.div(mq);
    let c = cp.clone() * &cq.inverse().unwrap();
    if p != q.shift(&a).scale(&c) {
        return Ok(None);
    }
    if !units.contains_scalar(&c) {
        return Ok(None);
    }
    if !units.lattice.contains(&a.padded(units.lattice.dim()))? {
        return Ok(None);
    }
    Ok(Some(UnitWitness {
        coefficient: c,
        monomial: a,
    }))
}

fn conductor_of(f: &RatFunc) -> u64 {
    [f.num(), f.den()]
        .into_iter()
        .flat_map(|p| p.terms())
        .filter_map(|(_, c)| c.field().map(|k| k.conductor()))
        .fold(1, |a, b| a.lcm(&b))
}

/// Both values re-expressed over the smallest cyclotomic field holding them.
fn common_field(x: &RatFunc, y: &RatFunc) -> Result<(RatFunc, RatFunc)> {
    let (a, b) = (conductor_of(x), conductor_of(y));
    if a == b {
        return Ok((x.clone(), y.clone()));
    }
    let field = CycloField::new(a.lcm(&b))?;
    let embed = |f: &RatFunc| -> Result<RatFunc> {
        let lift = |p: &LaurentPoly| -> Result<LaurentPoly> {
            let terms = p
                .terms()
                .map(|(m, c)| Ok((m.clone(), c.embed(&field)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(LaurentPoly::from_terms(terms))
        };
        RatFunc::new(lift(f.num())?, lift(f.den())?)
            .ok_or_else(|| Error::Internal(String::from("zero denominator after embedding")))
    };
    Ok((embed(x)?, embed(y)?))
}

/// Whether `f` times some unit of `Z^n` lies in `Q(zeta)(t^L)`: all
/// exponents of the numerator, respectively the denominator, agree modulo
/// `L`, and so do the two classes.
pub fn supported_in_lattice(f: &RatFunc, lattice: &Lattice) -> Result<bool> {
    let n = lattice.dim();
    let base = f.num().leading().unwrap().0.clone();
    for p in [f.num(), f.den()] {
        for (m, _) in p.terms() {
            if !lattice.contains(&m.div(&base).padded(n))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse::parse_ratfunc;
    use alloc::vec;

    fn tv(s: &str, n: u64) -> TorsionValue {
        let f = CycloField::new(n).unwrap();
        TorsionValue::new(parse_ratfunc(s, Some(&f), 1).unwrap(), UnitGroup::new(n, Lattice::full(1)))
            .unwrap()
    }

    #[test]
    fn unit_comparisons() {
        let x = tv("(t^2 - t + 1)/(t - 1)", 1);
        let y = tv("-t^3*(t^2 - t + 1)/(t - 1)", 1);
        let w = equal_up_to_unit(&y, &x).unwrap().unwrap();
        assert_eq!(w.render(1), "-t^3");
        assert!(equal_up_to_unit(&tv("t^2 - t + 1", 1), &tv("t^2 + t + 1", 1))
            .unwrap()
            .is_none());
        let w = equal_up_to_unit(&x, &x).unwrap().unwrap();
        assert_eq!(w.render(1), "1");
        // 2 is not a unit
        assert!(equal_up_to_unit(&tv("2*t", 1), &tv("t", 1)).unwrap().is_none());
    }

    #[test]
    fn roots_of_unity_and_lattices() {
        let a = tv("z*(t - z)", 3);
        let b = tv("t - z", 3);
        let w = equal_up_to_unit(&a, &b).unwrap().unwrap();
        assert_eq!(w.render(1), "z");

        let f = CycloField::new(1).unwrap();
        let even = UnitGroup::new(1, Lattice::new(1, &[vec![2]]));
        let v = |s: &str| TorsionValue::new(parse_ratfunc(s, Some(&f), 1).unwrap(), even.clone()).unwrap();
        assert!(equal_up_to_unit(&v("t^2 + 1"), &v("t^4 + t^2")).unwrap().is_some());
        assert!(equal_up_to_unit(&v("t^2 + 1"), &v("t^3 + t")).unwrap().is_none());
    }

    #[test]
    fn values_from_different_fields() {
        let a = tv("(t^2 - t + 1)/(t - 1)", 1);
        let b = tv("z^3*(t^2 - t + 1)/(t - 1)", 4);
        assert_eq!(equal_up_to_unit(&b, &a).unwrap().unwrap().render(1), "-z");
        assert!(equal_up_to_unit(&tv("t - z", 3), &tv("t - z", 4)).unwrap().is_none());
    }

    #[test]
    fn display_normalization() {
        assert_eq!(tv("(-t^2 + t - 1)/(-t + 1)", 1).render(), "(t^2 - t + 1)/(t - 1)");
        assert_eq!(tv("1/(t^-1 - 1)", 1).render(), "1/(t - 1)");
        assert_eq!(tv("-t^5", 1).render(), "1");
        assert_eq!(tv("z^2*t - z", 4).render(), "t + z");
    }

    #[test]
    fn lattice_support() {
        let even = Lattice::new(1, &[vec![2]]);
        let f = parse_ratfunc("(t^4 + t^2 + 1)/(t^2 - 1)", None, 1).unwrap();
        assert!(supported_in_lattice(&f, &even).unwrap());
        let f = parse_ratfunc("(t^4 + t^2 + 1)/(t^3 - t)", None, 1).unwrap();
        assert!(!supported_in_lattice(&f, &even).unwrap());
        let g = parse_ratfunc("(t^2 - t + 1)/(t - 1)", None, 1).unwrap();
        assert!(!supported_in_lattice(&g, &Lattice::new(1, &[vec![2]])).unwrap());
    }
}
