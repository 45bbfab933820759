use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `3`, `-1/2`, ...
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn render_abs(r: &Rational) -> String {
    render_rational(&r.abs())
}


pub(crate) fn is_neg(r: &Rational) -> bool {
    r.is_negative() && !r.is_zero()
}
