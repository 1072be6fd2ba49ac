//! Exact rationals and their `"p/q"` text form.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

/// `n/d` as an exact rational.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parse `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_q(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Q::new(num, den))
}

/// `"p/q"` in lowest terms, or `"p"` for integers.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn q_to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (smallest numerator magnitude among those), via continued
/// fractions.
pub fn simplest_between(lo: &Q, hi: &Q) -> Q {
    assert!(lo <= hi, "empty interval");
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Q::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &Q, hi: &Q) -> Q {
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if &fl + Q::one() <= *hi {
        return lo.ceil();
    }
    // Same integer part: recurse on the reciprocals of the fractional parts.
    let frac_lo = lo - &fl;
    let frac_hi = hi - &fl;
    let inner = simplest_positive(&frac_hi.recip(), &frac_lo.recip());
    fl + inner.recip()
}

/// Integer square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "square root of a negative number");
    n.sqrt()
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Integer floor and ceiling helpers that keep `BigInt`s.
pub fn floor_int(x: &Q) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil_int(x: &Q) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}
