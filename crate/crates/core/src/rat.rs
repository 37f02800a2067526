//! Exact rational scalars.
//!
//! Twist exponents and segment endpoints are exact rationals; nothing in the
//! engine touches floating point. Wire formats render rationals as
//! decimal-free strings `"p"` or `"p/q"`.

use num_rational::Rational64;
use num_traits::Signed;

use crate::error::{Error, Result};

pub type Rat = Rational64;

/// `n/d` as an exact rational in lowest terms. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rational64::new(n, d)
}

pub fn rat_int(n: i64) -> Rat {
    Rational64::from_integer(n)
}

/// Parses `"p"` or `"p/q"`. No whitespace, no decimals.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::BadRational(s.to_string());
    let mut parts = s.splitn(2, '/');
    let num: i64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    match parts.next() {
        None => Ok(Rational64::from_integer(num)),
        Some(den) => {
            let den: i64 = den.parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(num, den))
        }
    }
}

pub fn format_rat(r: Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when `r` lies on the half-integer grid (denominator 1 or 2).
pub fn is_half_integral(r: Rat) -> bool {
    *r.denom() == 1 || *r.denom() == 2
}

pub fn is_nonnegative(r: Rat) -> bool {
    !r.is_negative()
}
