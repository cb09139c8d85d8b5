//! The scalar type: arbitrary-precision rationals, always in lowest terms
//! with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, the sole scalar type of the crate.
pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational, reduced. Panics on `d == 0` (programmer error).
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "rat() with zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// `r` as i64 when it is a small integer.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    let n = r.numer();
    i64::try_from(n.clone()).ok()
}

/// `base^exp`, allowing negative exponents for nonzero base.
pub fn pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    if exp < 0 {
        assert!(!base.is_zero(), "negative power of zero");
        return pow(&base.recip(), -exp);
    }
    let mut acc = Rat::one();
    let mut b = base.clone();
    let mut e = exp as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Parses the canonical text format: optional sign, decimal integer,
/// optionally followed by `/` and a positive decimal integer.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::BadRational(s.to_string());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num_body = num_str.strip_prefix('-').or_else(|| num_str.strip_prefix('+')).unwrap_or(num_str);
    if num_body.is_empty() || !num_body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let num: BigInt = num_str.parse().map_err(|_| bad())?;
    let den: BigInt = match den_str {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let den: BigInt = d.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator(s.to_string()));
            }
            den
        }
    };
    Ok(Rat::new(num, den))
}

/// Canonical text form, e.g. `-4/7` or `5`.
pub fn format_rat(r: &Rat) -> String {
    debug_assert!(r.denom().is_positive());
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-4/7", "22/7", "-13"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_reduces_to_lowest_terms() {
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert_eq!(format_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(parse_rat("-0").unwrap(), int(0));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "/", "1/", "/2", "1/-2", "1/0", "a", "1.5", "1 /2", "--3"] {
            assert!(parse_rat(s).is_err(), "should reject {s:?}");
        }
    }

    #[test]
    fn pow_handles_negative_exponents() {
        assert_eq!(pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(pow(&int(7), 0), int(1));
        assert_eq!(pow(&int(-2), 3), int(-8));
    }
}
