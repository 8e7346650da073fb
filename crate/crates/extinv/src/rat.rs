//! Exact rational scalars.
//!
//! All arithmetic in this crate runs over `Rat`, an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. Values are
//! rendered and parsed as `p` or `p/q` strings; no floating point anywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as a rational; panics on a zero denominator (test/battery helper).
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(r: &Rat) -> bool {
    r.numer().is_zero()
}

/// Parse an exact rational from `p` or `p/q`. Rejects floats and zero
/// denominators.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::BadRational(s.to_string()));
    }
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|_| Error::BadRational(s.to_string()))?;
    match parts.next() {
        None => Ok(Rat::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::BadRational(s.to_string()))?;
            if denom.is_zero() {
                return Err(Error::BadRational(s.to_string()));
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Canonical `p` / `p/q` rendering (lowest terms, sign on the numerator).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Magnitude part of a rational, used when the sign is printed separately.
pub fn format_rat_abs(r: &Rat) -> String {
    format_rat(&r.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "2/3", "-5/4", "10/15"] {
            let r = parse_rat(s).unwrap();
            let back = parse_rat(&format_rat(&r)).unwrap();
            assert_eq!(r, back);
        }
        assert_eq!(format_rat(&parse_rat("10/15").unwrap()), "2/3");
        assert_eq!(format_rat(&parse_rat("4/-2").unwrap()), "-2");
    }

    #[test]
    fn rejects_bad_input() {
        for s in ["", "1/0", "0.5", "a", "1/2/3", "1e3"] {
            assert!(parse_rat(s).is_err(), "should reject {s:?}");
        }
    }
}
