//! Helpers around `BigRational`, the coefficient field for everything in this crate.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3/2"`, `"-7"`, `" 4 / 6 "` into a reduced rational.
pub fn parse(s: &str) -> Result<Rational> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n, d),
        None => (cleaned.as_str(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Lowest-terms rendering with a positive denominator; integers print without `/1`.
pub fn render(r: &Rational) -> String {
    // `Ratio` keeps itself reduced with a positive denominator.
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse("3/2").unwrap(), frac(3, 2));
        assert_eq!(parse(" 4 / 6 ").unwrap(), frac(2, 3));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(render(&parse("6/-4").unwrap()), "-3/2");
        assert_eq!(render(&int(0)), "0");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
