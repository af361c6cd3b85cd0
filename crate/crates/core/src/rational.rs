//! Rational helpers and the `"p/q"` string encoding used in every JSON format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with optional sign. Decimal points are rejected.
pub fn parse_rational(text: &str) -> Result<Q> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = parse_int(num)?;
    let den = parse_int(den)?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(num, den))
}

fn parse_int(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not an integer: {s:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

pub fn fmt_rational(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Nearest f64; huge or tiny values saturate gracefully.
pub fn q_to_f64(v: &Q) -> f64 {
    if let Some(f) = v.to_f64() {
        if f.is_finite() {
            return f;
        }
    }
    // Scale both parts down to avoid overflow of the individual conversions.
    let nb = v.numer().bits() as i64;
    let db = v.denom().bits() as i64;
    let shift = (nb - db).clamp(-1000, 1000);
    let num = v.numer().abs();
    let den = v.denom().clone();
    let (n, d) = if shift > 0 {
        (num, den << (shift as usize))
    } else {
        (num << ((-shift) as usize), den)
    };
    let ratio = (Q::new(n, d)).to_f64().unwrap_or(0.0);
    let mag = ratio * 2f64.powi(shift as i32);
    if v.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Closest rational with denominator a power of two (used to build exact
/// rational approximations of numeric data).
pub fn q_from_f64(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(Q::zero)
}

pub fn serde_vec(values: &[Q]) -> Vec<String> {
    values.iter().map(fmt_rational).collect()
}

pub fn parse_vec(values: &[String]) -> Result<Vec<Q>> {
    values.iter().map(|s| parse_rational(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("-1/2").unwrap(), q_frac(-1, 2));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), q_frac(3, 2));
        assert_eq!(fmt_rational(&q_frac(3, 2)), "3/2");
        assert_eq!(fmt_rational(&q(-7)), "-7");
    }

    #[test]
    fn rejects_decimals_and_zero_denominator() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/-").is_err());
    }

    #[test]
    fn f64_conversion_of_extremes() {
        let big = Q::new(BigInt::from(10).pow(400), BigInt::from(3));
        assert!(q_to_f64(&big).is_infinite() || q_to_f64(&big) > 1e300);
        let tiny = Q::new(BigInt::from(1), BigInt::from(10).pow(30));
        assert!((q_to_f64(&tiny) - 1e-30).abs() < 1e-40);
    }
}
