//! Scalar types shared by the sequence algebra and the operators.
//!
//! Two scalar types are supported: `f64` for numerical work and
//! [`BigRational`] for the exact certificates.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Converts a real. Exact for rationals (binary expansion of the double).
    fn from_f64(v: f64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or_else(|| Value::String(self.to_string()))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(n.to_string())),
            Value::String(s) => parse_real(s),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_f64(v: f64) -> Self {
        <BigRational as FromPrimitive>::from_f64(v).expect("finite real")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs_f64(&self) -> f64 {
        Scalar::to_f64(&self.abs())
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

/// Parses `"p/q"`, an integer, or a finite decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let err = || Error::Parse(s.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Ok(i) = t.parse::<BigInt>() {
        return Ok(BigRational::from_integer(i));
    }
    // Decimal with optional exponent, read digit-exactly.
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac_part.chars().any(|c| !c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits == "-" || digits == "+" || digits.is_empty() {
        return Err(err());
    } else {
        digits
    };
    let numer: BigInt = digits.parse().map_err(|_| err())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(r)
}

/// Parses a decimal or `"p/q"` literal as a double.
pub fn parse_real(s: &str) -> Result<f64> {
    if let Ok(v) = s.trim().parse::<f64>() {
        if v.is_finite() {
            return Ok(v);
        }
    }
    let r = parse_rational(s)?;
    Ok(Scalar::to_f64(&r))
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("7/2").unwrap(), rational(7, 2));
        assert_eq!(parse_rational("-3").unwrap(), rational(-3, 1));
        assert_eq!(parse_rational("0.25").unwrap(), rational(1, 4));
        assert_eq!(parse_rational("-1.5e1").unwrap(), rational(-15, 1));
        assert_eq!(parse_rational("2.5E-1").unwrap(), rational(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn parse_real_accepts_fractions() {
        assert_eq!(parse_real("1/4").unwrap(), 0.25);
        assert_eq!(parse_real("-0.5").unwrap(), -0.5);
        assert!(parse_real("inf").is_err());
    }

    #[test]
    fn rational_json_strings() {
        assert_eq!(rational(5, 1).to_json(), Value::String("5".into()));
        assert_eq!(rational(-31, 3).to_json(), Value::String("-31/3".into()));
        let back = BigRational::from_json(&Value::String("-31/3".into())).unwrap();
        assert_eq!(back, rational(-31, 3));
    }
}
