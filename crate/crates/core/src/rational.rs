//! Exact rational numbers and their text forms.
//!
//! Every quantity in this crate is an exact [`BigRational`]. Inputs may be
//! written as fractions (`"3/10"`) or decimals (`"0.3"`, `"3e-1"`); canonical
//! output is always the reduced fraction.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses a fraction (`"p/q"`), an integer, or a decimal with optional
/// exponent into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::ParseRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{whole}{frac}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac.len() as i64;
    if scale.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    let ten = Rational::from_integer(BigInt::from(10));
    let mut power = Rational::one();
    for _ in 0..scale.unsigned_abs() {
        power *= &ten;
    }
    if scale >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    Ok(if negative { -value } else { value })
}

/// Canonical text: `"0"`, `"1"`, `"3/10"`.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Decimal rendering. Exact when the expansion terminates within
/// `max_digits` fractional digits, otherwise truncated and suffixed `...`.
pub fn format_decimal(value: &Rational, max_digits: usize) -> String {
    let mut out = String::new();
    if value.is_negative() {
        out.push('-');
    }
    let abs = value.abs();
    let den = abs.denom().clone();
    let whole = abs.numer() / &den;
    let mut rem = abs.numer() % &den;
    write!(out, "{whole}").unwrap();
    if rem.is_zero() {
        return out;
    }
    out.push('.');
    let ten = BigInt::from(10);
    for _ in 0..max_digits {
        rem *= &ten;
        let digit = &rem / &den;
        rem %= &den;
        write!(out, "{digit}").unwrap();
        if rem.is_zero() {
            return out;
        }
    }
    out.push_str("...");
    out
}

pub(crate) fn in_unit_interval(value: &Rational) -> bool {
    !value.is_negative() && *value <= Rational::one()
}

pub(crate) fn max_of<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a >= b {
        a
    } else {
        b
    }
}

pub(crate) fn min_of<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a <= b {
        a
    } else {
        b
    }
}

pub(crate) fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/10").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("0.3").unwrap(), rat(3, 10));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("1").unwrap(), int(1));
        assert_eq!(parse_rational("3e-1").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "0.3.4", "1e", ".", "--1", "1/x"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&rat(1, 5), 12), "0.2");
        assert_eq!(format_decimal(&int(1), 12), "1");
        assert_eq!(format_decimal(&rat(1, 3), 4), "0.3333...");
        assert_eq!(format_decimal(&rat(-7, 4), 12), "-1.75");
        assert_eq!(format_rational(&rat(6, 20)), "3/10");
    }
}
