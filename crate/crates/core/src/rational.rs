//! Exact rational numbers and their text forms.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Arbitrary precision rational, always kept reduced.
pub type Rational = num_rational::BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Reduced `p/q` form, `q > 0`. Integers keep the `/1` suffix.
pub fn to_fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `p/q` or a plain integer. Returns `None` on malformed input or a
/// zero denominator.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = parse_int(n)?;
            let d: BigInt = parse_int(d)?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(parse_int(text)?)),
    }
}

fn parse_int(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Decimal rendering rounded half away from zero to `places` digits.
pub fn to_decimal_string(value: &Rational, places: usize) -> String {
    let negative = value.is_negative();
    let abs = value.abs();
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = abs.numer() * &scale;
    let (mut q, r) = scaled.div_rem(abs.denom());
    if &r * 2 >= *abs.denom() {
        q += 1;
    }
    let (int_part, frac_part) = q.div_rem(&scale);
    let sign = if negative && !(int_part.is_zero() && frac_part.is_zero()) { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = format!("{frac_part}");
    let pad = "0".repeat(places - frac.len());
    format!("{sign}{int_part}.{pad}{frac}")
}
