//! Exact decimal <-> rational conversions for scores and costs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Parses a plain decimal literal (`7.5`, `-0.25`, `10`) exactly.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let numer: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let denom = BigInt::from(10u8).pow(frac_part.len() as u32);
    let value = BigRational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Renders a rational as an exact decimal when it terminates, otherwise as
/// `numer/denom`.
pub fn format_decimal(value: &BigRational) -> String {
    let mut denom = value.denom().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    let two = BigInt::from(2u8);
    let five = BigInt::from(5u8);
    while denom.is_even() {
        denom /= &two;
        twos += 1;
    }
    while (&denom % &five).is_zero() {
        denom /= &five;
        fives += 1;
    }
    if !denom.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let places = twos.max(fives);
    let scaled = value * BigRational::from_integer(BigInt::from(10u8).pow(places));
    debug_assert!(scaled.is_integer());
    let digits = scaled.to_integer().abs().to_string();
    let sign = if value.is_negative() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let places = places as usize;
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    format!("{sign}{int_part}.{frac_part}")
}

pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_decimals() {
        assert_eq!(parse_decimal("7.5"), Some(r(15, 2)));
        assert_eq!(parse_decimal("59.4"), Some(r(297, 5)));
        assert_eq!(parse_decimal("10"), Some(r(10, 1)));
        assert_eq!(parse_decimal("-0.25"), Some(r(-1, 4)));
        assert_eq!(parse_decimal(".5"), Some(r(1, 2)));
        assert_eq!(parse_decimal("1e3"), None);
        assert_eq!(parse_decimal(""), None);
        assert_eq!(parse_decimal("."), None);
    }

    #[test]
    fn formats_decimals() {
        assert_eq!(format_decimal(&r(15, 2)), "7.5");
        assert_eq!(format_decimal(&r(-297, 5)), "-59.4");
        assert_eq!(format_decimal(&r(0, 1)), "0");
        assert_eq!(format_decimal(&r(1, 40)), "0.025");
        assert_eq!(format_decimal(&r(1, 3)), "1/3");
        assert_eq!(format_decimal(&r(-7, 1)), "-7");
    }

    #[test]
    fn round_trip() {
        for s in ["0.1", "3.75", "100", "0.003"] {
            assert_eq!(format_decimal(&parse_decimal(s).unwrap()), s);
        }
    }
}
