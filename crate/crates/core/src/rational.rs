//! Exact rational parsing and integer floor/ceil of `r * k`.

use crate::error::{Error, Result};
use crate::Rational;
use num_integer::Integer;

/// Parses `"0.3"`, `"1/3"`, `"1"` or `".25"` into an exact rational.
///
/// Decimals are read digit by digit, so `"0.3"` becomes exactly `3/10`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| err())?;
        let den: i64 = den.trim().parse().map_err(|_| err())?;
        if den == 0 {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    // 18 fractional digits still fit 10^18 in an i64.
    if frac_part.len() > 18 {
        return Err(err());
    }
    let den = 10i64.pow(frac_part.len() as u32);
    let int_val: i64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| err())? };
    let frac_val: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| err())? };
    let num = int_val
        .checked_mul(den)
        .and_then(|v| v.checked_add(frac_val))
        .ok_or_else(err)?;
    Ok(Rational::new(if neg { -num } else { num }, den))
}

/// `⌊r · k⌋` in integer arithmetic.
pub fn floor_mul(r: Rational, k: usize) -> i64 {
    let num = *r.numer() as i128 * k as i128;
    let den = *r.denom() as i128;
    Integer::div_floor(&num, &den) as i64
}

/// `⌈r · k⌉` in integer arithmetic.
pub fn ceil_mul(r: Rational, k: usize) -> i64 {
    let num = *r.numer() as i128 * k as i128;
    let den = *r.denom() as i128;
    Integer::div_ceil(&num, &den) as i64
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.3").unwrap(), Rational::new(3, 10));
        assert_eq!(parse_rational(".25").unwrap(), Rational::new(1, 4));
        assert_eq!(parse_rational("1").unwrap(), Rational::from_integer(1));
        assert_eq!(parse_rational("1/3").unwrap(), Rational::new(1, 3));
        assert_eq!(parse_rational(" 2/4 ").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("-0.5").unwrap(), Rational::new(-1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", ".", "abc", "1/0", "1.2.3", "0x10", "1e3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn floor_and_ceil_of_point_three_times_four() {
        let r = parse_rational("0.3").unwrap();
        assert_eq!(floor_mul(r, 4), 1);
        assert_eq!(ceil_mul(r, 4), 2);
        // 0.3 * 10 is exactly 3; a float floor would risk 2.
        assert_eq!(floor_mul(r, 10), 3);
        assert_eq!(ceil_mul(r, 10), 3);
    }

    #[test]
    fn formats() {
        assert_eq!(format_rational(Rational::new(4, 2)), "2");
        assert_eq!(format_rational(Rational::new(1, 3)), "1/3");
    }
}
