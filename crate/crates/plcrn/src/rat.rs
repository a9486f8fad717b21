//! Exact rational scalars: parsing, formatting, float conversion.
//!
//! All structural decisions in this crate (ranks, independence verdicts)
//! are made over arbitrary-precision rationals; floats only enter through
//! rate constants and the numeric solvers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, the scalar for all exact matrix work.
pub type Rat = BigRational;

/// Shorthand for a rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact conversion of a finite float into a rational.
///
/// Every finite f64 is a dyadic rational, so no rounding occurs.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Nearest-float conversion of a rational.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p`, `p/q`, or a terminating decimal such as `-1.25`.
///
/// Returns `None` on malformed input or a zero denominator.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let (sign, digits) = match int_part.as_bytes().first() {
            Some(b'-') => (-1, &int_part[1..]),
            Some(b'+') => (1, &int_part[1..]),
            _ => (1, int_part),
        };
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let whole: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        let frac: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let value = Rat::new(whole * &scale + frac, scale);
        return Some(if sign < 0 { -value } else { value });
    }
    let n: BigInt = text.parse().ok()?;
    Some(Rat::from_integer(n))
}

/// Formats a rational in lowest terms as `p` or `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when the rational is strictly positive.
pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_decimals() {
        assert_eq!(parse_rat("3").unwrap(), rat_int(3));
        assert_eq!(parse_rat("-7").unwrap(), rat_int(-7));
        assert_eq!(parse_rat("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rat("-2/6").unwrap(), rat(-1, 3));
        assert_eq!(parse_rat("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rat(" 2/3 ").unwrap(), rat(2, 3));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_rat("").is_none());
        assert!(parse_rat("x").is_none());
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("1.").is_none());
        assert!(parse_rat("1.2.3").is_none());
        assert!(parse_rat("1e3").is_none());
    }

    #[test]
    fn float_round_trip_is_exact() {
        for x in [0.5, -0.125, 3.0, 1.0 / 3.0, 0.1] {
            let r = rat_from_f64(x).unwrap();
            assert_eq!(rat_to_f64(&r), x);
        }
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rat(&rat(2, 4)), "1/2");
        assert_eq!(format_rat(&rat_int(-3)), "-3");
    }
}
