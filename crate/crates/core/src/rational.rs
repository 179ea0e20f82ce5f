//! Exact scalar backend.
//!
//! Every measure, kernel and margin in the crate is a [`Rational`]. Decimal
//! literals are converted exactly (digits over a power of ten), and the
//! machine format is always `a/b`, including integers (`1/1`).

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive};

pub type Rational = num_rational::BigRational;

/// Binary floating point with an explicit working precision.
pub type HighFloat = FBig<HalfEven, 2>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `a/b`, an integer, or a decimal literal such as `0.375`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty rational literal".into());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in `{text}`"))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in `{text}`"))?;
        if !den.is_positive() {
            return Err(format!("denominator must be positive in `{text}`"));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(format!("bad decimal literal `{text}`"));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("bad decimal literal `{text}`"));
    }
    let digits = format!("{whole}{frac}");
    let mut num: BigInt = digits.parse().map_err(|_| format!("bad decimal literal `{text}`"))?;
    if negative {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Ok(Rational::new(num, den))
}

/// Lossless `a/b` rendering, used for every machine-readable output.
pub fn to_fraction(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Nearest `f64`, for display only.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// `a/b (0.xxx)`, the human-readable rendering.
pub fn to_display(value: &Rational) -> String {
    if value.is_integer() {
        format!("{} ({})", to_fraction(value), value.numer())
    } else {
        format!("{} ({:.6})", to_fraction(value), to_f64(value))
    }
}

fn to_ibig(value: &BigInt) -> IBig {
    let (sign, bytes) = value.to_bytes_le();
    let magnitude = IBig::from(UBig::from_le_bytes(&bytes));
    if sign == Sign::Minus {
        -magnitude
    } else {
        magnitude
    }
}

/// Rounds `value` to a binary float carrying `precision` significant bits.
pub fn to_high_float(value: &Rational, precision: usize) -> HighFloat {
    let num = HighFloat::from(to_ibig(value.numer()))
        .with_precision(precision)
        .value();
    let den = HighFloat::from(to_ibig(value.denom()))
        .with_precision(precision)
        .value();
    num / den
}

/// `2^exp` as an exact rational (negative exponents allowed).
pub fn pow2(exp: i32) -> Rational {
    let base = BigInt::one() << exp.unsigned_abs() as usize;
    if exp >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

/// `#[serde(with = ...)]` helper writing a rational as `a/b`.
pub mod serde_fraction {
    use super::{to_fraction, Rational};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&to_fraction(value))
    }
}

/// `#[serde(with = ...)]` helper writing a list of rationals as `a/b` strings.
pub mod serde_fraction_vec {
    use super::{to_fraction, Rational};
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&to_fraction(v))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("6/8").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("0.375").unwrap(), ratio(3, 8));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("1").unwrap(), int(1));
        assert_eq!(parse_rational("1.").unwrap(), int(1));
        assert_eq!(parse_rational("-0.25").unwrap(), ratio(-1, 4));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "a/b", "1/0", "1/-2", "0.5.5", "1e-3", ".", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad} should not parse");
        }
    }

    #[test]
    fn fraction_form_is_always_a_over_b() {
        assert_eq!(to_fraction(&int(1)), "1/1");
        assert_eq!(to_fraction(&int(0)), "0/1");
        assert_eq!(to_fraction(&ratio(-2, 4)), "-1/2");
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-2), ratio(1, 4));
        assert_eq!(pow2(0), int(1));
    }

    #[test]
    fn high_float_matches_f64() {
        let x = to_high_float(&ratio(2, 3), 128);
        assert!((x.to_f64().value() - 2.0 / 3.0).abs() < 1e-16);
    }

    proptest! {
        #[test]
        fn fraction_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
            let r = ratio(num, den);
            prop_assert_eq!(parse_rational(&to_fraction(&r)).unwrap(), r);
        }

        #[test]
        fn decimal_is_exact(whole in 0u32..1000, frac in 0u32..10_000) {
            let text = format!("{whole}.{frac:04}");
            let expected = int(whole as i64) + ratio(frac as i64, 10_000);
            prop_assert_eq!(parse_rational(&text).unwrap(), expected);
        }
    }
}
