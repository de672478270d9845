//! Exact parsing of decimal and fractional literals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Parses `-1.25`, `3`, `+0.5`, `1/3` or `2.5e-3` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let bad = || format!("`{text}` is not a decimal or fraction");
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num = parse_rational(num)?;
        let den = parse_rational(den)?;
        if den.is_zero() {
            return Err(format!("`{text}` has a zero denominator"));
        }
        return Ok(num / den);
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(at) => (&t[..at], t[at + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let all = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let power = (0..scale.unsigned_abs()).fold(BigRational::one(), |acc, _| acc * &ten);
    value = if scale >= 0 {
        value * power
    } else {
        value / power
    };
    Ok(if negative { -value } else { value })
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("0.1").unwrap(), r(1, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), r(-5, 4));
        assert_eq!(parse_rational("+3").unwrap(), r(3, 1));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert_eq!(parse_rational("7.").unwrap(), r(7, 1));
        assert_eq!(parse_rational("2.5e-3").unwrap(), r(1, 400));
        assert_eq!(parse_rational("1E2").unwrap(), r(100, 1));
        assert_eq!(parse_rational("-2/6").unwrap(), r(-1, 3));
    }

    #[test]
    fn malformed_input_is_rejected() {
        for bad in [
            "", "-", ".", "1..2", "abc", "1/0", "0x10", "1e", "nan", "1,5",
        ] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&r(6, 3)), "2");
        assert_eq!(format_rational(&r(-3, 6)), "-1/2");
    }
}
