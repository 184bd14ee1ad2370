//! Parsing and rendering of exact rational numbers.
//!
//! Valuations and every derived metric are kept as exact rationals end to
//! end. Numbers in text formats may be written as integers (`3`), fractions
//! (`7/2`), or decimals (`1.25`); decimals are converted to rationals
//! without rounding.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// Convenience constructor used throughout tests.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses an integer, `p/q` fraction, or decimal literal into an exact
/// rational. Returns a human-readable description of the problem on failure.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p
            .trim()
            .parse()
            .map_err(|_| format!("invalid numerator in `{s}`"))?;
        let den: BigInt = q
            .trim()
            .parse()
            .map_err(|_| format!("invalid denominator in `{s}`"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let whole_part: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole
                .parse()
                .map_err(|_| format!("invalid decimal `{s}`"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid decimal `{s}`"));
        }
        let frac_digits: BigInt = frac.parse().map_err(|_| format!("invalid decimal `{s}`"))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let numerator = whole_part.abs() * &scale + frac_digits;
        return Ok(BigRational::new(sign * numerator, scale));
    }
    let n: BigInt = s.parse().map_err(|_| format!("invalid number `{s}`"))?;
    Ok(BigRational::from_integer(n))
}

/// Renders a rational as an exact decimal when the denominator is of the
/// form 2^a·5^b, and as `p/q` otherwise. Integers render without a suffix.
pub fn render_rational(value: &BigRational) -> String {
    let num = value.numer();
    let den = value.denom();
    if den.is_one() {
        return num.to_string();
    }
    // Try to clear the denominator with powers of 10.
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let mut twos = 0u32;
    let mut fives = 0u32;
    let mut rest = den.clone();
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{num}/{den}");
    }
    let digits = twos.max(fives);
    let scaled = (num * BigInt::from(10u32).pow(digits) / den).abs();
    let text = scaled.to_string();
    let digits = digits as usize;
    let sign = if value.is_negative() { "-" } else { "" };
    if text.len() <= digits {
        format!("{sign}0.{0:0>1$}", text, digits)
    } else {
        let (int_part, frac_part) = text.split_at(text.len() - digits);
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Least common multiple of the denominators of a value collection; the
/// scaling factor that turns them all into integers.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a BigRational>>(values: I) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc
}
