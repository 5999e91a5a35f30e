//! Exact rationals and the integer helpers the exact code paths share.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q`, an integer, or a decimal such as `-3.125` (converted exactly
/// with denominator `10^d`). Floats are never parsed approximately; exponent
/// notation is rejected.
pub fn parse_rational(text: &str) -> core::result::Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num)?;
        let den = parse_int(den)?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid decimal '{s}'"));
        }
        let negative = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim().trim_start_matches(['-', '+']);
        let whole_val = if whole_digits.is_empty() { BigInt::zero() } else { parse_int(whole_digits)? };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_val: BigInt = frac.parse().map_err(|_| format!("invalid decimal '{s}'"))?;
        let magnitude = Rational::new(whole_val * &scale + frac_val, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    Ok(Rational::from_integer(parse_int(s)?))
}

fn parse_int(s: &str) -> core::result::Result<BigInt, String> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid integer '{t}'"));
    }
    t.parse().map_err(|_| format!("invalid integer '{t}'"))
}

/// Parses a separated list of rationals, reporting the 1-based column of the
/// offending entry.
pub fn parse_rational_list(text: &str, line: usize) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    let mut column = 1;
    let is_sep = |c: char| c == ',' || c.is_whitespace();
    let mut rest = text;
    while !rest.is_empty() {
        let skip = rest.len() - rest.trim_start_matches(is_sep).len();
        column += rest[..skip].chars().count();
        rest = &rest[skip..];
        if rest.is_empty() {
            break;
        }
        let end = rest.find(is_sep).unwrap_or(rest.len());
        let token = &rest[..end];
        out.push(parse_rational(token).map_err(|m| Error::parse(line, column, m))?);
        column += token.chars().count();
        rest = &rest[end..];
    }
    Ok(out)
}

/// Canonical text form: `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Natural logarithm of `|n|` for `n != 0`, accurate to a few ulps for any size.
pub fn ln_abs_big(n: &BigInt) -> f64 {
    ln_big_uint(n.magnitude())
}

pub fn ln_big_uint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Positive divisors `d` of `n` with `d <= cap`, ascending. Trial division runs
/// to `min(sqrt(n), cap)`.
pub fn divisors_up_to(n: &BigUint, cap: &BigUint) -> Vec<BigUint> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    if n.is_zero() {
        return small;
    }
    let mut d = BigUint::one();
    while &d * &d <= *n && d <= *cap {
        if (n % &d).is_zero() {
            let co = n / &d;
            small.push(d.clone());
            if co != d && co <= *cap {
                large.push(co);
            }
        }
        d += 1u32;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
