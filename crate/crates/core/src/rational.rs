//! Exact rational helpers: parsing, binomials and decimal previews.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serializer;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_u64(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// C(i, 2) as an exact integer count.
pub fn choose2(i: u64) -> u64 {
    i * i.saturating_sub(1) / 2
}

/// Parses `p`, `p/q` (q > 0) or a plain decimal such as `-0.25` or `1e-9`.
/// Decimals are converted exactly.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = parse_int(p)?;
        let q: BigInt = parse_int(q)?;
        if !q.is_positive() {
            return Err(format!("denominator must be positive in {s:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    if s.contains(['.', 'e', 'E']) {
        return parse_decimal(s);
    }
    parse_int(s).map(Rational::from_integer)
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    let t = s.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("not an integer: {s:?}"));
    }
    t.parse::<BigInt>().map_err(|e| format!("{s:?}: {e}"))
}

fn parse_decimal(s: &str) -> Result<Rational, String> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| format!("bad exponent in {s:?}"))?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(format!("not a number: {s:?}"));
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(format!("not a number: {s:?}"));
    }
    let digits = format!("{whole}{frac}");
    let mut value = Rational::from_integer(digits.parse::<BigInt>().unwrap_or_default());
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10u32);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

/// Fixed-point decimal rendering with `digits` significant digits, rounded
/// in the requested direction so that previews of interval ends stay outward.
pub fn decimal_preview(r: &Rational, digits: usize, rounding: Rounding) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // position of the leading digit: 10^e <= a < 10^(e+1)
    let mut e: i64 = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let frac_digits = (digits as i64 - 1 - e).max(0);
    let scaled = &a * pow10(frac_digits);
    // magnitude rounding: rounding r down means rounding |r| up when negative
    let round_up_mag = matches!((rounding, neg), (Rounding::Up, false) | (Rounding::Down, true));
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let q = if round_up_mag && !rem.is_zero() { q + BigInt::one() } else { q };
    let mut s = q.to_string();
    let fd = frac_digits as usize;
    if fd > 0 {
        if s.len() <= fd {
            s = format!("{}{}", "0".repeat(fd + 1 - s.len()), s);
        }
        s.insert(s.len() - fd, '.');
    }
    if neg && q_nonzero(&s) {
        s.insert(0, '-');
    }
    s
}

fn q_nonzero(s: &str) -> bool {
    s.bytes().any(|b| (b'1'..=b'9').contains(&b))
}

fn pow10(e: i64) -> Rational {
    let ten = BigInt::from(10);
    if e >= 0 {
        Rational::from_integer(num_traits::pow(ten, e as usize))
    } else {
        Rational::new(BigInt::one(), num_traits::pow(ten, (-e) as usize))
    }
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}
