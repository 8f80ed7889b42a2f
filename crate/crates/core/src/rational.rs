//! Exact scalars and vectors.
//!
//! Rationals are `num_rational::BigRational`, always in lowest terms with a
//! positive denominator. Text form is `p/q`, or `p` when the denominator is 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_vec(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| rat(v)).collect()
}

pub fn int_vec(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

pub fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Parses `p/q` or `p` (sign on the numerator).
pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let t = text.trim();
    let parse_int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("malformed rational '{t}'"))
    };
    match t.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(format!("zero denominator in '{t}'"));
            }
            if den.is_negative() {
                return Err(format!("sign belongs on the numerator in '{t}'"));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(t)?)),
    }
}

/// Parses a parenthesised, comma-separated vector such as `(1, -2/3)`.
pub fn parse_vector(text: &str) -> std::result::Result<Vec<Rational>, String> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| format!("vector must be parenthesised: '{t}'"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_rational).collect()
}

pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn format_int_vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a + t * b`.
pub fn add_scaled(a: &[Rational], t: &Rational, b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + t * y).collect()
}

pub fn scale(t: &Rational, a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| t * x).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// The unique coprime integer vector that is a positive multiple of `v`.
pub fn normalize_coprime(v: &[Rational]) -> Result<Vec<BigInt>> {
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(ints.into_iter().map(|x| x / &gcd).collect())
}

/// Same as [`normalize_coprime`] for integer input.
pub fn normalize_coprime_int(v: &[BigInt]) -> Result<Vec<BigInt>> {
    normalize_coprime(&to_rationals(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("7").unwrap().to_string(), "7");
        assert_eq!(ratio(4, -6).to_string(), "-2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let v = parse_vector("(1, -2/4,0)").unwrap();
        assert_eq!(format_vector(&v), "(1, -1/2, 0)");
        assert!(parse_vector("1,2").is_err());
    }

    #[test]
    fn coprime_examples() {
        let n = |v: Vec<Rational>| normalize_coprime(&v).unwrap();
        assert_eq!(n(vec![ratio(1, 2), ratio(-1, 3)]), int_vec(&[3, -2]));
        assert_eq!(n(rat_vec(&[2, 4, 6])), int_vec(&[1, 2, 3]));
        assert_eq!(n(rat_vec(&[-5, 0, 0])), int_vec(&[-1, 0, 0]));
        assert_eq!(normalize_coprime(&rat_vec(&[0, 0])), Err(Error::ZeroVector));
        assert_eq!(
            Error::ZeroVector.to_string(),
            "zero vector has no coprime normalization"
        );
    }
}
