//! Exact walk lengths under p-norms.
//!
//! A length is a finite sum `sum c_i * r_i^(1/p)` with rational `c_i` and
//! positive integer radicands free of p-th powers. Radicals of distinct such
//! radicands are linearly independent over the rationals, so equality is a
//! comparison of coefficient maps; strict comparisons refine rational
//! enclosures of each root until the sign of the difference is certain.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Norm used to measure a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    One,
    Infinity,
    /// `p >= 2`.
    P(u32),
}

impl Norm {
    /// Accepts `1`, `2`, ..., and `inf`.
    pub fn parse(text: &str) -> Result<Self, String> {
        match text.trim() {
            "inf" | "infinity" | "oo" => Ok(Norm::Infinity),
            t => match t.parse::<u32>() {
                Ok(0) | Err(_) => Err(format!("norm must be a positive integer or 'inf', found '{t}'")),
                Ok(1) => Ok(Norm::One),
                Ok(p) => Ok(Norm::P(p)),
            },
        }
    }

    /// `||g||` as an exact length.
    pub fn of(self, g: &[BigInt]) -> Length {
        match self {
            Norm::One => Length::rational(Rational::from_integer(g.iter().map(|x| x.abs()).sum())),
            Norm::Infinity => Length::rational(Rational::from_integer(
                g.iter().map(|x| x.abs()).max().unwrap_or_default(),
            )),
            Norm::P(p) => {
                let radicand: BigInt = g.iter().map(|x| x.abs().pow(p)).sum();
                Length::radical(p, Rational::one(), radicand)
            }
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::One => write!(f, "1"),
            Norm::Infinity => write!(f, "inf"),
            Norm::P(p) => write!(f, "{p}"),
        }
    }
}

/// Exact sum of rational multiples of p-th roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Length {
    /// `(root index, radicand) -> coefficient`; rational parts use key `(1, 1)`.
    terms: BTreeMap<(u32, BigInt), Rational>,
}

impl Length {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(value: Rational) -> Self {
        Self::radical(1, value, BigInt::one())
    }

    /// `coefficient * radicand^(1/root)`.
    pub fn radical(root: u32, coefficient: Rational, radicand: BigInt) -> Self {
        let mut out = Self::zero();
        out.add_term(root, coefficient, radicand);
        out
    }

    fn add_term(&mut self, root: u32, coefficient: Rational, radicand: BigInt) {
        assert!(radicand.is_positive(), "radicands are positive");
        let (outside, inside) = extract_powers(&radicand, root);
        let key = if inside.is_one() { (1, inside) } else { (root, inside) };
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += coefficient * Rational::from_integer(outside);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        for ((root, radicand), c) in &self.terms {
            out.add_term(*root, c * factor, radicand.clone());
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((root, radicand), c) in &other.terms {
            out.add_term(*root, c.clone(), radicand.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&-Rational::one()))
    }

    /// The value when it is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(1, BigInt::one())).cloned(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|((root, r), c)| {
                c.to_f64().unwrap_or(f64::NAN) * r.to_f64().unwrap_or(f64::NAN).powf(1.0 / f64::from(*root))
            })
            .sum()
    }

    /// Rational enclosure `[lo, hi]` with root enclosures of width `2^-bits`.
    fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for ((root, r), c) in &self.terms {
            let (a, b) = root_bounds(r, *root, bits);
            if c.is_negative() {
                lo += c * &b;
                hi += c * &a;
            } else {
                lo += c * &a;
                hi += c * &b;
            }
        }
        (lo, hi)
    }

    /// Sign of the value, decided exactly.
    pub fn signum(&self) -> Ordering {
        if self.terms.is_empty() {
            return Ordering::Equal;
        }
        if let Some(q) = self.as_rational() {
            return q.cmp(&Rational::zero());
        }
        let mut bits = 32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            // Mixed root indices can hide an exact cancellation; stop refining eventually.
            if bits >= 1 << 14 {
                return Ordering::Equal;
            }
            bits *= 2;
        }
    }
}

impl Ord for Length {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            Ordering::Equal
        } else {
            self.minus(other).signum()
        }
    }
}

impl PartialOrd for Length {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((root, r), c)| {
                if *root == 1 {
                    c.to_string()
                } else if c.is_one() {
                    format!("{r}^(1/{root})")
                } else {
                    format!("{c}*{r}^(1/{root})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `radicand = outside^root * inside` with `inside` free of `root`-th powers
/// among small prime factors, and not itself a perfect power.
fn extract_powers(radicand: &BigInt, root: u32) -> (BigInt, BigInt) {
    if root == 1 {
        return (radicand.clone(), BigInt::one());
    }
    let mut outside = BigInt::one();
    let mut inside = radicand.clone();
    let mut prime = BigInt::from(2u32);
    let limit = BigInt::from(1u32 << 16);
    while prime <= limit && prime.pow(root) <= inside {
        let power = prime.pow(root);
        while (&inside % &power).is_zero() {
            inside /= &power;
            outside *= &prime;
        }
        prime += 1u32;
    }
    let r = inside.nth_root(root);
    if r.pow(root) == inside {
        outside *= &r;
        inside = BigInt::one();
    }
    (outside, inside)
}

/// Rational bounds on `r^(1/root)` of width at most `2^-bits`.
fn root_bounds(r: &BigInt, root: u32, bits: u32) -> (Rational, Rational) {
    let scale = BigInt::one() << bits as usize;
    let scaled = r * scale.pow(root);
    let floor = scaled.nth_root(root);
    let lo = Rational::new(floor.clone(), scale.clone());
    if floor.pow(root) == scaled {
        (lo.clone(), lo)
    } else {
        (lo, Rational::new(floor + 1u32, scale))
    }
}
