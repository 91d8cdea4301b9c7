//! Exact rational scalars and the small numeric helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact scalar field used for all algebraic identities.
pub type Scalar = BigRational;

/// Coefficient ring accepted by [`crate::linalg::LinComb`].
///
/// Implemented for exact rationals and for `f64` (used by the RDE solver and norm analytics).
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_negative_value(&self) -> bool;
    /// Canonical text form: `p/q` for rationals, 12 significant digits for floats.
    fn render(&self) -> String;
}

impl Coeff for Scalar {
    fn from_ratio(num: i64, den: i64) -> Self {
        ratio(num, den)
    }
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
    fn is_negative_value(&self) -> bool {
        self.is_negative()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coeff for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negative_value(&self) -> bool {
        *self < 0.0
    }
    fn render(&self) -> String {
        format_float(*self)
    }
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: &BigInt) -> Scalar {
    BigRational::from_integer(n.clone())
}

pub fn to_f64(x: &Scalar) -> f64 {
    ToPrimitive::to_f64(x).unwrap_or_else(|| {
        // Fallback for huge numerators/denominators: scale through the bit lengths.
        let n = x.numer();
        let d = x.denom();
        let shift = n.bits().max(d.bits()) as i64 - 900;
        let (n, d) = if shift > 0 {
            (n >> shift as usize, d >> shift as usize)
        } else {
            (n.clone(), d.clone())
        };
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// `1/k!` as an exact rational.
pub fn inv_factorial(k: usize) -> Scalar {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    BigRational::new(BigInt::one(), f)
}

pub fn factorial(k: usize) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Parses `p`, `p/q`, or a decimal such as `-0.125` or `1.5e-3` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Scalar> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{}{}", whole, frac).parse().ok()?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

/// Formats a float with 12 significant digits, trimming trailing zeros.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let s = format!("{:.11e}", x);
        let (m, e) = s.split_once('e').unwrap();
        let m = if m.contains('.') {
            m.trim_end_matches('0').trim_end_matches('.')
        } else {
            m
        };
        format!("{}e{}", m, e)
    }
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}
