use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used for exact symbolic checks.
pub type Rational = BigRational;

/// Field operations the polynomial and Nikiforov-Uvarov layers need.
///
/// Implemented for [`Rational`] (exact) and `f64` (floating point). The
/// tolerance arguments are ignored by the exact implementation.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic is exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs_val(&self) -> Self;

    /// Zero test. Exact for rationals, `|x| <= tol * max(1, scale)` for floats.
    fn is_negligible(&self, scale: f64, tol: f64) -> bool;

    /// Non-negative square root. `None` for negative input (beyond `tol` in
    /// floating point) or, for rationals, when the root is irrational.
    fn sqrt_checked(&self, tol: f64) -> Option<Self>;

    fn half() -> Self {
        Self::one() / Self::from_i64(2)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        self.abs() <= tol * scale.abs().max(1.0)
    }

    fn sqrt_checked(&self, tol: f64) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else if -*self <= tol {
            Some(0.0)
        } else {
            None
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        // Ratio<BigInt>::to_f64 handles huge numerators/denominators.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn is_negligible(&self, _scale: f64, _tol: f64) -> bool {
        self.is_zero()
    }

    fn sqrt_checked(&self, _tol: f64) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = exact_isqrt(self.numer())?;
        let den = exact_isqrt(self.denom())?;
        Some(Rational::new(num, den))
    }
}

fn exact_isqrt(v: &BigInt) -> Option<BigInt> {
    if v.sign() == Sign::Minus {
        return None;
    }
    let root = v.sqrt();
    (&root * &root == *v).then_some(root)
}

/// Parses an exact rational from `"3"`, `"-3/4"`, `"0.25"` or `"1.5e-3"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_rational(num)?;
        let den = parse_rational(den)?;
        if den.is_zero() {
            return None;
        }
        return Some(num / den);
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Converts a finite float to the exact rational it represents.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_f64(v)
}
