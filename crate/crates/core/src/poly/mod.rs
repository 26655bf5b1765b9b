//! Polynomials of low degree over a [`Scalar`] field.

mod scalar;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use scalar::{parse_rational, rational_from_f64, Rational, Scalar};

use crate::error::{Error, Result};

/// Coefficients in ascending degree order, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Poly::new(vec![c])
    }

    /// `c0 + c1 s`
    pub fn linear(c0: S, c1: S) -> Self {
        Poly::new(vec![c0, c1])
    }

    /// `c0 + c1 s + c2 s²`
    pub fn quadratic(c0: S, c1: S, c2: S) -> Self {
        Poly::new(vec![c0, c1, c2])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `s^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn derivative(&self) -> Self {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.clone() * S::from_i64(i as i64)).collect())
    }

    pub fn scale(&self, factor: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    pub fn eval(&self, s: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * s.clone() + c.clone())
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c.to_f64())
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    /// Largest coefficient magnitude.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn ensure_degree_at_most(&self, max: usize) -> Result<()> {
        if self.degree() > max {
            Err(Error::Degree { degree: self.degree(), max })
        } else {
            Ok(())
        }
    }

    /// `b² − 4ac` for `a s² + b s + c`.
    pub fn discriminant(&self) -> Result<S> {
        self.ensure_degree_at_most(2)?;
        let (a, b, c) = (self.coeff(2), self.coeff(1), self.coeff(0));
        Ok(b.clone() * b - S::from_i64(4) * a * c)
    }

    /// Linear `q` with `q² = self` and non-negative leading coefficient.
    ///
    /// In floating point the discriminant may deviate from zero by up to
    /// `tol · max(1, ‖p‖)`.
    pub fn perfect_square_root(&self, tol: f64) -> Result<Self> {
        let disc = self.discriminant()?;
        let not_square = || Error::NotAPerfectSquare { discriminant: disc.to_f64() };
        if !disc.is_negligible(self.norm(), tol) {
            return Err(not_square());
        }
        let (a, b, c) = (self.coeff(2), self.coeff(1), self.coeff(0));
        if !a.is_negligible(self.norm(), tol) {
            let root_a = a.sqrt_checked(tol).ok_or_else(not_square)?;
            if root_a.is_zero() {
                return Err(not_square());
            }
            let shift = b / (S::from_i64(2) * root_a.clone());
            return Ok(Poly::linear(shift, root_a));
        }
        // a = 0 and a vanishing discriminant force b = 0.
        let root_c = c.sqrt_checked(tol * self.norm().max(1.0)).ok_or_else(not_square)?;
        Ok(Poly::constant(root_c))
    }

    /// Renders as `c0 + c1*s + c2*s^2` with the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < S::zero();
            let magnitude = c.abs_val();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let term = match i {
                0 => magnitude.to_string(),
                1 if magnitude.is_one() => var.to_string(),
                1 => format!("{magnitude}*{var}"),
                _ if magnitude.is_one() => format!("{var}^{i}"),
                _ => format!("{magnitude}*{var}^{i}"),
            };
            out.push_str(&term);
        }
        out
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("s"))
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;

    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;

    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;

    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;

    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn qp(c: &[(i64, i64)]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(Poly::new(vec![0.0, 0.0, 1.0]).derivative(), Poly::new(vec![0.0, 2.0]));
        assert_eq!(Poly::new(vec![5.0]).derivative(), Poly::zero());
        assert!(Poly::new(vec![5.0]).derivative().coeff(0).is_zero());
        assert_eq!(Poly::new(vec![1.0, -1.0, 3.0]).derivative(), Poly::new(vec![-1.0, 6.0]));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Poly::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs(), &[1.0, 2.0]);
        assert!(Poly::new(vec![0.0, 0.0]).is_zero());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(Poly::quadratic(1.0, -2.0, 1.0).discriminant().unwrap(), 0.0);
        assert_eq!(Poly::quadratic(1.0, 0.0, 1.0).discriminant().unwrap(), -4.0);
        assert_eq!(Poly::linear(3.0, 2.0).discriminant().unwrap(), 4.0);
        let cubic = Poly::new(vec![0.0, 0.0, 0.0, 1.0]);
        assert_eq!(cubic.discriminant(), Err(Error::Degree { degree: 3, max: 2 }));
    }

    #[test]
    fn perfect_square_root_examples() {
        let r = Poly::quadratic(1.0, -2.0, 1.0).perfect_square_root(1e-12).unwrap();
        assert_eq!(r, Poly::linear(-1.0, 1.0));
        let r = Poly::quadratic(0.0, 0.0, 4.0).perfect_square_root(1e-12).unwrap();
        assert_eq!(r, Poly::linear(0.0, 2.0));
        let r = qp(&[(9, 4)]).perfect_square_root(0.0).unwrap();
        assert_eq!(r, qp(&[(3, 2)]));
        assert!(matches!(
            Poly::quadratic(1.0, 0.0, 1.0).perfect_square_root(1e-12),
            Err(Error::NotAPerfectSquare { .. })
        ));
        // negative leading coefficient has no real square root
        assert!(Poly::quadratic(-1.0, 2.0, -1.0).perfect_square_root(1e-12).is_err());
    }

    #[test]
    fn radial_square_expands_symbolically() {
        // η²(s − c)² with η = 4/5, c = 3/2
        let eta = q(4, 5);
        let c = q(3, 2);
        let p = Poly::quadratic(
            eta.clone() * eta.clone() * c.clone() * c.clone(),
            -q(2, 1) * eta.clone() * eta.clone() * c.clone(),
            eta.clone() * eta.clone(),
        );
        let root = p.perfect_square_root(0.0).unwrap();
        assert_eq!(root, Poly::linear(-eta.clone() * c, eta));
        assert_eq!(&root * &root, p);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(qp(&[(1, 2), (-3, 1), (1, 1)]).display_in("r"), "1/2 - 3*r + r^2");
        assert_eq!(qp(&[(0, 1), (-1, 1)]).display_in("x"), "-x");
        assert_eq!(Poly::<Rational>::zero().display_in("x"), "0");
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn square_root_reproduces_square_exactly(a in small_q(), b in small_q()) {
            let lin = Poly::linear(b, a);
            let sq = &lin * &lin;
            let root = sq.perfect_square_root(0.0).unwrap();
            prop_assert_eq!(&root * &root, sq);
            prop_assert!(root.coeff(1) >= Rational::zero());
        }

        #[test]
        fn square_root_float_relative_error(a in 0.01f64..10.0, b in -10.0f64..10.0) {
            let lin = Poly::linear(b, a);
            let sq = &lin * &lin;
            let root = sq.perfect_square_root(1e-12).unwrap();
            let back = &root * &root;
            for i in 0..3 {
                let rel = (back.coeff(i) - sq.coeff(i)).abs() / sq.norm();
                prop_assert!(rel <= 1e-12);
            }
        }

        #[test]
        fn derivative_is_linear(
            a in small_q(), b in small_q(),
            p in proptest::collection::vec(small_q(), 0..4),
            r in proptest::collection::vec(small_q(), 0..4),
        ) {
            let p = Poly::new(p);
            let r = Poly::new(r);
            let combo = &p.scale(&a) + &r.scale(&b);
            let lhs = combo.derivative();
            let rhs = &p.derivative().scale(&a) + &r.derivative().scale(&b);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
