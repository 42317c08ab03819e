//! Homogeneous binary forms in `(z, w)` over exact and floating coefficients.

mod json;
mod parse;
mod roots;
mod scalar;
pub mod univariate;

pub use json::{AnyForm, ComplexFormJson, ExactFormJson};
pub use parse::{parse_form, parse_scalar};
pub use roots::{
    aberth as aberth_roots, exact_roots, roots, roots_with_tolerance, ProjectivePoint, Root, CLUSTER_TOLERANCE,
};
pub use scalar::{rat, rational_to_f64, Coeff, ComplexF, CycRat, Field, Rational, ZETA3_F64};

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use univariate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("form is identically zero")]
    ZeroForm,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("inhomogeneous input: monomial of degree {found} in a form of degree {expected}")]
    InhomogeneousInput { expected: usize, found: usize },
    #[error("coefficient vector has length {len}, expected {expected}")]
    BadLength { len: usize, expected: usize },
    #[error("invalid JSON form: {0}")]
    Json(String),
}

/// A homogeneous polynomial `sum_i coeffs[i] * z^i * w^(degree - i)`.
///
/// The degree is part of the value; the zero form of degree 8 differs from
/// the zero form of degree 12.
#[derive(Clone, PartialEq, Debug)]
pub struct BinaryForm<C> {
    degree: usize,
    coeffs: Vec<C>,
}

pub type ExactForm = BinaryForm<CycRat>;
pub type ComplexForm = BinaryForm<ComplexF>;

impl<C: Coeff> BinaryForm<C> {
    pub fn new(degree: usize, coeffs: Vec<C>) -> Result<Self, FormError> {
        if coeffs.len() != degree + 1 {
            return Err(FormError::BadLength { len: coeffs.len(), expected: degree + 1 });
        }
        Ok(BinaryForm { degree, coeffs })
    }

    /// Builds a form from its coefficient vector; the degree is `len - 1`.
    ///
    /// Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { degree: coeffs.len() - 1, coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { degree, coeffs: vec![C::zero(); degree + 1] }
    }

    /// `c * z^z_exp * w^(degree - z_exp)`.
    pub fn monomial(degree: usize, z_exp: usize, c: C) -> Self {
        assert!(z_exp <= degree);
        let mut f = Self::zero(degree);
        f.coeffs[z_exp] = c;
        f
    }

    pub fn z_pow(degree: usize) -> Self {
        Self::monomial(degree, degree, C::one())
    }

    pub fn w_pow(degree: usize) -> Self {
        Self::monomial(degree, 0, C::one())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, z_exp: usize) -> &C {
        &self.coeffs[z_exp]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn expect_degree(&self, expected: usize) -> Result<(), FormError> {
        if self.degree == expected {
            Ok(())
        } else {
            Err(FormError::DegreeMismatch { expected, found: self.degree })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FormError> {
        other.expect_degree(self.degree)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FormError> {
        other.expect_degree(self.degree)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(C, C) -> C) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| op(a.clone(), b.clone()))
            .collect();
        BinaryForm { degree: self.degree, coeffs }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![C::zero(); self.degree + other.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { degree: self.degree + other.degree, coeffs }
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BinaryForm { degree: 0, coeffs: vec![C::one()] };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> BinaryForm<D> {
        BinaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Coefficient-wise image in the complex numbers.
    pub fn embed(&self) -> ComplexForm {
        self.map(Coeff::to_complex)
    }

    /// Vanishing order at `[1:0]`, i.e. the power of `w` dividing the form.
    pub fn ord_at_infinity(&self) -> Option<usize> {
        self.coeffs.iter().rev().position(|c| !c.is_zero())
    }

    /// Vanishing order at `[0:1]`, i.e. the power of `z` dividing the form.
    pub fn ord_at_origin(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// The univariate polynomial `p(z, 1)`.
    pub fn dehomogenize(&self) -> Poly<C> {
        Poly::new(self.coeffs.clone())
    }
}

impl ComplexForm {
    /// Evaluates at `(z, w)` with Horner's rule in the ratio of the
    /// smaller-magnitude variable to the larger.
    pub fn evaluate(&self, z: ComplexF, w: ComplexF) -> ComplexF {
        let d = self.degree as i32;
        if z.norm() >= w.norm() {
            if z.is_zero() {
                return if d == 0 { self.coeffs[0] } else { ComplexF::zero() };
            }
            // z^d * sum c_i (w/z)^(d-i)
            let t = w / z;
            let mut acc = ComplexF::zero();
            for c in &self.coeffs {
                acc = acc * t + c;
            }
            acc * z.powi(d)
        } else {
            let t = z / w;
            let mut acc = ComplexF::zero();
            for c in self.coeffs.iter().rev() {
                acc = acc * t + c;
            }
            acc * w.powi(d)
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Max-norm distance between coefficient vectors of equal degree.
    pub fn max_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.degree, other.degree);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl fmt::Display for ExactForm {
    /// Descending powers of `z`; parses back to the same form with
    /// [`parse_form`] given the degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::serialize(self))
    }
}

impl fmt::Display for ComplexForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({:.6e}{:+.6e}i)", c.re, c.im)?;
            let monom = parse::monomial_text(i, self.degree - i);
            if !monom.is_empty() {
                write!(f, "*{monom}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zf(n: usize) -> ExactForm {
        ExactForm::z_pow(n)
    }

    fn wf(n: usize) -> ExactForm {
        ExactForm::w_pow(n)
    }

    #[test]
    fn monomial_power() {
        assert_eq!(zf(8).pow(3), zf(24));
    }

    #[test]
    fn cube_plus_square_of_monomials() {
        let h = zf(8).pow(3).add(&wf(12).pow(2)).unwrap();
        assert_eq!(h, zf(24).add(&wf(24)).unwrap());
    }

    #[test]
    fn zeta3_scaling_disappears_in_cube() {
        let f = zf(8).add(&wf(8)).unwrap();
        assert_eq!(f.scalar_mul(&CycRat::zeta3()).pow(3), f.pow(3));
    }

    #[test]
    fn add_requires_equal_degree() {
        assert_eq!(
            zf(8).add(&wf(12)),
            Err(FormError::DegreeMismatch { expected: 8, found: 12 })
        );
        assert!(zf(8).sub(&wf(9)).is_err());
    }

    #[test]
    fn evaluate_simple_points() {
        let h = zf(24).add(&wf(24)).unwrap().embed();
        let one = ComplexF::new(1.0, 0.0);
        assert!((h.evaluate(one, ComplexF::zero()) - one).norm() < 1e-15);
        assert!((h.evaluate(one, one) - 2.0 * one).norm() < 1e-14);
        assert!((h.evaluate(ComplexF::zero(), one) - one).norm() < 1e-15);
    }

    #[test]
    fn embed_zeta3_coefficient() {
        let f = zf(8).scalar_mul(&CycRat::zeta3()).embed();
        let c = f.coeff(8);
        assert_eq!(c.re, -0.5);
        assert!((c.im - 0.866_025_403_784_438_6).abs() < 1e-15);
        assert!(ExactForm::zero(8).embed().is_zero());
    }

    #[test]
    fn vanishing_orders() {
        let f = zf(3).mul(&wf(5));
        assert_eq!(f.ord_at_origin(), Some(3));
        assert_eq!(f.ord_at_infinity(), Some(5));
        assert_eq!(ExactForm::zero(4).ord_at_infinity(), None);
    }

    #[test]
    fn display_descending() {
        let h = zf(24).add(&wf(24)).unwrap();
        assert_eq!(h.to_string(), "z^24 + w^24");
    }
}
