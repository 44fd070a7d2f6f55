use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::Algebra;
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

/// An algebra element as its coefficient vector on the canonical basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<S> {
    algebra: Algebra,
    coeffs: Vec<S>,
}

impl<S: Ring> Element<S> {
    pub fn new(algebra: Algebra, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: coeffs.len() });
        }
        Ok(Element { algebra, coeffs })
    }

    pub fn zero(algebra: Algebra) -> Self {
        Element { algebra, coeffs: vec![S::zero(); algebra.dim()] }
    }

    pub fn one(algebra: Algebra) -> Self {
        Self::basis(algebra, 0)
    }

    /// The basis element `e_i`.
    pub fn basis(algebra: Algebra, i: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[i] = S::one();
        e
    }

    /// `s · e_0`.
    pub fn real(algebra: Algebra, s: S) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[0] = s;
        e
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `true` when all imaginary coefficients vanish.
    pub fn is_real(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch { expected: self.algebra, found: other.algebra });
        }
        Ok(())
    }

    /// Product through the structure constants.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = S::table_product(self.algebra.table(), &self.coeffs, &other.coeffs);
        Ok(Element { algebra: self.algebra, coeffs })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f(a.clone(), b.clone()))
            .collect();
        Element { algebra: self.algebra, coeffs }
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Element { algebra: self.algebra, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    /// Flips the signs of the imaginary coefficients.
    pub fn conj(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { c.clone() } else { -c.clone() })
            .collect();
        Element { algebra: self.algebra, coeffs }
    }

    pub fn scalar_part(&self) -> S {
        self.coeffs[0].clone()
    }

    pub fn vector_part(&self) -> Self {
        let mut v = self.clone();
        v.coeffs[0] = S::zero();
        v
    }

    /// Euclidean inner product `g(a, b)` of coefficient vectors.
    pub fn inner(&self, other: &Self) -> S {
        S::dot(&self.coeffs, &other.coeffs)
    }

    pub fn norm_sq(&self) -> S {
        self.inner(self)
    }

    /// Re-embeds into a larger (or equal) algebra along the first half-basis.
    pub fn embed(&self, target: Algebra) -> Result<Self> {
        if target.dim() < self.dim() {
            return Err(Error::Unsupported(format!("cannot embed {} into {target}", self.algebra)));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(target.dim(), S::zero());
        Ok(Element { algebra: target, coeffs })
    }
}

impl<S: Scalar> Element<S> {
    pub fn from_f64s(algebra: Algebra, xs: &[f64]) -> Result<Self> {
        Self::new(algebra, xs.iter().map(|x| S::from_f64(*x)).collect())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().to_f64().sqrt()
    }

    /// `a^{-1} = a* / ‖a‖²`.
    pub fn inv(&self) -> Result<Self> {
        let n2 = self.norm_sq();
        if n2.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().map(|c| c.clone() / n2.clone()))
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs().to_f64()).fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Element<f64> {
        Element { algebra: self.algebra, coeffs: self.coeffs.iter().map(Scalar::to_f64).collect() }
    }

    /// Inner product through polarisation, `½(‖a+b‖² − ‖a‖² − ‖b‖²)`.
    pub fn inner_polarized(&self, other: &Self) -> S {
        let sum = self.clone() + other.clone();
        (sum.norm_sq() - self.norm_sq() - other.norm_sq()) / S::from_i64(2)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.to_f64().is_finite())
    }

    /// JSON array of coefficients; exact carriers write `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(Scalar::to_json).collect())
    }

    pub fn from_json(algebra: Algebra, v: &serde_json::Value) -> Result<Self> {
        let items = v.as_array().ok_or_else(|| Error::Invalid("element must be a JSON array".into()))?;
        Self::new(algebra, items.iter().map(S::from_json).collect::<Result<_>>()?)
    }
}

impl<S: Ring> Add for Element<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("algebra mismatch in add")
    }
}

impl<S: Ring> Sub for Element<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("algebra mismatch in sub")
    }
}

impl<S: Ring> Neg for Element<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|c| -c.clone())
    }
}

impl<S: Ring> Mul for &Element<S> {
    type Output = Element<S>;
    fn mul(self, rhs: Self) -> Element<S> {
        self.checked_mul(rhs).expect("algebra mismatch in mul")
    }
}

impl<S: Ring> Mul for Element<S> {
    type Output = Element<S>;
    fn mul(self, rhs: Self) -> Element<S> {
        &self * &rhs
    }
}

impl<S: Ring + fmt::Display> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
