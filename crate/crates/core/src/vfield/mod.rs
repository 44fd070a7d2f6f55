//! Polynomial vector fields on ℝⁿ, their Lie brackets, and bracket closure.

mod closure;
mod expr;
pub mod generators;

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::poly::{Monomial, Poly};
use crate::scalar::{format_rational, Rational, Scalar};

pub use closure::{closure, ClosureOptions, ClosureReport, StopReason};
pub use expr::{lift_field, parse_expression};
pub use generators::GeneratorSet;

/// `Σ_k F_k(o) ∂/∂o_k` with exact polynomial coefficients.
///
/// Equality compares components only; the name is a display tag.
#[derive(Debug, Clone)]
pub struct PolyVectorField {
    name: String,
    components: Vec<Poly>,
}

impl PartialEq for PolyVectorField {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl PolyVectorField {
    pub fn new(name: impl Into<String>, components: Vec<Poly>) -> Self {
        PolyVectorField { name: name.into(), components }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new("0", vec![Poly::zero(); dim])
    }

    /// `∂/∂o_i`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut c = vec![Poly::zero(); dim];
        c[i] = Poly::constant(Rational::from_i64(1));
        Self::new(format!("d{i}"), c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &Poly {
        &self.components[k]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Zero::is_zero)
    }

    /// Largest total degree of any component; `None` for the zero field.
    pub fn degree(&self) -> Option<usize> {
        self.components.iter().filter_map(Poly::degree).max()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    fn zip(&self, other: &Self, name: String, f: impl Fn(Poly, Poly) -> Poly) -> Result<Self> {
        self.check(other)?;
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| f(a.clone(), b.clone()))
            .collect();
        Ok(Self::new(name, comps))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, format!("{} + {}", self.name, other.name), |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, format!("{} - {}", self.name, other.name), |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let comps = self.components.iter().map(|p| p.scale(c)).collect();
        Self::new(format!("{}*{}", format_rational(c), self.name), comps)
    }

    /// The derivation `X(f) = Σ F_i ∂f/∂o_i`.
    pub fn apply(&self, f: &Poly) -> Poly {
        self.components
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (i, fi)| acc + fi * &f.derivative(i))
    }

    /// Lie bracket, `[Y1, Y2]_j = Σ_i (F1_i ∂F2_j/∂o_i − F2_i ∂F1_j/∂o_i)`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let comps = (0..self.dim())
            .map(|j| self.apply(&other.components[j]) - other.apply(&self.components[j]))
            .collect();
        Ok(Self::new(format!("[{}, {}]", self.name, other.name), comps))
    }

    pub fn eval<S: Scalar>(&self, point: &[S]) -> Vec<S> {
        self.components.iter().map(|p| p.eval(point)).collect()
    }

    /// Coefficients keyed by `(monomial, component)`, for rank tests.
    pub fn to_sparse(&self) -> SparseVec<(Monomial, usize)> {
        let mut out = SparseVec::new();
        for (k, p) in self.components.iter().enumerate() {
            for (m, c) in p.terms() {
                out.insert((m.clone(), k), c.clone());
            }
        }
        out
    }

    pub fn is_linear(&self) -> bool {
        self.components.iter().all(|p| p.terms().all(|(m, _)| m.degree() == 1))
    }

    /// The matrix `M` with `X = −Σ_{k,i} M_{ki} o_i ∂/∂o_k`.
    ///
    /// With this sign `X ↦ M` is a Lie algebra homomorphism for the matrix
    /// commutator, and the Euler field maps to `−I`.
    pub fn linear_matrix(&self) -> Result<Vec<Vec<Rational>>> {
        if !self.is_linear() {
            return Err(Error::NotLinear);
        }
        let n = self.dim();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (k, p) in self.components.iter().enumerate() {
            for (mono, c) in p.terms() {
                let i = mono.exponents().iter().position(|&e| e == 1).expect("linear monomial");
                if i >= n {
                    return Err(Error::DimensionMismatch { expected: n, found: i + 1 });
                }
                m[k][i] = -c.clone();
            }
        }
        Ok(m)
    }

    /// Inverse of [`linear_matrix`](Self::linear_matrix).
    pub fn from_linear_matrix(name: impl Into<String>, m: &[Vec<Rational>]) -> Self {
        let comps = m
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(Poly::zero(), |acc, (i, c)| acc + Poly::var(i).scale(&-c.clone()))
            })
            .collect();
        Self::new(name, comps)
    }

    /// Components joined by `"; "`, the golden-file row format.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        parts.join("; ")
    }

    /// `{name, components: [{monomial: "p/q"}]}`.
    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|p| {
                let mut obj = Map::new();
                for (m, c) in p.terms() {
                    obj.insert(m.to_string(), Value::String(format_rational(c)));
                }
                Value::Object(obj)
            })
            .collect();
        json!({ "name": self.name, "components": comps })
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.render())
    }
}

pub fn is_antisymmetric(m: &[Vec<Rational>]) -> bool {
    (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == -m[j][i].clone()))
}

pub fn trace(m: &[Vec<Rational>]) -> Rational {
    (0..m.len()).map(|i| m[i][i].clone()).sum()
}

/// Matrix commutator `AB − BA`.
pub fn commutator(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let prod = |x: &[Vec<Rational>], y: &[Vec<Rational>], i: usize, j: usize| -> Rational {
        (0..n).map(|k| &x[i][k] * &y[k][j]).sum()
    };
    (0..n)
        .map(|i| (0..n).map(|j| prod(a, b, i, j) - prod(b, a, i, j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn x() -> Poly {
        Poly::var(0)
    }

    fn real_fields() -> (PolyVectorField, PolyVectorField, PolyVectorField) {
        let one = Poly::constant(rat(1, 1));
        (
            PolyVectorField::new("X-", vec![one]),
            PolyVectorField::new("X0", vec![x()]),
            PolyVectorField::new("X+", vec![&x() * &x()]),
        )
    }

    #[test]
    fn real_riccati_brackets() {
        let (m, z, p) = real_fields();
        assert_eq!(m.bracket(&z).unwrap(), m);
        assert_eq!(m.bracket(&p).unwrap(), z.scale(&rat(2, 1)));
        assert_eq!(z.bracket(&p).unwrap(), p);
        assert!(z.bracket(&z).unwrap().is_zero());
    }

    #[test]
    fn bracket_rejects_dimension_mismatch() {
        let a = PolyVectorField::coordinate(2, 0);
        let b = PolyVectorField::coordinate(3, 0);
        assert!(matches!(a.bracket(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn linear_matrix_round_trip() {
        let m = vec![vec![rat(0, 1), rat(2, 1)], vec![rat(-2, 1), rat(0, 1)]];
        let f = PolyVectorField::from_linear_matrix("rot", &m);
        assert_eq!(f.linear_matrix().unwrap(), m);
        assert!(is_antisymmetric(&m));
        let (_, _, p) = real_fields();
        assert_eq!(p.linear_matrix(), Err(Error::NotLinear));
    }

    #[test]
    fn json_shape() {
        let (_, _, p) = real_fields();
        let v = p.to_json();
        assert_eq!(v["name"], "X+");
        assert_eq!(v["components"][0]["o0^2"], "1");
    }
}
