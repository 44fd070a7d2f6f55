//! Symplectic structures in radial coordinates `(x, ρ)`, `x = o_0`,
//! `ρ = ‖vector part‖`, and the Hamiltonian functions of the real-coefficient
//! Riccati fields.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::poly::{Monomial, Poly};
use crate::scalar::{format_rational, Rational, Scalar};
use crate::vfield::PolyVectorField;

/// Finite sum of `c x^a ρ^b` with integer (possibly negative) exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent2 {
    terms: BTreeMap<(i32, i32), Rational>,
}

impl Laurent2 {
    pub fn term(c: Rational, a: i32, b: i32) -> Self {
        let mut out = Laurent2::default();
        out.add_term((a, b), c);
        out
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    pub fn rho() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    fn add_term(&mut self, k: (i32, i32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Laurent2::default();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn dx(&self) -> Self {
        let mut out = Laurent2::default();
        for (&(a, b), c) in &self.terms {
            out.add_term((a - 1, b), c * Rational::from_i64(a as i64));
        }
        out
    }

    pub fn drho(&self) -> Self {
        let mut out = Laurent2::default();
        for (&(a, b), c) in &self.terms {
            out.add_term((a, b - 1), c * Rational::from_i64(b as i64));
        }
        out
    }

    /// Antiderivative in `x`; fails on an `x^{-1}` term.
    pub fn integrate_x(&self) -> Option<Self> {
        let mut out = Laurent2::default();
        for (&(a, b), c) in &self.terms {
            if a == -1 {
                return None;
            }
            out.add_term((a + 1, b), c / Rational::from_i64(a as i64 + 1));
        }
        Some(out)
    }

    /// Antiderivative in `ρ`; fails on a `ρ^{-1}` term.
    pub fn integrate_rho(&self) -> Option<Self> {
        let mut out = Laurent2::default();
        for (&(a, b), c) in &self.terms {
            if b == -1 {
                return None;
            }
            out.add_term((a, b + 1), c / Rational::from_i64(b as i64 + 1));
        }
        Some(out)
    }

    pub fn depends_on_x(&self) -> bool {
        self.terms.keys().any(|&(a, _)| a != 0)
    }

    pub fn eval<S: Scalar>(&self, x: &S, rho: &S) -> Result<S> {
        let pow = |v: &S, e: i32| -> Result<S> {
            let mut p = S::one();
            for _ in 0..e.unsigned_abs() {
                p = p * v.clone();
            }
            if e < 0 {
                if p.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                p = S::one() / p;
            }
            Ok(p)
        };
        let mut acc = S::zero();
        for (&(a, b), c) in &self.terms {
            acc = acc + S::from_rational(c) * pow(x, a)? * pow(rho, b)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Zero for Laurent2 {
    fn zero() -> Self {
        Laurent2::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add for Laurent2 {
    type Output = Laurent2;

    fn add(mut self, rhs: Laurent2) -> Laurent2 {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
        self
    }
}

impl Sub for Laurent2 {
    type Output = Laurent2;

    fn sub(self, rhs: Laurent2) -> Laurent2 {
        self + -rhs
    }
}

impl Neg for Laurent2 {
    type Output = Laurent2;

    fn neg(self) -> Laurent2 {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Laurent2 {
    type Output = Laurent2;

    fn mul(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = Laurent2::default();
        for (&(a, b), c) in &self.terms {
            for (&(p, q), d) in &rhs.terms {
                out.add_term((a + p, b + q), c * d);
            }
        }
        out
    }
}

impl Mul for Laurent2 {
    type Output = Laurent2;

    fn mul(self, rhs: Laurent2) -> Laurent2 {
        &self * &rhs
    }
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let neg = *c < Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                factors.push(format_rational(&mag));
            }
            for (name, e) in [("x", a), ("rho", b)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// A field `X^x ∂_x + X^ρ ∂_ρ` with no angular components.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialField {
    pub name: String,
    pub x: Laurent2,
    pub rho: Laurent2,
}

impl RadialField {
    pub fn new(name: impl Into<String>, x: Laurent2, rho: Laurent2) -> Self {
        RadialField { name: name.into(), x, rho }
    }

    pub fn apply(&self, f: &Laurent2) -> Laurent2 {
        &self.x * &f.dx() + &self.rho * &f.drho()
    }

    pub fn bracket(&self, other: &RadialField) -> RadialField {
        RadialField::new(
            format!("[{}, {}]", self.name, other.name),
            self.apply(&other.x) - other.apply(&self.x),
            self.apply(&other.rho) - other.apply(&self.rho),
        )
    }

    pub fn scale(&self, c: &Rational) -> RadialField {
        RadialField::new(self.name.clone(), self.x.scale(c), self.rho.scale(c))
    }

    /// Same field in Cartesian coordinates on an algebra of dimension `n`,
    /// using `∂_ρ = Σ (o_i/ρ) ∂_i`. Needs `X^x` even and `X^ρ` odd in `ρ`.
    pub fn to_cartesian(&self, algebra: Algebra) -> Result<PolyVectorField> {
        let n = algebra.dim();
        if n < 2 {
            return Err(Error::Unsupported("radial coordinates need a vector part".into()));
        }
        let rho2: Poly = (1..n).map(|i| &Poly::var(i) * &Poly::var(i)).fold(Poly::zero(), |a, b| a + b);
        let to_poly = |l: &Laurent2, shift: i32| -> Result<Poly> {
            let mut out = Poly::zero();
            for (&(a, b), c) in l.terms() {
                let b = b + shift;
                if a < 0 || b < 0 || b % 2 != 0 {
                    return Err(Error::Unsupported(format!("{} has no polynomial Cartesian form", self.name)));
                }
                let mut p = Poly::term(c.clone(), Monomial::from_exponents(&[a as u16]));
                for _ in 0..b / 2 {
                    p = &p * &rho2;
                }
                out = out + p;
            }
            Ok(out)
        };
        let mut comps = vec![to_poly(&self.x, 0)?];
        let radial = to_poly(&self.rho, -1)?;
        comps.extend((1..n).map(|i| &radial * &Poly::var(i)));
        Ok(PolyVectorField::new(self.name.clone(), comps))
    }
}

/// `X⁻ = ∂_x`, `X⁰ = x∂_x + ρ∂_ρ`, `X⁺ = (x² − ρ²)∂_x + 2xρ∂_ρ`.
pub fn real_riccati_fields() -> [RadialField; 3] {
    let one = Rational::one();
    let two = Rational::from_i64(2);
    [
        RadialField::new("X^-", Laurent2::constant(one.clone()), Laurent2::zero()),
        RadialField::new("X^{(0)}", Laurent2::x(), Laurent2::rho()),
        RadialField::new(
            "X^+",
            Laurent2::term(one.clone(), 2, 0) - Laurent2::term(one, 0, 2),
            Laurent2::term(two, 1, 1),
        ),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    /// Weight on the `(x, ρ)` block.
    Radial(Laurent2),
    /// Weight on an angular block, depending only on the listed coordinates.
    Angular { label: &'static str, depends_on: &'static [&'static str] },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub coords: (&'static str, &'static str),
    pub weight: Weight,
}

/// `Σ weight · du ∧ dv` over disjoint coordinate pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    pub name: &'static str,
    pub blocks: Vec<Block>,
}

fn radial_weight() -> Laurent2 {
    Laurent2::term(Rational::one(), 0, -2)
}

/// `dx∧dρ/ρ² + dα∧dβ + dγ∧dψ + dθ∧dφ` on 𝕆.
pub fn omega_octonion() -> SymplecticForm {
    let flat = |u, v| Block { coords: (u, v), weight: Weight::Angular { label: "1", depends_on: &[] } };
    SymplecticForm {
        name: "omega_O",
        blocks: vec![
            Block { coords: ("o0", "rho"), weight: Weight::Radial(radial_weight()) },
            flat("alpha", "beta"),
            flat("gamma", "psi"),
            flat("theta", "phi"),
        ],
    }
}

/// `dq_0∧dρ/ρ² + sin θ dθ∧dφ` on ℍ.
pub fn omega_quaternion() -> SymplecticForm {
    SymplecticForm {
        name: "omega_H",
        blocks: vec![
            Block { coords: ("q0", "rho"), weight: Weight::Radial(radial_weight()) },
            Block { coords: ("theta", "phi"), weight: Weight::Angular { label: "sin(theta)", depends_on: &["theta"] } },
        ],
    }
}

impl SymplecticForm {
    fn radial(&self) -> Result<&Laurent2> {
        match self.blocks.first().map(|b| &b.weight) {
            Some(Weight::Radial(w)) => Ok(w),
            _ => Err(Error::Invalid(format!("{} has no radial block", self.name))),
        }
    }

    /// Disjoint coordinates, nonzero weights, and each weight depending only
    /// on its own block (so every block is closed).
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for b in &self.blocks {
            if !seen.insert(b.coords.0) || !seen.insert(b.coords.1) {
                return Err(Error::Invalid(format!("{}: repeated coordinate", self.name)));
            }
            match &b.weight {
                Weight::Radial(w) if w.is_zero() => {
                    return Err(Error::Invalid(format!("{}: degenerate radial block", self.name)));
                }
                Weight::Angular { depends_on, .. } if depends_on.iter().any(|d| *d != b.coords.0 && *d != b.coords.1) => {
                    return Err(Error::Invalid(format!("{}: block weight depends on other coordinates", self.name)));
                }
                _ => {}
            }
        }
        self.radial().map(|_| ())
    }

    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                let w = match &b.weight {
                    Weight::Radial(l) => l.to_string(),
                    Weight::Angular { label, .. } => label.to_string(),
                };
                json!({"coords": [b.coords.0, b.coords.1], "weight": w})
            })
            .collect();
        json!({"name": self.name, "blocks": blocks})
    }
}

/// `i_X ω` on the radial block: `(−w X^ρ) dx + (w X^x) dρ`.
pub fn contraction(field: &RadialField, omega: &SymplecticForm) -> Result<(Laurent2, Laurent2)> {
    let w = omega.radial()?;
    Ok((-(w * &field.rho), w * &field.x))
}

/// `f` with `i_X ω = df`, normalised to have no constant term.
pub fn hamiltonian_of(field: &RadialField, omega: &SymplecticForm) -> Result<Laurent2> {
    let (ax, arho) = contraction(field, omega)?;
    let fail = || Error::NotHamiltonian(format!("{} with respect to {}", field.name, omega.name));
    if ax.drho() != arho.dx() {
        return Err(fail());
    }
    let fx = ax.integrate_x().ok_or_else(fail)?;
    let rest = arho - fx.drho();
    if rest.depends_on_x() {
        return Err(fail());
    }
    Ok(fx + rest.integrate_rho().ok_or_else(fail)?)
}

/// Residual `i_X ω − df` on the radial block; both entries vanish for a Hamiltonian pair.
pub fn hamiltonian_residual(field: &RadialField, f: &Laurent2, omega: &SymplecticForm) -> Result<(Laurent2, Laurent2)> {
    let (ax, arho) = contraction(field, omega)?;
    Ok((ax - f.dx(), arho - f.drho()))
}

/// `{f, g} = (f_x g_ρ − f_ρ g_x) / w`.
pub fn poisson(f: &Laurent2, g: &Laurent2, omega: &SymplecticForm) -> Result<Laurent2> {
    let w = omega.radial()?;
    let mut terms = w.terms();
    let inv = match (terms.next(), terms.next()) {
        (Some((&(a, b), c)), None) => Laurent2::term(Rational::one() / c, -a, -b),
        _ => return Err(Error::Unsupported("Poisson bracket needs a monomial weight".into())),
    };
    Ok(&(&f.dx() * &g.drho() - &f.drho() * &g.dx()) * &inv)
}

/// `L_X ω` on the radial block as the coefficient of `dx∧dρ`:
/// `X(w) + w (∂_x X^x + ∂_ρ X^ρ)`.
pub fn lie_derivative(field: &RadialField, omega: &SymplecticForm) -> Result<Laurent2> {
    let w = omega.radial()?;
    Ok(field.apply(w) + w * &(field.x.dx() + field.rho.drho()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieCheck {
    pub field: String,
    pub form: &'static str,
    /// `L_X ω` vanishes as a Laurent polynomial.
    pub symbolic_zero: bool,
    pub max_residual: f64,
    pub samples: usize,
    /// Samples on `ρ ≤ 0`, outside the chart.
    pub skipped: usize,
}

impl LieCheck {
    pub fn passed(&self) -> bool {
        self.symbolic_zero && self.max_residual == 0.0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field,
            "form": self.form,
            "residual": self.max_residual,
            "symbolic_zero": self.symbolic_zero,
            "samples": self.samples,
            "skipped": self.skipped,
            "status": if self.passed() { "ok" } else { "fail" },
        })
    }
}

/// Evaluates `L_X ω` exactly at rational points `x = p/4`, `ρ = k/4`
/// (`k ∈ 0..=8`, so the excluded locus is hit and counted). Angular blocks
/// are invariant because the field has no angular components and their
/// weights do not involve `x` or `ρ`.
pub fn lie_derivative_check(field: &RadialField, omega: &SymplecticForm, samples: usize, seed: u64) -> Result<LieCheck> {
    omega.validate()?;
    let l = lie_derivative(field, omega)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut worst, mut skipped) = (0.0f64, 0);
    for _ in 0..samples {
        let x = Rational::new(rng.random_range(-8i64..=8).into(), 4.into());
        let rho = Rational::new(rng.random_range(0i64..=8).into(), 4.into());
        if rho <= Rational::zero() {
            skipped += 1;
            continue;
        }
        worst = worst.max(l.eval(&x, &rho)?.abs().to_f64());
    }
    Ok(LieCheck {
        field: field.name.clone(),
        form: omega.name,
        symbolic_zero: l.is_zero(),
        max_residual: worst,
        samples,
        skipped,
    })
}

/// Basis of the constant 2-forms `Σ_{i<j} c_ij do_i∧do_j` invariant under
/// every field in `fields`, each as the coefficient list over pairs `i < j`.
pub fn invariant_constant_two_forms(fields: &[PolyVectorField]) -> Result<Vec<Vec<Rational>>> {
    let n = fields.first().map_or(0, PolyVectorField::dim);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let col = |i: usize, j: usize| -> Option<(usize, Rational)> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => Some((pairs.iter().position(|&p| p == (i, j)).unwrap(), Rational::one())),
            Greater => Some((pairs.iter().position(|&p| p == (j, i)).unwrap(), -Rational::one())),
            Equal => None,
        }
    };
    // (L_X ω)_{ab} = Σ_k ω_{kb} ∂_a X^k + ω_{ak} ∂_b X^k, one row per (a<b, monomial)
    let mut rows: BTreeMap<(usize, usize, Monomial), Vec<Rational>> = BTreeMap::new();
    for x in fields {
        if x.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.dim() });
        }
        let jac: Vec<Vec<Poly>> = (0..n).map(|k| (0..n).map(|m| x.component(k).derivative(m)).collect()).collect();
        for (a, b) in pairs.iter().copied() {
            let mut entry = |d: &Poly, c: Option<(usize, Rational)>| {
                let Some((cidx, sign)) = c else { return };
                for (mono, coeff) in d.terms() {
                    let row = rows.entry((a, b, mono.clone())).or_insert_with(|| vec![Rational::zero(); pairs.len()]);
                    row[cidx] += coeff * &sign;
                }
            };
            for k in 0..n {
                entry(&jac[k][a], col(k, b));
                entry(&jac[k][b], col(a, k));
            }
        }
    }
    let m: Vec<Vec<Rational>> = rows.into_values().collect();
    Ok(nullspace(&m, pairs.len()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionWitness {
    pub algebra: Algebra,
    /// Invariant constant forms under the constant fields alone.
    pub translation_invariant: usize,
    /// Invariant constant forms once the Euler field is added.
    pub with_euler: usize,
}

impl ObstructionWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra.to_string(),
            "translation_invariant_dim": self.translation_invariant,
            "with_euler_dim": self.with_euler,
            "status": if self.with_euler == 0 { "only the zero form" } else { "nonzero invariant form" },
        })
    }
}

/// Solves the invariance system for `{X_i⁻}` and `{X_i⁻, X^(0)}`.
pub fn obstruction_witness(algebra: Algebra) -> Result<ObstructionWitness> {
    use crate::vfield::generators::{euler, minus};
    let mut fields: Vec<_> = (0..algebra.dim()).map(|i| minus(algebra, i)).collect();
    let translation_invariant = invariant_constant_two_forms(&fields)?.len();
    fields.push(euler(algebra));
    let with_euler = invariant_constant_two_forms(&fields)?.len();
    Ok(ObstructionWitness { algebra, translation_invariant, with_euler })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn laurent_arithmetic() {
        let f = Laurent2::term(r(3), 2, -1) + Laurent2::constant(r(1));
        assert_eq!(f.dx(), Laurent2::term(r(6), 1, -1));
        assert_eq!(f.drho(), Laurent2::term(r(-3), 2, -2));
        assert_eq!(f.integrate_x().unwrap().dx(), f);
        assert!(Laurent2::term(r(1), 0, -1).integrate_rho().is_none());
        assert_eq!(f.eval(&r(2), &r(4)).unwrap(), r(4));
        assert!(f.eval(&r(1), &r(0)).is_err());
        assert_eq!(f.to_string(), "3*x^2*rho^-1 + 1");
    }

    #[test]
    fn non_hamiltonian_field_is_rejected() {
        // ∂_ρ: the contraction −dx/ρ² is not closed
        let f = RadialField::new("d_rho", Laurent2::zero(), Laurent2::constant(r(1)));
        assert!(matches!(hamiltonian_of(&f, &omega_octonion()), Err(Error::NotHamiltonian(_))));
        assert!(!lie_derivative(&f, &omega_octonion()).unwrap().is_zero());
    }

    #[test]
    fn forms_validate() {
        omega_octonion().validate().unwrap();
        omega_quaternion().validate().unwrap();
        let mut bad = omega_quaternion();
        bad.blocks[1].weight = Weight::Angular { label: "rho", depends_on: &["rho"] };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn plane_rotations_preserve_a_constant_form() {
        let f = PolyVectorField::new("rot", vec![-Poly::var(1), Poly::var(0)]);
        assert_eq!(invariant_constant_two_forms(&[f]).unwrap().len(), 1);
    }
}
