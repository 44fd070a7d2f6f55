//! The named generator families of Riccati-type equations.

use std::fmt;
use std::str::FromStr;

use super::{lift_field, PolyVectorField};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Rational, Scalar};

fn lift(src: &str, algebra: Algebra, name: String) -> PolyVectorField {
    lift_field(src, algebra).expect("built-in expression").with_name(name)
}

/// `X⁻_i = λ(e_i)`.
pub fn minus(algebra: Algebra, i: usize) -> PolyVectorField {
    lift(&format!("e{i}"), algebra, format!("X^-_{i}"))
}

/// `X⁺_i = λ(o e_i o)`.
pub fn plus(algebra: Algebra, i: usize) -> PolyVectorField {
    lift(&format!("(o*e{i})*o"), algebra, format!("X^+_{i}"))
}

/// `X^(0) = λ(o)`, the Euler field.
pub fn euler(algebra: Algebra) -> PolyVectorField {
    lift("o", algebra, "X^{(0)}".into())
}

/// `X^{0_L}_j = λ(e_j o)`.
pub fn left(algebra: Algebra, j: usize) -> PolyVectorField {
    lift(&format!("e{j}*o"), algebra, format!("X^{{0_L}}_{j}"))
}

/// `X^{0_R}_j = λ(o e_j)`.
pub fn right(algebra: Algebra, j: usize) -> PolyVectorField {
    lift(&format!("o*e{j}"), algebra, format!("X^{{0_R}}_{j}"))
}

/// `X^{(0)}_{ij} = λ(e_i (e_j o))`.
pub fn double_left(algebra: Algebra, i: usize, j: usize) -> PolyVectorField {
    lift(&format!("e{i}*(e{j}*o)"), algebra, format!("X^{{(0)}}_{{{i}{j}}}"))
}

/// `X^{0_R}_{j·i} = λ(o (e_j e_i))`.
pub fn right_product(algebra: Algebra, j: usize, i: usize) -> PolyVectorField {
    lift(&format!("o*(e{j}*e{i})"), algebra, format!("X^{{0_R}}_{{{j}.{i}}}"))
}

/// `X̃_ij = 2 o_i ∂/∂o_j − 2 o_j ∂/∂o_i`.
pub fn tilde(algebra: Algebra, i: usize, j: usize) -> PolyVectorField {
    let mut comps = vec![Poly::default(); algebra.dim()];
    let two = Rational::from_i64(2);
    comps[j] = Poly::var(i).scale(&two);
    comps[i] = Poly::var(j).scale(&-two);
    PolyVectorField::new(format!("X~_{{{i}{j}}}"), comps)
}

/// Quadratic term placement for the alternative families `e_k o²` / `o² e_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `e_k o²` (left) or `o² e_k` (right).
pub fn alt_quadratic(algebra: Algebra, k: usize, side: Side) -> PolyVectorField {
    match side {
        Side::Left => lift(&format!("e{k}*o^2"), algebra, format!("X^{{(1,L)}}_{k}")),
        Side::Right => lift(&format!("o^2*e{k}"), algebra, format!("X^{{(1,R)}}_{k}")),
    }
}

fn linear_part(algebra: Algebra) -> Vec<PolyVectorField> {
    let n = algebra.dim();
    let mut out = vec![euler(algebra)];
    out.extend((1..n).map(|j| left(algebra, j)));
    out.extend((1..n).map(|j| right(algebra, j)));
    out
}

/// The `2n + 2(n−1) + 1` fields spanning the Riccati right-hand sides over
/// an algebra of dimension `n`.
pub fn riccati_generators(algebra: Algebra) -> Vec<PolyVectorField> {
    let n = algebra.dim();
    let mut out: Vec<_> = (0..n).map(|i| minus(algebra, i)).collect();
    out.extend(linear_part(algebra));
    out.extend((0..n).map(|i| plus(algebra, i)));
    out
}

/// `{X^{0_L}_j, X^{0_R}_j}` for `j ≥ 1`.
pub fn rotation_generators(algebra: Algebra) -> Vec<PolyVectorField> {
    let n = algebra.dim();
    (1..n).map(|j| left(algebra, j)).chain((1..n).map(|j| right(algebra, j))).collect()
}

/// `{X⁻_i, X⁺_i}` only.
pub fn minus_plus_generators(algebra: Algebra) -> Vec<PolyVectorField> {
    let n = algebra.dim();
    (0..n).map(|i| minus(algebra, i)).chain((0..n).map(|i| plus(algebra, i))).collect()
}

/// Riccati generators with `o e_k o` replaced by the alternative quadratic family.
pub fn alt_quadratic_generators(algebra: Algebra, side: Side) -> Result<Vec<PolyVectorField>> {
    if !matches!(algebra, Algebra::H | Algebra::O) {
        return Err(Error::Unsupported(format!(
            "alternative quadratic families need a noncommutative algebra, got {algebra}"
        )));
    }
    let n = algebra.dim();
    let mut out: Vec<_> = (0..n).map(|i| minus(algebra, i)).collect();
    out.extend(linear_part(algebra));
    out.extend((0..n).map(|k| alt_quadratic(algebra, k, side)));
    Ok(out)
}

/// `{λ(u²), λ(e_0), …, λ(e_3)}` on ℍ.
pub fn schrodinger_generators() -> Vec<PolyVectorField> {
    let h = Algebra::H;
    let mut out = vec![plus(h, 0)];
    out.extend((0..4).map(|i| minus(h, i)));
    out
}

/// Selector for the CLI and bindings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSet {
    Riccati,
    Rotations,
    AltLeft,
    AltRight,
    MinusPlus,
    Schrodinger,
}

impl GeneratorSet {
    pub fn build(self, algebra: Algebra) -> Result<Vec<PolyVectorField>> {
        match self {
            GeneratorSet::Riccati => Ok(riccati_generators(algebra)),
            GeneratorSet::Rotations => Ok(rotation_generators(algebra)),
            GeneratorSet::AltLeft => alt_quadratic_generators(algebra, Side::Left),
            GeneratorSet::AltRight => alt_quadratic_generators(algebra, Side::Right),
            GeneratorSet::MinusPlus => Ok(minus_plus_generators(algebra)),
            GeneratorSet::Schrodinger => {
                if algebra != Algebra::H {
                    return Err(Error::AlgebraMismatch { expected: Algebra::H, found: algebra });
                }
                Ok(schrodinger_generators())
            }
        }
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorSet::Riccati => "riccati",
            GeneratorSet::Rotations => "rotations",
            GeneratorSet::AltLeft => "alt-left",
            GeneratorSet::AltRight => "alt-right",
            GeneratorSet::MinusPlus => "minus-plus",
            GeneratorSet::Schrodinger => "schrodinger",
        })
    }
}

impl FromStr for GeneratorSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "riccati" => GeneratorSet::Riccati,
            "rotations" => GeneratorSet::Rotations,
            "alt-left" => GeneratorSet::AltLeft,
            "alt-right" => GeneratorSet::AltRight,
            "minus-plus" => GeneratorSet::MinusPlus,
            "schrodinger" => GeneratorSet::Schrodinger,
            other => return Err(Error::Invalid(format!("unknown generator set {other:?}"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts() {
        assert_eq!(riccati_generators(Algebra::R).len(), 3);
        assert_eq!(riccati_generators(Algebra::H).len(), 15);
        assert_eq!(riccati_generators(Algebra::O).len(), 31);
        assert_eq!(rotation_generators(Algebra::O).len(), 14);
        assert_eq!(schrodinger_generators().len(), 5);
        assert!(alt_quadratic_generators(Algebra::C, Side::Left).is_err());
    }

    #[test]
    fn set_names_round_trip() {
        for s in ["riccati", "rotations", "alt-left", "alt-right", "minus-plus", "schrodinger"] {
            assert_eq!(s.parse::<GeneratorSet>().unwrap().to_string(), s);
        }
        assert!(GeneratorSet::Schrodinger.build(Algebra::O).is_err());
    }

    #[test]
    fn real_generators_are_the_classical_triple() {
        let g = riccati_generators(Algebra::R);
        let x = Poly::var(0);
        assert_eq!(g[0].components(), &[Poly::constant(Rational::from_i64(1))]);
        assert_eq!(g[1].components(), &[x.clone()]);
        assert_eq!(g[2].components(), &[&x * &x]);
    }
}
