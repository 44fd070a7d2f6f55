use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{rhs, CoeffFn, RiccatiSpec};
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `ξ' = a + λξ + Ωξ + c⟨ξ,ξ⟩ − 2⟨c,ξ⟩ξ` on ℝⁿ with the Euclidean product.
/// `omega` evaluates to the n×n matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalSpec<S> {
    pub n: usize,
    pub a: CoeffFn<S>,
    pub c: CoeffFn<S>,
    pub lambda: CoeffFn<S>,
    pub omega: CoeffFn<S>,
}

impl<S: Scalar> ConformalSpec<S> {
    pub fn eval_omega(&self, t: &S) -> Result<Vec<Vec<S>>> {
        let flat = self.omega.eval(t)?;
        Ok(flat.chunks(self.n).map(<[S]>::to_vec).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "a": self.a.to_json(),
            "c": self.c.to_json(),
            "lambda": self.lambda.to_json(),
            "omega": self.omega.to_json(),
        })
    }
}

fn mult_matrix<S: Scalar>(alg: Algebra, u: &[S], left: bool) -> Vec<S> {
    let n = alg.dim();
    let u = Element::new(alg, u.to_vec()).expect("coefficient length");
    let mut m = vec![S::zero(); n * n];
    for j in 0..n {
        let ej = Element::basis(alg, j);
        let col = if left { &u * &ej } else { &ej * &u };
        for (k, x) in col.into_coeffs().into_iter().enumerate() {
            m[k * n + j] = x;
        }
    }
    m
}

fn imaginary<S: Scalar>(v: &[S]) -> Vec<S> {
    let mut v = v.to_vec();
    v[0] = S::zero();
    v
}

/// Coordinates of the equivalent conformal Riccati equation.
pub fn to_conformal<S: Scalar>(spec: &RiccatiSpec<S>) -> ConformalSpec<S> {
    let alg = spec.algebra;
    let c = spec.b_plus.map_values(&|v| Element::new(alg, v.to_vec()).expect("coefficient length").conj().scale(&-S::one()).into_coeffs());
    let real = |f: &CoeffFn<S>| f.map_values(&|v| vec![v[0].clone()]);
    let lambda = CoeffFn::Sum(vec![real(&spec.b_0l), real(&spec.b_0r)]);
    let omega = CoeffFn::Sum(vec![
        spec.b_0l.map_values(&|v| mult_matrix(alg, &imaginary(v), true)),
        spec.b_0r.map_values(&|v| mult_matrix(alg, &imaginary(v), false)),
    ]);
    ConformalSpec { n: alg.dim(), a: spec.b_minus.clone(), c, lambda, omega }
}

fn dot<S: Scalar>(x: &[S], y: &[S]) -> S {
    x.iter().zip(y).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

pub fn conformal_rhs<S: Scalar>(cs: &ConformalSpec<S>, t: &S, xi: &[S]) -> Result<Vec<S>> {
    if xi.len() != cs.n {
        return Err(Error::DimensionMismatch { expected: cs.n, found: xi.len() });
    }
    let a = cs.a.eval(t)?;
    let c = cs.c.eval(t)?;
    let lambda = cs.lambda.eval(t)?[0].clone();
    let omega = cs.eval_omega(t)?;
    let xx = dot(xi, xi);
    let two_cx = S::from_i64(2) * dot(&c, xi);
    Ok((0..cs.n)
        .map(|k| {
            a[k].clone() + lambda.clone() * xi[k].clone() + dot(&omega[k], xi) + c[k].clone() * xx.clone()
                - two_cx.clone() * xi[k].clone()
        })
        .collect())
}

/// `max |Ω + Ωᵀ|` at `t`.
pub fn omega_antisymmetry_residual<S: Scalar>(cs: &ConformalSpec<S>, t: &S) -> Result<S> {
    let m = cs.eval_omega(t)?;
    let mut worst = S::zero();
    for i in 0..cs.n {
        for j in 0..cs.n {
            let r = (m[i][j].clone() + m[j][i].clone()).abs();
            if r > worst {
                worst = r;
            }
        }
    }
    Ok(worst)
}

/// Largest coefficient of `(a b⁺) a − 2g(b⁺*, a) a + b⁺* g(a, a)`.
pub fn quadratic_identity_residual<S: Scalar>(b_plus: &Element<S>, a: &Element<S>) -> Result<S> {
    let lhs = a.checked_mul(b_plus)?.checked_mul(a)?;
    let bc = b_plus.conj();
    let rhs = a.scale(&(S::from_i64(2) * bc.inner(a))) - bc.scale(&a.norm_sq());
    Ok((lhs - rhs).coeffs().iter().map(Scalar::abs).fold(S::zero(), |m, x| if x > m { x } else { m }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalCheck {
    pub samples: usize,
    pub seed: u64,
    pub exact: bool,
    /// `max |conformal_rhs − rhs|` over all sampled coordinates.
    pub max_residual: f64,
    pub max_antisymmetry: f64,
}

impl ConformalCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.samples,
            "seed": self.seed,
            "exact": self.exact,
            "max_residual": self.max_residual,
            "max_antisymmetry": self.max_antisymmetry,
        })
    }
}

/// Compares both right-hand sides at random `t = p/64 ∈ [−1, 1]` and random
/// states with coefficients `p/q`, `|p| ≤ 9`, `q ≤ 6`.
pub fn conformal_check<S: Scalar>(spec: &RiccatiSpec<S>, samples: usize, seed: u64) -> Result<ConformalCheck> {
    let cs = to_conformal(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut worst, mut anti) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let t = S::from_ratio(rng.random_range(-64..=64), 64);
        let coeffs = (0..spec.algebra.dim()).map(|_| S::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=6))).collect();
        let a = Element::new(spec.algebra, coeffs)?;
        let direct = rhs(spec, &t, &a)?;
        let conf = conformal_rhs(&cs, &t, a.coeffs())?;
        for (x, y) in conf.iter().zip(direct.coeffs()) {
            worst = worst.max((x.clone() - y.clone()).abs().to_f64());
        }
        anti = anti.max(omega_antisymmetry_residual(&cs, &t)?.to_f64());
    }
    Ok(ConformalCheck { samples, seed, exact: S::EXACT, max_residual: worst, max_antisymmetry: anti })
}
