//! Riccati equations `a' = b⁻ + b^{0_L} a + a b^{0_R} + a b⁺ a` over a normed
//! division algebra.

mod coeff;
mod conformal;
mod superposition;

use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::ode::{self, DEFAULT_BLOWUP_BOUND};
use crate::scalar::Scalar;

pub use coeff::CoeffFn;
pub(crate) use coeff::reject_unknown;
pub use conformal::{conformal_check, conformal_rhs, ConformalCheck, omega_antisymmetry_residual, quadratic_identity_residual, to_conformal, ConformalSpec};
pub use superposition::{superposition_check, superposition_real, SuperpositionCheck};

/// The four algebra-valued coefficient functions.
#[derive(Debug, Clone, PartialEq)]
pub struct RiccatiSpec<S> {
    pub algebra: Algebra,
    pub b_minus: CoeffFn<S>,
    pub b_0l: CoeffFn<S>,
    pub b_0r: CoeffFn<S>,
    pub b_plus: CoeffFn<S>,
}

impl<S: Scalar> RiccatiSpec<S> {
    pub fn new(
        algebra: Algebra,
        b_minus: CoeffFn<S>,
        b_0l: CoeffFn<S>,
        b_0r: CoeffFn<S>,
        b_plus: CoeffFn<S>,
    ) -> Result<Self> {
        let spec = RiccatiSpec { algebra, b_minus, b_0l, b_0r, b_plus };
        for c in spec.coefficients() {
            let n = c.len()?;
            if n != algebra.dim() {
                return Err(Error::DimensionMismatch { expected: algebra.dim(), found: n });
            }
        }
        Ok(spec)
    }

    pub fn zero(algebra: Algebra) -> Self {
        let z = || CoeffFn::zero(algebra.dim());
        RiccatiSpec { algebra, b_minus: z(), b_0l: z(), b_0r: z(), b_plus: z() }
    }

    /// Constant coefficients.
    pub fn constant(b_minus: Element<S>, b_0l: Element<S>, b_0r: Element<S>, b_plus: Element<S>) -> Result<Self> {
        let c = |e: Element<S>| CoeffFn::Const(e.into_coeffs());
        let alg = b_minus.algebra();
        for e in [&b_0l, &b_0r, &b_plus] {
            if e.algebra() != alg {
                return Err(Error::AlgebraMismatch { expected: alg, found: e.algebra() });
            }
        }
        Self::new(alg, c(b_minus), c(b_0l), c(b_0r), c(b_plus))
    }

    pub fn coefficients(&self) -> [&CoeffFn<S>; 4] {
        [&self.b_minus, &self.b_0l, &self.b_0r, &self.b_plus]
    }

    /// `(b⁻, b^{0_L}, b^{0_R}, b⁺)` at `t`.
    pub fn eval(&self, t: &S) -> Result<[Element<S>; 4]> {
        let e = |c: &CoeffFn<S>| Element::new(self.algebra, c.eval(t)?);
        Ok([e(&self.b_minus)?, e(&self.b_0l)?, e(&self.b_0r)?, e(&self.b_plus)?])
    }

    pub fn convert<T: Scalar>(&self) -> RiccatiSpec<T> {
        RiccatiSpec {
            algebra: self.algebra,
            b_minus: self.b_minus.convert(),
            b_0l: self.b_0l.convert(),
            b_0r: self.b_0r.convert(),
            b_plus: self.b_plus.convert(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra.to_string(),
            "b_minus": self.b_minus.to_json(),
            "b_0L": self.b_0l.to_json(),
            "b_0R": self.b_0r.to_json(),
            "b_plus": self.b_plus.to_json(),
        })
    }

    /// Reads `{algebra, b_minus, b_0L, b_0R, b_plus}`; missing coefficients are zero.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Invalid("spec must be a JSON object".into()))?;
        reject_unknown(obj, &["algebra", "b_minus", "b_0L", "b_0R", "b_plus"], "Riccati spec")?;
        let algebra: Algebra = obj
            .get("algebra")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Invalid("spec needs a string `algebra`".into()))?
            .parse()?;
        let coeff = |k: &str| match obj.get(k) {
            Some(node) => CoeffFn::from_json(node),
            None => Ok(CoeffFn::zero(algebra.dim())),
        };
        Self::new(algebra, coeff("b_minus")?, coeff("b_0L")?, coeff("b_0R")?, coeff("b_plus")?)
    }
}

/// `b⁻ + b^{0_L} a + a b^{0_R} + (a b⁺) a`.
pub fn rhs<S: Scalar>(spec: &RiccatiSpec<S>, t: &S, a: &Element<S>) -> Result<Element<S>> {
    if a.algebra() != spec.algebra {
        return Err(Error::AlgebraMismatch { expected: spec.algebra, found: a.algebra() });
    }
    let [bm, bl, br, bp] = spec.eval(t)?;
    Ok(bm + &bl * a + a * &br + &(a * &bp) * a)
}

/// Integration window and blow-up policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integration {
    pub t0: f64,
    pub t1: f64,
    pub step: f64,
    pub bound: f64,
}

impl Default for Integration {
    fn default() -> Self {
        Integration { t0: 0.0, t1: 1.0, step: 1e-3, bound: DEFAULT_BLOWUP_BOUND }
    }
}

impl Integration {
    pub fn to_json(&self) -> Value {
        json!({ "t0": self.t0, "t1": self.t1, "step": self.step, "bound": self.bound })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub algebra: Algebra,
    pub times: Vec<f64>,
    pub states: Vec<Element<f64>>,
    pub step: f64,
    pub method: &'static str,
    pub blew_up: bool,
}

impl Trajectory {
    pub fn last(&self) -> &Element<f64> {
        self.states.last().expect("trajectories hold the initial state")
    }

    /// `max_k ‖self_k − other_k‖` over the common prefix of the two grids.
    pub fn sup_distance(&self, other: &Trajectory) -> f64 {
        self.states
            .iter()
            .zip(&other.states)
            .map(|(a, b)| (a.clone() - b.clone()).norm())
            .fold(0.0, f64::max)
    }
}

/// Classical RK4 on a fixed grid; see [`crate::ode::integrate`].
pub fn integrate(spec: &RiccatiSpec<f64>, a0: &Element<f64>, win: Integration) -> Result<Trajectory> {
    if a0.algebra() != spec.algebra {
        return Err(Error::AlgebraMismatch { expected: spec.algebra, found: a0.algebra() });
    }
    spec.eval(&win.t0)?;
    let alg = spec.algebra;
    let f = |t: f64, y: &[f64]| -> Vec<f64> {
        let a = Element::new(alg, y.to_vec()).expect("state length");
        rhs(spec, &t, &a).expect("validated spec").into_coeffs()
    };
    let raw = ode::integrate(f, a0.coeffs().to_vec(), win.t0, win.t1, win.step, win.bound)?;
    Ok(Trajectory {
        algebra: alg,
        times: raw.times,
        states: raw.states.into_iter().map(|s| Element::new(alg, s).expect("state length")).collect(),
        step: win.step,
        method: "rk4",
        blew_up: raw.blew_up,
    })
}
