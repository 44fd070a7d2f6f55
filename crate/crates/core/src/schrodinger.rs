//! Zero-energy stationary states of the quaternionic Schrödinger equation on
//! the line through the log-derivative `u = Ψ' Ψ^{-1}`, which obeys
//! `u' = −u² + b(x)`.

use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::ode::{self, within};
use crate::riccati::{reject_unknown, CoeffFn, Integration, RiccatiSpec};
use crate::scalar::Scalar;
use crate::vfield::{closure, generators, ClosureOptions, ClosureReport};

const H: Algebra = Algebra::H;

#[derive(Debug, Clone, PartialEq)]
pub struct SchrodingerSpec<S> {
    pub hbar: S,
    pub m: S,
    /// Real potential, one component.
    pub v: CoeffFn<S>,
    /// Complex potential `w_0 + w_1 i`, two components.
    pub w: CoeffFn<S>,
    /// Energy; only `0` is supported.
    pub energy: S,
}

impl<S: Scalar> SchrodingerSpec<S> {
    pub fn new(hbar: S, m: S, v: CoeffFn<S>, w: CoeffFn<S>) -> Result<Self> {
        let spec = SchrodingerSpec { hbar, m, v, w, energy: S::zero() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_energy(mut self, e: S) -> Self {
        self.energy = e;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.hbar <= S::zero() || self.m <= S::zero() {
            return Err(Error::Invalid("hbar and m must be positive".into()));
        }
        for (c, n, name) in [(&self.v, 1, "V"), (&self.w, 2, "W")] {
            let found = c.len()?;
            if found != n {
                return Err(Error::Invalid(format!("{name} needs {n} components, got {found}")));
            }
        }
        Ok(())
    }

    /// `2m/ħ²`.
    pub fn coupling(&self) -> S {
        S::from_i64(2) * self.m.clone() / (self.hbar.clone() * self.hbar.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "hbar": self.hbar.to_json(),
            "m": self.m.to_json(),
            "E": self.energy.to_json(),
            "V": self.v.to_json(),
            "W": self.w.to_json(),
        })
    }

    /// `{hbar, m, E, V, W}`; `hbar` and `m` default to 1, `E` to 0, potentials to 0.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Invalid("potential spec must be a JSON object".into()))?;
        reject_unknown(obj, &["hbar", "m", "E", "V", "W"], "potential spec")?;
        let num = |k: &str| obj.get(k).map(S::from_json).transpose();
        let coeff = |k: &str, n: usize| match obj.get(k) {
            Some(node) => CoeffFn::from_json(node),
            None => Ok(CoeffFn::zero(n)),
        };
        let spec = SchrodingerSpec {
            hbar: num("hbar")?.unwrap_or_else(S::one),
            m: num("m")?.unwrap_or_else(S::one),
            v: coeff("V", 1)?,
            w: coeff("W", 2)?,
            energy: num("E")?.unwrap_or_else(S::zero),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// `du/dx = −u² + b(x)` with `b = (2m/ħ²)(V + k W)`, as a Riccati spec over ℍ.
pub fn riccati_from_potentials<S: Scalar>(spec: &SchrodingerSpec<S>) -> Result<RiccatiSpec<S>> {
    spec.validate()?;
    if !spec.energy.is_zero() {
        return Err(Error::Unsupported("only the E = 0 stationary problem reduces to a Riccati equation".into()));
    }
    let g = spec.coupling();
    let real = spec.v.map_values(&|v| vec![g.clone() * v[0].clone(), S::zero(), S::zero(), S::zero()]);
    // k (w0 + w1 i) = w0 k + w1 j
    let kw = spec.w.map_values(&|w| vec![S::zero(), S::zero(), g.clone() * w[1].clone(), g.clone() * w[0].clone()]);
    RiccatiSpec::new(
        H,
        CoeffFn::Sum(vec![real, kw]),
        CoeffFn::zero(4),
        CoeffFn::zero(4),
        CoeffFn::Const(Element::real(H, -S::one()).into_coeffs()),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveSolution {
    pub xs: Vec<f64>,
    pub u: Vec<Element<f64>>,
    pub psi: Vec<Element<f64>>,
    /// `‖{i[(ħ²/2m)Ψ'' − VΨ] + jW}Ψ‖` per grid point; boundary values use one-sided stencils.
    pub residual: Vec<f64>,
    pub blew_up: bool,
}

impl WaveSolution {
    /// Largest residual over interior points.
    pub fn max_residual(&self) -> f64 {
        interior(&self.residual).iter().copied().fold(0.0, f64::max)
    }

    /// `max ‖(Ψ_{k+1} − Ψ_{k−1})/2h − u_k Ψ_k‖` over interior points.
    pub fn log_derivative_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in 1..self.xs.len().saturating_sub(1) {
            let h2 = self.xs[k + 1] - self.xs[k - 1];
            let d = (self.psi[k + 1].clone() - self.psi[k - 1].clone()).scale(&(1.0 / h2));
            worst = worst.max((d - &self.u[k] * &self.psi[k]).norm());
        }
        worst
    }
}

fn interior(v: &[f64]) -> &[f64] {
    if v.len() > 2 {
        &v[1..v.len() - 1]
    } else {
        &[]
    }
}

/// Second derivative on a uniform grid: central inside, one-sided second order at the ends.
fn second_derivative(ys: &[Element<f64>], h: f64) -> Vec<Element<f64>> {
    let n = ys.len();
    let h2 = 1.0 / (h * h);
    let comb = |idx: [usize; 4], c: [f64; 4]| {
        idx.iter().zip(c).fold(Element::zero(H), |acc, (&i, w)| acc + ys[i].scale(&(w * h2)))
    };
    (0..n)
        .map(|k| {
            if n < 4 {
                Element::zero(H)
            } else if k == 0 {
                comb([0, 1, 2, 3], [2.0, -5.0, 4.0, -1.0])
            } else if k == n - 1 {
                comb([n - 1, n - 2, n - 3, n - 4], [2.0, -5.0, 4.0, -1.0])
            } else {
                comb([k - 1, k, k + 1, k], [1.0, -2.0, 1.0, 0.0])
            }
        })
        .collect()
}

/// Integrates `(u, Ψ)` jointly with RK4 (`Ψ' = uΨ`, Ψ kept on the right) and
/// evaluates the stationary-equation residual.
pub fn solve_and_reconstruct(
    spec: &SchrodingerSpec<f64>,
    u0: &Element<f64>,
    psi0: &Element<f64>,
    win: Integration,
) -> Result<WaveSolution> {
    let ric = riccati_from_potentials(spec)?;
    for e in [u0, psi0] {
        if e.algebra() != H {
            return Err(Error::AlgebraMismatch { expected: H, found: e.algebra() });
        }
    }
    if psi0.is_zero() {
        return Err(Error::Invalid("psi0 must be nonzero".into()));
    }
    let f = |x: f64, y: &[f64]| -> Vec<f64> {
        let u = Element::new(H, y[..4].to_vec()).expect("state length");
        let psi = Element::new(H, y[4..].to_vec()).expect("state length");
        let mut out = crate::riccati::rhs(&ric, &x, &u).expect("validated spec").into_coeffs();
        out.extend((&u * &psi).into_coeffs());
        out
    };
    let y0: Vec<f64> = u0.coeffs().iter().chain(psi0.coeffs()).copied().collect();
    let raw = ode::integrate(f, y0, win.t0, win.t1, win.step, win.bound)?;
    let split = |s: &Vec<f64>, r: std::ops::Range<usize>| Element::new(H, s[r].to_vec()).expect("state length");
    let u: Vec<_> = raw.states.iter().map(|s| split(s, 0..4)).collect();
    let psi: Vec<_> = raw.states.iter().map(|s| split(s, 4..8)).collect();

    let i = Element::basis(H, 1);
    let j = Element::basis(H, 2);
    let kinetic = spec.hbar * spec.hbar / (2.0 * spec.m);
    let d2 = second_derivative(&psi, win.step);
    let mut residual = Vec::with_capacity(psi.len());
    for (k, x) in raw.times.iter().enumerate() {
        let v = spec.v.eval(x)?[0];
        let wv = spec.w.eval(x)?;
        let w = Element::new(H, vec![wv[0], wv[1], 0.0, 0.0])?;
        let inner = d2[k].scale(&kinetic) - psi[k].scale(&v);
        let r = &i * &inner + &(&j * &w) * &psi[k];
        residual.push(r.norm());
    }
    let blew_up = raw.blew_up || !raw.states.last().is_some_and(|s| within(s, win.bound));
    Ok(WaveSolution { xs: raw.times, u, psi, residual, blew_up })
}

/// Closure of `{λ(u²), λ(e_0), …, λ(e_3)}` over ℍ.
pub fn minimal_algebra() -> ClosureReport {
    closure(&generators::schrodinger_generators(), ClosureOptions::default())
}

pub fn minimal_algebra_dimension() -> usize {
    minimal_algebra().dimension
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn constant_spec(v: Rational, w: [Rational; 2]) -> SchrodingerSpec<Rational> {
        SchrodingerSpec::new(rat(1, 1), rat(1, 2), CoeffFn::Const(vec![v]), CoeffFn::Const(w.to_vec())).unwrap()
    }

    #[test]
    fn free_case_is_pure_quadratic() {
        let ric = riccati_from_potentials(&constant_spec(rat(0, 1), [rat(0, 1), rat(0, 1)])).unwrap();
        let u = Element::new(H, vec![rat(1, 2), rat(1, 3), rat(0, 1), rat(2, 1)]).unwrap();
        assert_eq!(crate::riccati::rhs(&ric, &rat(0, 1), &u).unwrap(), -(&u * &u));
    }

    #[test]
    fn complex_potential_enters_through_k() {
        // 2m/ħ² = 1 here, so b = V + k(w0 + w1 i)
        let ric = riccati_from_potentials(&constant_spec(rat(3, 1), [rat(5, 1), rat(7, 1)])).unwrap();
        let b = Element::new(H, ric.b_minus.eval(&rat(0, 1)).unwrap()).unwrap();
        let k = Element::basis(H, 3);
        let w = Element::new(H, vec![rat(5, 1), rat(7, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(b, Element::real(H, rat(3, 1)) + &k * &w);
        assert_eq!(b.coeffs(), &[rat(3, 1), rat(0, 1), rat(7, 1), rat(5, 1)]);
    }

    #[test]
    fn nonzero_energy_is_refused() {
        let spec = constant_spec(rat(0, 1), [rat(0, 1), rat(0, 1)]).with_energy(rat(1, 1));
        assert!(matches!(riccati_from_potentials(&spec), Err(Error::Unsupported(_))));
    }

    #[test]
    fn bad_specs() {
        assert!(SchrodingerSpec::new(rat(0, 1), rat(1, 1), CoeffFn::zero(1), CoeffFn::zero(2)).is_err());
        assert!(SchrodingerSpec::new(rat(1, 1), rat(1, 1), CoeffFn::zero(2), CoeffFn::zero(2)).is_err());
        let v = serde_json::json!({"hbar": 1, "V": {"type": "const", "params": {"value": [2]}}, "X": 1});
        assert!(SchrodingerSpec::<f64>::from_json(&v).is_err());
    }

    #[test]
    fn second_derivative_of_quadratic_is_exact() {
        let ys: Vec<_> = (0..6).map(|k| Element::real(H, (k as f64 * 0.1).powi(2))).collect();
        for d in second_derivative(&ys, 0.1) {
            assert!((d.coeffs()[0] - 2.0).abs() < 1e-9);
        }
    }
}
