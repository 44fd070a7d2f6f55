use serde_json::{json, Value};

use super::{integrate, Integration, RiccatiSpec, Trajectory};
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The real Riccati superposition rule: the general solution from three
/// particular ones `x1, x2, x3` and a constant `k`.
pub fn superposition_real<S: Scalar>(x1: &S, x2: &S, x3: &S, k: &S) -> Result<S> {
    let d32 = x3.clone() - x2.clone();
    let d31 = x3.clone() - x1.clone();
    let den = d32.clone() + k.clone() * d31.clone();
    if den.is_zero() {
        return Err(Error::SingularCombination);
    }
    Ok((x1.clone() * d32 + k.clone() * x2.clone() * d31) / den)
}

/// Superposed curve versus a direct solve with the matching initial value.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionCheck {
    pub initial: [f64; 3],
    pub k: f64,
    pub combined_initial: f64,
    pub times: Vec<f64>,
    pub superposed: Vec<f64>,
    pub direct: Vec<f64>,
    pub max_error: f64,
    pub blew_up: bool,
}

impl SuperpositionCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "initial": self.initial,
            "k": self.k,
            "combined_initial": self.combined_initial,
            "max_error": self.max_error,
            "blew_up": self.blew_up,
            "points": self.times.len(),
        })
    }
}

/// Integrates three particular solutions of a real Riccati equation, combines
/// them pointwise with constant `k`, and compares against the solution
/// started from the combined initial value.
pub fn superposition_check(spec: &RiccatiSpec<f64>, initial: [f64; 3], k: f64, win: Integration) -> Result<SuperpositionCheck> {
    if spec.algebra != Algebra::R {
        return Err(Error::AlgebraMismatch { expected: Algebra::R, found: spec.algebra });
    }
    let run = |x0: f64| -> Result<Trajectory> { integrate(spec, &Element::real(Algebra::R, x0), win) };
    let [a, b, c] = [run(initial[0])?, run(initial[1])?, run(initial[2])?];
    let combined_initial = superposition_real(&initial[0], &initial[1], &initial[2], &k)?;
    let d = run(combined_initial)?;
    let runs = [&a, &b, &c, &d];
    let n = runs.iter().map(|t| t.times.len()).min().unwrap_or(0);
    let blew_up = runs.iter().any(|t| t.blew_up);
    let x = |t: &Trajectory, i: usize| t.states[i].coeffs()[0];
    let mut superposed = Vec::with_capacity(n);
    for i in 0..n {
        superposed.push(superposition_real(&x(&a, i), &x(&b, i), &x(&c, i), &k)?);
    }
    let direct: Vec<f64> = (0..n).map(|i| x(&d, i)).collect();
    let max_error = superposed.iter().zip(&direct).map(|(s, d)| (s - d).abs()).fold(0.0, f64::max);
    Ok(SuperpositionCheck {
        initial,
        k,
        combined_initial,
        times: a.times[..n].to_vec(),
        superposed,
        direct,
        max_error,
        blew_up,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn k_zero_returns_first_solution() {
        assert_eq!(superposition_real(&rat(3, 7), &rat(1, 1), &rat(2, 1), &rat(0, 1)).unwrap(), rat(3, 7));
    }

    #[test]
    fn translates_of_a_line() {
        // x_i = t + i solve x' = 1; the combination with k = 1 is t + 2/3
        for t in -3..4 {
            let t = Rational::from_i64(t);
            let one = rat(1, 1);
            let got = superposition_real(&t, &(t.clone() + one.clone()), &(t.clone() + rat(2, 1)), &one).unwrap();
            assert_eq!(got, t + rat(2, 3));
        }
    }

    #[test]
    fn singular_denominator() {
        let x = rat(1, 1);
        assert!(matches!(superposition_real(&x, &x, &x, &rat(5, 1)), Err(Error::SingularCombination)));
        assert!(superposition_real(&0.0, &1.0, &2.0, &-0.5).is_err());
    }
}
