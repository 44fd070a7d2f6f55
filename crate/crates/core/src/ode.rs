//! Fixed-step classical Runge–Kutta on flat `f64` states.

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_BLOWUP_BOUND: f64 = 1e8;

/// Time points `t0, t0 + h, …, t1`; the last step is shortened to land on `t1`.
pub fn time_grid(t0: f64, t1: f64, step: f64) -> Result<Vec<f64>> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::Invalid(format!("step must be positive, got {step}")));
    }
    if !t0.is_finite() || !t1.is_finite() || t1 <= t0 {
        return Err(Error::Invalid(format!("need t1 > t0, got [{t0}, {t1}]")));
    }
    let n = ((t1 - t0) / step - 1e-9).ceil().max(1.0) as usize;
    let mut ts: Vec<f64> = (0..n).map(|k| t0 + k as f64 * step).collect();
    ts.push(t1);
    Ok(ts)
}

/// One RK4 step of `y' = f(t, y)`.
pub fn rk4_step(f: &impl Fn(f64, &[f64]) -> Vec<f64>, t: f64, y: &[f64], h: f64) -> Vec<f64> {
    let shift = |base: &[f64], k: &[f64], c: f64| -> Vec<f64> {
        base.iter().zip(k).map(|(b, k)| b + c * k).collect()
    };
    let k1 = f(t, y);
    let k2 = f(t + h / 2.0, &shift(y, &k1, h / 2.0));
    let k3 = f(t + h / 2.0, &shift(y, &k2, h / 2.0));
    let k4 = f(t + h, &shift(y, &k3, h));
    (0..y.len())
        .map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RawTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub blew_up: bool,
}

/// Integrates on [`time_grid`], stopping before the first state that is
/// non-finite or whose Euclidean norm exceeds `bound`.
pub fn integrate(
    f: impl Fn(f64, &[f64]) -> Vec<f64>,
    y0: Vec<f64>,
    t0: f64,
    t1: f64,
    step: f64,
    bound: f64,
) -> Result<RawTrajectory> {
    let grid = time_grid(t0, t1, step)?;
    let mut times = vec![grid[0]];
    let mut states = vec![y0];
    let mut blew_up = false;
    for w in grid.windows(2) {
        let y = rk4_step(&f, w[0], states.last().expect("nonempty"), w[1] - w[0]);
        if !within(&y, bound) {
            blew_up = true;
            break;
        }
        times.push(w[1]);
        states.push(y);
    }
    Ok(RawTrajectory { times, states, blew_up })
}

pub fn within(y: &[f64], bound: f64) -> bool {
    let n2: f64 = y.iter().map(|v| v * v).sum();
    n2.is_finite() && n2.sqrt() <= bound
}
