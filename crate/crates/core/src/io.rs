//! CSV writers for trajectories and wave solutions.

use std::io::Write;

use crate::error::Result;
use crate::lift::ProjectedTrajectory;
use crate::riccati::Trajectory;
use crate::schrodinger::WaveSolution;

fn header(fixed: &[&str], groups: &[(&str, usize)]) -> Vec<String> {
    let mut h: Vec<String> = fixed.iter().map(|s| s.to_string()).collect();
    for (prefix, n) in groups {
        h.extend((0..*n).map(|i| format!("{prefix}_{i}")));
    }
    h
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

/// Columns `t, x_0..x_{n−1}`.
pub fn write_trajectory_csv<W: Write>(out: W, traj: &Trajectory) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(&["t"], &[("x", traj.algebra.dim())]))?;
    for (t, s) in traj.times.iter().zip(&traj.states) {
        w.write_record(std::iter::once(num(*t)).chain(s.coeffs().iter().map(|x| num(*x))))?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `t, chart, w_0..w_{n−1}`.
pub fn write_projected_csv<W: Write>(out: W, traj: &ProjectedTrajectory) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(&["t", "chart"], &[("w", traj.algebra.dim())]))?;
    for (t, p) in traj.times.iter().zip(&traj.points) {
        let row = [num(*t), p.chart.label().to_string()].into_iter().chain(p.rep.coeffs().iter().map(|x| num(*x)));
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `x, u_0..u_3, psi_0..psi_3, residual`.
pub fn write_wave_csv<W: Write>(out: W, sol: &WaveSolution) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut h = header(&["x"], &[("u", 4), ("psi", 4)]);
    h.push("residual".into());
    w.write_record(h)?;
    for k in 0..sol.xs.len() {
        let row = std::iter::once(num(sol.xs[k]))
            .chain(sol.u[k].coeffs().iter().map(|x| num(*x)))
            .chain(sol.psi[k].coeffs().iter().map(|x| num(*x)))
            .chain(std::iter::once(num(sol.residual[k])));
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Element};

    #[test]
    fn trajectory_layout() {
        let traj = Trajectory {
            algebra: Algebra::C,
            times: vec![0.0, 0.5],
            states: vec![Element::new(Algebra::C, vec![1.0, 0.0]).unwrap(), Element::new(Algebra::C, vec![1.5, -2.0]).unwrap()],
            step: 0.5,
            method: "rk4",
            blew_up: false,
        };
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &traj).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "t,x_0,x_1\n0e0,1e0,0e0\n5e-1,1.5e0,-2e0\n");
    }
}
