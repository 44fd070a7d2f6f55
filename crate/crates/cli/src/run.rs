use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use nda_riccati::algebra::laws::check_composition_laws;
use nda_riccati::hamiltonian::{
    hamiltonian_of, lie_derivative_check, obstruction_witness, omega_octonion, omega_quaternion, poisson,
    real_riccati_fields,
};
use nda_riccati::io::{write_projected_csv, write_trajectory_csv, write_wave_csv};
use nda_riccati::lift::{compare_lift, lift_integrate_and_project, riccati_to_lift, LiftSpec};
use nda_riccati::riccati::{conformal_check, integrate, superposition_check, Integration, RiccatiSpec};
use nda_riccati::scalar::parse_rational;
use nda_riccati::schrodinger::{minimal_algebra_dimension, solve_and_reconstruct, SchrodingerSpec};
use nda_riccati::vfield::{closure, ClosureOptions, GeneratorSet};
use nda_riccati::{Algebra, Element, Rational, Scalar};
use serde_json::{json, Value};

use crate::{Command, Window};

type Res<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Tolerance = 2,
    BlowUp = 3,
}

pub fn execute(cmd: &Command) -> Res<Status> {
    let config = serde_json::to_value(cmd)?;
    match cmd {
        Command::Laws(a) => {
            let alg: Algebra = a.algebra.parse()?;
            let exact = !a.carrier.float;
            let r = check_composition_laws(alg, a.samples, a.seed, exact);
            let ok = if exact { r.max_residual() == 0.0 } else { r.within(1e-12) };
            let mut v = serde_json::to_value(&r)?;
            v["tolerance"] = json!(if exact { 0.0 } else { 1e-12 });
            v["status"] = json!(if ok { "ok" } else { "fail" });
            report(config, v, &a.output.out)?;
            Ok(if ok { Status::Ok } else { Status::Tolerance })
        }
        Command::Closure(a) => {
            let alg: Algebra = a.algebra.parse()?;
            let set: GeneratorSet = a.generators.parse()?;
            let r = closure(&set.build(alg)?, ClosureOptions { degree_cap: a.degree_cap, round_cap: a.round_cap });
            report(config, r.to_json(), &a.output.out)?;
            Ok(Status::Ok)
        }
        Command::Integrate(a) => {
            let (spec, spec_json) = load_spec::<f64>(&a.spec)?;
            let x0 = initial(spec.algebra, a.x0.as_deref())?;
            let traj = integrate(&spec, &x0, window(a.window))?;
            if let Some(path) = &a.output.out {
                write_trajectory_csv(create(path)?, &traj)?;
            }
            let summary = json!({
                "spec": spec_json,
                "final": traj.last().coeffs(),
                "t_end": traj.times.last(),
                "points": traj.times.len(),
                "method": traj.method,
                "blew_up": traj.blew_up,
            });
            report(config, summary, &None)?;
            Ok(if traj.blew_up { Status::BlowUp } else { Status::Ok })
        }
        Command::Superposition(a) => {
            let (spec, spec_json) = load_spec::<f64>(&a.spec)?;
            let xs = numbers(&a.x0)?;
            let initial: [f64; 3] =
                xs.try_into().map_err(|v: Vec<f64>| format!("--x0 needs three values, got {}", v.len()))?;
            let c = superposition_check(&spec, initial, a.k, window(a.window))?;
            let ok = c.max_error < a.tol;
            let mut v = c.to_json();
            v["spec"] = spec_json;
            v["status"] = json!(if ok { "ok" } else { "fail" });
            report(config, v, &a.output.out)?;
            Ok(if c.blew_up {
                Status::BlowUp
            } else if ok {
                Status::Ok
            } else {
                Status::Tolerance
            })
        }
        Command::Conformal(a) => {
            let (check, spec_json, tol) = if a.carrier.exact {
                let (spec, j) = load_spec::<Rational>(&a.spec)?;
                (conformal_check(&spec, a.check, a.seed)?, j, 0.0)
            } else {
                let (spec, j) = load_spec::<f64>(&a.spec)?;
                (conformal_check(&spec, a.check, a.seed)?, j, 1e-12)
            };
            let ok = check.max_residual <= tol && check.max_antisymmetry <= tol;
            let mut v = check.to_json();
            v["spec"] = spec_json;
            v["tolerance"] = json!(tol);
            v["status"] = json!(if ok { "ok" } else { "fail" });
            report(config, v, &a.output.out)?;
            Ok(if ok { Status::Ok } else { Status::Tolerance })
        }
        Command::Lift(a) => {
            let (spec, spec_json) = load_spec::<f64>(&a.spec)?;
            let q0 = initial(spec.algebra, a.x0.as_deref())?;
            let lift = if a.general {
                LiftSpec::new(spec.algebra, spec.b_0l.clone(), spec.b_minus.clone(), spec.b_plus.clone(), spec.b_0r.clone())?
                    .with_general(true)
            } else {
                riccati_to_lift(&spec)?
            };
            let win = window(a.window);
            let (projected, comparison) = if a.compare {
                let c = compare_lift(&lift, &spec, &q0, win)?;
                (c.projected.clone(), Some(c))
            } else {
                (lift_integrate_and_project(&lift, (&q0, &Element::one(spec.algebra)), win)?, None)
            };
            if let Some(path) = &a.output.out {
                write_projected_csv(create(path)?, &projected)?;
            }
            let last = projected.points.last().expect("trajectories hold the initial point");
            let mut v = json!({
                "spec": spec_json,
                "lift": lift.to_json(),
                "final_chart": last.chart.label(),
                "final": last.affine().map(|q| q.coeffs().to_vec()),
                "chart_switches": projected.switches.len(),
                "max_switch_gap": projected.max_gap(),
                "branch_switches": projected.branch_switches,
                "points": projected.times.len(),
                "blew_up": projected.blew_up,
            });
            let mut status = if projected.blew_up { Status::BlowUp } else { Status::Ok };
            if let Some(c) = comparison {
                let ok = c.max_deviation < a.tol;
                v["comparison"] = c.to_json();
                v["status"] = json!(if ok { "ok" } else { "fail" });
                if c.direct.blew_up {
                    status = Status::BlowUp;
                } else if !ok && status == Status::Ok {
                    status = Status::Tolerance;
                }
            }
            report(config, v, &None)?;
            Ok(status)
        }
        Command::Symplectic(a) => {
            let alg: Algebra = a.algebra.parse()?;
            let omega = match alg {
                Algebra::O => omega_octonion(),
                Algebra::H => omega_quaternion(),
                other => return Err(format!("no radial symplectic form for {other}; use H or O").into()),
            };
            let fields = real_riccati_fields();
            let mut ok = true;
            let mut checks = Vec::new();
            let mut hamiltonians = Vec::new();
            for f in &fields {
                let c = lie_derivative_check(f, &omega, a.samples, a.seed)?;
                ok &= c.passed();
                checks.push(c.to_json());
                let h = hamiltonian_of(f, &omega)?;
                hamiltonians.push(json!({"field": f.name, "hamiltonian": h.to_string()}));
            }
            let hs: Vec<_> = fields.iter().map(|f| hamiltonian_of(f, &omega)).collect::<Result<_, _>>()?;
            let mut brackets = Vec::new();
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let pb = poisson(&hs[i], &hs[j], &omega)?;
                brackets.push(json!({
                    "left": fields[i].name,
                    "right": fields[j].name,
                    "bracket": pb.to_string(),
                }));
            }
            let witness = obstruction_witness(alg)?;
            ok &= witness.with_euler == 0;
            let v = json!({
                "form": omega.to_json(),
                "lie_derivative": checks,
                "hamiltonians": hamiltonians,
                "poisson": brackets,
                "constant_form_witness": witness.to_json(),
                "status": if ok { "ok" } else { "fail" },
            });
            report(config, v, &a.output.out)?;
            Ok(if ok { Status::Ok } else { Status::Tolerance })
        }
        Command::Schrodinger(a) => {
            let spec_json = read_json(&a.spec)?;
            let spec = SchrodingerSpec::<f64>::from_json(&spec_json)?;
            let u0 = initial(Algebra::H, Some(&a.u0))?;
            let psi0 = initial(Algebra::H, Some(&a.psi0))?;
            let sol = solve_and_reconstruct(&spec, &u0, &psi0, window(a.window))?;
            if let Some(path) = &a.output.out {
                write_wave_csv(create(path)?, &sol)?;
            }
            let (res, logd) = (sol.max_residual(), sol.log_derivative_error());
            let ok = res < a.tol && logd < a.tol;
            let v = json!({
                "spec": spec.to_json(),
                "max_residual": res,
                "log_derivative_error": logd,
                "x_end": sol.xs.last(),
                "points": sol.xs.len(),
                "blew_up": sol.blew_up,
                "minimal_algebra_dimension": minimal_algebra_dimension(),
                "status": if ok { "ok" } else { "fail" },
            });
            report(config, v, &None)?;
            Ok(if sol.blew_up {
                Status::BlowUp
            } else if ok {
                Status::Ok
            } else {
                Status::Tolerance
            })
        }
    }
}

fn window(w: Window) -> Integration {
    Integration { t0: w.t0, t1: w.t1, step: w.step, bound: w.bound }
}

fn read_json(path: &Path) -> Res<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn load_spec<S: Scalar>(path: &Path) -> Res<(RiccatiSpec<S>, Value)> {
    let spec = RiccatiSpec::<S>::from_json(&read_json(path)?)?;
    let resolved = spec.to_json();
    Ok((spec, resolved))
}

/// `a,b,…` or a JSON array; entries may be decimals or `p/q`.
fn numbers(s: &str) -> Res<Vec<f64>> {
    let t = s.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t)?;
        let items = v.as_array().ok_or("expected a JSON array")?;
        return items.iter().map(|x| f64::from_json(x).map_err(Into::into)).collect();
    }
    t.split(',')
        .map(|p| {
            let p = p.trim();
            match p.parse::<f64>() {
                Ok(x) => Ok(x),
                Err(_) => Ok(parse_rational(p)?.to_f64()),
            }
        })
        .collect()
}

fn initial(alg: Algebra, s: Option<&str>) -> Res<Element<f64>> {
    match s {
        None => Ok(Element::zero(alg)),
        Some(s) => Ok(Element::new(alg, numbers(s)?)?),
    }
}

fn create(path: &PathBuf) -> Res<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).map_err(|e| format!("{}: {e}", path.display()))?))
}

fn report(config: Value, mut body: Value, out: &Option<PathBuf>) -> Res<()> {
    body["config"] = config;
    let text = serde_json::to_string_pretty(&body)? + "\n";
    match out {
        Some(path) => create(path)?.write_all(text.as_bytes())?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
