//! Projective lines over the division algebras and the linear systems on
//! `A² ∖ {0}` whose projections are Riccati equations.

use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::ode::{self, within};
use crate::riccati::{self, reject_unknown, CoeffFn, Integration, RiccatiSpec};
use crate::scalar::Scalar;

/// Charts fire above this representative norm, i.e. 10% past the unit sphere.
pub const SWITCH_THRESHOLD: f64 = 1.1;
/// Float zero test for `o_1 o_2` in the octonionic branch formula.
pub const BRANCH_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `w_1 = a_2 a_1^{-1}`, defined where `a_1 ≠ 0`.
    D1,
    /// `w_2 = a_1 a_2^{-1}`, defined where `a_2 ≠ 0`.
    D2,
}

impl Chart {
    pub fn other(self) -> Chart {
        match self {
            Chart::D1 => Chart::D2,
            Chart::D2 => Chart::D1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Chart::D1 => "D1",
            Chart::D2 => "D2",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint<S> {
    pub chart: Chart,
    pub rep: Element<S>,
}

impl<S: Scalar> ProjPoint<S> {
    /// Same point in the other chart.
    pub fn switch(&self) -> Result<Self> {
        Ok(ProjPoint { chart: self.chart.other(), rep: self.rep.inv()? })
    }

    /// The chart-`D2` coordinate, `None` at the point at infinity.
    pub fn affine(&self) -> Option<Element<S>> {
        match self.chart {
            Chart::D2 => Some(self.rep.clone()),
            Chart::D1 => self.rep.inv().ok(),
        }
    }
}

fn check_pair<S: Scalar>(a1: &Element<S>, a2: &Element<S>) -> Result<()> {
    if a1.algebra() != a2.algebra() {
        return Err(Error::AlgebraMismatch { expected: a1.algebra(), found: a2.algebra() });
    }
    if a1.is_zero() && a2.is_zero() {
        return Err(Error::Invalid("lift state (0, 0) is not on the punctured plane".into()));
    }
    Ok(())
}

/// The representative of `[a_1 : a_2]` in a fixed chart.
pub fn project_to<S: Scalar>(a1: &Element<S>, a2: &Element<S>, chart: Chart) -> Result<ProjPoint<S>> {
    check_pair(a1, a2)?;
    let rep = match chart {
        Chart::D2 => a1.checked_mul(&a2.inv()?)?,
        Chart::D1 => a2.checked_mul(&a1.inv()?)?,
    };
    Ok(ProjPoint { chart, rep })
}

/// Picks `D2` when `‖a_2‖ ≥ ‖a_1‖`, else `D1`.
pub fn project<S: Scalar>(a1: &Element<S>, a2: &Element<S>) -> Result<ProjPoint<S>> {
    check_pair(a1, a2)?;
    let chart = if a2.norm_sq() >= a1.norm_sq() { Chart::D2 } else { Chart::D1 };
    project_to(a1, a2, chart)
}

/// `o_1' = a11 o_1 + a12 o_2`, `o_2' = −a21 o_1 − a22 o_2` (the octonionic
/// case replaces the diagonal terms with the branch formula).
#[derive(Debug, Clone, PartialEq)]
pub struct LiftSpec<S> {
    pub algebra: Algebra,
    pub a11: CoeffFn<S>,
    pub a12: CoeffFn<S>,
    pub a21: CoeffFn<S>,
    pub a22: CoeffFn<S>,
    /// Opt-in for octonionic systems whose diagonal coefficients are not real.
    pub allow_general: bool,
}

impl<S: Scalar> LiftSpec<S> {
    pub fn new(algebra: Algebra, a11: CoeffFn<S>, a12: CoeffFn<S>, a21: CoeffFn<S>, a22: CoeffFn<S>) -> Result<Self> {
        for c in [&a11, &a12, &a21, &a22] {
            let n = c.len()?;
            if n != algebra.dim() {
                return Err(Error::DimensionMismatch { expected: algebra.dim(), found: n });
            }
        }
        Ok(LiftSpec { algebra, a11, a12, a21, a22, allow_general: false })
    }

    pub fn with_general(mut self, allow: bool) -> Self {
        self.allow_general = allow;
        self
    }

    /// True when `a11` and `a22` have no imaginary part for any `t`.
    pub fn real_diagonal(&self) -> bool {
        (1..self.algebra.dim()).all(|k| self.a11.component_vanishes(k) && self.a22.component_vanishes(k))
    }

    /// Whether `lift_rhs` uses the plain linear system.
    pub fn is_linear(&self) -> bool {
        self.algebra != Algebra::O || self.real_diagonal()
    }

    /// The Riccati equation satisfied by the chart-`D2` coordinate.
    pub fn projected_riccati(&self) -> RiccatiSpec<S> {
        RiccatiSpec {
            algebra: self.algebra,
            b_minus: self.a12.clone(),
            b_0l: self.a11.clone(),
            b_0r: self.a22.clone(),
            b_plus: self.a21.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra.to_string(),
            "a11": self.a11.to_json(),
            "a12": self.a12.to_json(),
            "a21": self.a21.to_json(),
            "a22": self.a22.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Invalid("lift spec must be a JSON object".into()))?;
        reject_unknown(obj, &["algebra", "a11", "a12", "a21", "a22"], "lift spec")?;
        let algebra: Algebra = obj
            .get("algebra")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Invalid("lift spec needs a string `algebra`".into()))?
            .parse()?;
        let coeff = |k: &str| match obj.get(k) {
            Some(node) => CoeffFn::from_json(node),
            None => Ok(CoeffFn::zero(algebra.dim())),
        };
        Self::new(algebra, coeff("a11")?, coeff("a12")?, coeff("a21")?, coeff("a22")?)
    }
}

/// `a12 = b⁻`, `a11 = b^{0_L}`, `a22 = b^{0_R}`, `a21 = b⁺`.
pub fn riccati_to_lift<S: Scalar>(spec: &RiccatiSpec<S>) -> Result<LiftSpec<S>> {
    let lift = LiftSpec::new(
        spec.algebra,
        spec.b_0l.clone(),
        spec.b_minus.clone(),
        spec.b_plus.clone(),
        spec.b_0r.clone(),
    )?;
    if !lift.is_linear() {
        return Err(Error::Unsupported(
            "octonionic linearisation needs real b_0L and b_0R".into(),
        ));
    }
    Ok(lift)
}

/// Which formula produced a tangent vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Linear,
    /// Octonionic branch for `o_1 o_2 ≠ 0`.
    Product,
}

fn product_vanishes<S: Scalar>(o1: &Element<S>, o2: &Element<S>) -> bool {
    let p = o1 * o2;
    if S::EXACT {
        p.is_zero()
    } else {
        p.norm() <= BRANCH_EPS
    }
}

/// Tangent vector of the lift at `(o_1, o_2)`.
pub fn lift_rhs<S: Scalar>(
    spec: &LiftSpec<S>,
    t: &S,
    o1: &Element<S>,
    o2: &Element<S>,
) -> Result<(Element<S>, Element<S>, Branch)> {
    check_pair(o1, o2)?;
    if o1.algebra() != spec.algebra {
        return Err(Error::AlgebraMismatch { expected: spec.algebra, found: o1.algebra() });
    }
    let alg = spec.algebra;
    let el = |c: &CoeffFn<S>| Element::new(alg, c.eval(t)?);
    let (a11, a12, a21, a22) = (el(&spec.a11)?, el(&spec.a12)?, el(&spec.a21)?, el(&spec.a22)?);
    let off1 = &a12 * o2;
    let off2 = -(&a21 * o1);
    if spec.is_linear() || product_vanishes(o1, o2) {
        if !spec.is_linear() && !spec.allow_general {
            return Err(Error::Unsupported("octonionic lift with non-real a11/a22".into()));
        }
        return Ok((&a11 * o1 + off1, off2 - &a22 * o2, Branch::Linear));
    }
    if !spec.allow_general {
        return Err(Error::Unsupported("octonionic lift with non-real a11/a22".into()));
    }
    let w = o1 * &o2.inv()?;
    let d1 = &(&a11 * &w) * o2 + off1;
    let inner = &o1.inv()? * &(&w * &a22);
    let d2 = off2 - &(o2 * &inner) * o2;
    Ok((d1, d2, Branch::Product))
}

/// `w_1' = −w_1 a12 w_1 − w_1 a11 − a22 w_1 − a21`, the equation in chart `D1`.
pub fn chart1_rhs<S: Scalar>(spec: &LiftSpec<S>, t: &S, w1: &Element<S>) -> Result<Element<S>> {
    let alg = spec.algebra;
    let el = |c: &CoeffFn<S>| Element::new(alg, c.eval(t)?);
    let (a11, a12, a21, a22) = (el(&spec.a11)?, el(&spec.a12)?, el(&spec.a21)?, el(&spec.a22)?);
    Ok(-(&(w1 * &a12) * w1) - w1 * &a11 - &a22 * w1 - a21)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartSwitch {
    pub index: usize,
    pub t: f64,
    pub to: Chart,
    /// `‖rep_new − rep_old^{-1}‖` at the switch.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedTrajectory {
    pub algebra: Algebra,
    pub times: Vec<f64>,
    pub points: Vec<ProjPoint<f64>>,
    pub switches: Vec<ChartSwitch>,
    /// Changes between the linear and product branches of the octonionic formula.
    pub branch_switches: usize,
    pub blew_up: bool,
}

impl ProjectedTrajectory {
    pub fn max_gap(&self) -> f64 {
        self.switches.iter().map(|s| s.gap).fold(0.0, f64::max)
    }
}

fn split(alg: Algebra, y: &[f64]) -> (Element<f64>, Element<f64>) {
    let n = alg.dim();
    (
        Element::new(alg, y[..n].to_vec()).expect("state length"),
        Element::new(alg, y[n..].to_vec()).expect("state length"),
    )
}

/// Integrates the lift with RK4, projecting every state and switching charts
/// once the representative leaves the ball of radius [`SWITCH_THRESHOLD`].
/// The lift state is renormalised after each step, which leaves its
/// projection unchanged.
pub fn lift_integrate_and_project(
    spec: &LiftSpec<f64>,
    s0: (&Element<f64>, &Element<f64>),
    win: Integration,
) -> Result<ProjectedTrajectory> {
    let alg = spec.algebra;
    let (o1, o2) = s0;
    check_pair(o1, o2)?;
    lift_rhs(spec, &win.t0, o1, o2)?;
    let grid = ode::time_grid(win.t0, win.t1, win.step)?;
    let f = |t: f64, y: &[f64]| -> Vec<f64> {
        let (a, b) = split(alg, y);
        let (d1, d2, _) = lift_rhs(spec, &t, &a, &b).expect("validated lift");
        let mut out = d1.into_coeffs();
        out.extend(d2.into_coeffs());
        out
    };

    let mut y: Vec<f64> = o1.coeffs().iter().chain(o2.coeffs()).copied().collect();
    let mut point = project(o1, o2)?;
    let mut out = ProjectedTrajectory {
        algebra: alg,
        times: vec![grid[0]],
        points: vec![point.clone()],
        switches: Vec::new(),
        branch_switches: 0,
        blew_up: false,
    };
    let mut branch = lift_rhs(spec, &grid[0], o1, o2)?.2;
    for (k, w) in grid.windows(2).enumerate() {
        let next = ode::rk4_step(&f, w[0], &y, w[1] - w[0]);
        let scale = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !scale.is_finite() || scale == 0.0 {
            out.blew_up = true;
            break;
        }
        y = next.iter().map(|x| x / scale).collect();
        let (a, b) = split(alg, &y);
        let Ok(mut p) = project_to(&a, &b, point.chart) else {
            out.blew_up = true;
            break;
        };
        if p.rep.norm() > SWITCH_THRESHOLD {
            let old = p.rep.clone();
            p = project_to(&a, &b, point.chart.other())?;
            let gap = (p.rep.clone() - old.inv()?).norm();
            out.switches.push(ChartSwitch { index: k + 1, t: w[1], to: p.chart, gap });
        }
        if !p.rep.is_finite() || !within(p.rep.coeffs(), win.bound) {
            out.blew_up = true;
            break;
        }
        let b_now = lift_rhs(spec, &w[1], &a, &b)?.2;
        if b_now != branch {
            out.branch_switches += 1;
            branch = b_now;
        }
        point = p;
        out.times.push(w[1]);
        out.points.push(point.clone());
    }
    Ok(out)
}

/// Projected lift versus direct integration of the Riccati equation.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftComparison {
    pub projected: ProjectedTrajectory,
    pub direct: riccati::Trajectory,
    /// Sup-norm distance of the chart-`D2` coordinates over the common grid.
    pub max_deviation: f64,
    pub max_gap: f64,
}

impl LiftComparison {
    pub fn to_json(&self) -> Value {
        json!({
            "max_deviation": self.max_deviation,
            "chart_switches": self.projected.switches.len(),
            "max_switch_gap": self.max_gap,
            "branch_switches": self.projected.branch_switches,
            "projected_blew_up": self.projected.blew_up,
            "direct_blew_up": self.direct.blew_up,
            "points": self.projected.times.len(),
        })
    }
}

/// Lifts `spec` with initial value `(q0, 1)` and compares both routes.
pub fn compare_with_direct(spec: &RiccatiSpec<f64>, q0: &Element<f64>, win: Integration) -> Result<LiftComparison> {
    compare_lift(&riccati_to_lift(spec)?, spec, q0, win)
}

/// As [`compare_with_direct`], but for an explicitly built lift, e.g. one with
/// the general octonionic formula enabled.
pub fn compare_lift(
    lift: &LiftSpec<f64>,
    spec: &RiccatiSpec<f64>,
    q0: &Element<f64>,
    win: Integration,
) -> Result<LiftComparison> {
    let one = Element::one(spec.algebra);
    let projected = lift_integrate_and_project(lift, (q0, &one), win)?;
    let direct = riccati::integrate(spec, q0, win)?;
    let mut max_deviation = 0.0f64;
    for (p, d) in projected.points.iter().zip(&direct.states) {
        let dev = match p.affine() {
            Some(q) => (q - d.clone()).norm(),
            None => f64::INFINITY,
        };
        max_deviation = max_deviation.max(dev);
    }
    let max_gap = projected.max_gap();
    Ok(LiftComparison { projected, direct, max_deviation, max_gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn e(alg: Algebra, i: usize) -> Element<Rational> {
        Element::basis(alg, i)
    }

    #[test]
    fn projection_charts() {
        let h = Algebra::H;
        let a = Element::new(h, vec![rat(1, 2), rat(0, 1), rat(1, 3), rat(0, 1)]).unwrap();
        let p = project(&a, &e(h, 0)).unwrap();
        assert_eq!(p.chart, Chart::D2);
        assert_eq!(p.rep, a);
        let q = project(&e(h, 0), &Element::zero(h)).unwrap();
        assert_eq!(q.chart, Chart::D1);
        assert!(q.rep.is_zero());
        assert_eq!(q.affine(), None);
        assert!(project(&Element::<Rational>::zero(h), &Element::zero(h)).is_err());
    }

    #[test]
    fn octonion_projection() {
        let o = Algebra::O;
        let p = project(&e(o, 1), &e(o, 2)).unwrap();
        assert_eq!(p.rep, &e(o, 1) * &(-e(o, 2)));
        assert_eq!(p.switch().unwrap().switch().unwrap(), p);
    }

    #[test]
    fn constant_drive() {
        let h = Algebra::H;
        let z = || CoeffFn::<Rational>::zero(4);
        let spec = LiftSpec::new(h, z(), CoeffFn::Const(e(h, 0).into_coeffs()), z(), z()).unwrap();
        let (d1, d2, branch) = lift_rhs(&spec, &rat(0, 1), &Element::zero(h), &e(h, 0)).unwrap();
        assert_eq!(d1, e(h, 0));
        assert!(d2.is_zero());
        assert_eq!(branch, Branch::Linear);
    }

    #[test]
    fn octonion_restriction() {
        let o = Algebra::O;
        let c = |x: Element<Rational>| CoeffFn::Const(x.into_coeffs());
        let z = Element::zero(o);
        let imag = RiccatiSpec::constant(z.clone(), e(o, 3), z.clone(), z.clone()).unwrap();
        assert!(matches!(riccati_to_lift(&imag), Err(Error::Unsupported(_))));
        let real = RiccatiSpec::constant(e(o, 5), Element::real(o, rat(2, 1)), Element::real(o, rat(-1, 3)), e(o, 6)).unwrap();
        let lift = riccati_to_lift(&real).unwrap();
        assert!(lift.is_linear());
        assert_eq!(lift.projected_riccati(), real);

        // general mode must be requested explicitly
        let general = LiftSpec::new(o, c(e(o, 3)), c(z.clone()), c(z.clone()), c(e(o, 4))).unwrap();
        let (x, y) = (e(o, 1) + e(o, 0), e(o, 2));
        assert!(lift_rhs(&general, &rat(0, 1), &x, &y).is_err());
        let (_, _, branch) = lift_rhs(&general.clone().with_general(true), &rat(0, 1), &x, &y).unwrap();
        assert_eq!(branch, Branch::Product);
        let (_, _, branch) = lift_rhs(&general.with_general(true), &rat(0, 1), &Element::zero(o), &y).unwrap();
        assert_eq!(branch, Branch::Linear);
    }

    #[test]
    fn branch_formula_reduces_for_real_diagonal() {
        // with real a11, a22 the product branch equals the linear system exactly
        let o = Algebra::O;
        let c = |x: Element<Rational>| CoeffFn::Const(x.into_coeffs());
        let a11 = Element::real(o, rat(3, 2));
        let a22 = Element::real(o, rat(-2, 5));
        let z = Element::zero(o);
        let spec = LiftSpec::new(o, c(a11.clone()), c(z.clone()), c(z.clone()), c(a22.clone())).unwrap();
        let o1 = Element::new(o, (0..8).map(|i| rat(i + 1, 3)).collect()).unwrap();
        let o2 = Element::new(o, (0..8).map(|i| rat(2 - i, 7)).collect()).unwrap();
        let w = &o1 * &o2.inv().unwrap();
        assert_eq!(&(&a11 * &w) * &o2, &a11 * &o1);
        let inner = &o1.inv().unwrap() * &(&w * &a22);
        assert_eq!(&(&o2 * &inner) * &o2, &a22 * &o2);
        let (d1, d2, _) = lift_rhs(&spec.with_general(true), &rat(0, 1), &o1, &o2).unwrap();
        assert_eq!(d1, &a11 * &o1);
        assert_eq!(d2, -(&a22 * &o2));
    }

    #[test]
    fn lift_json_round_trip() {
        let v = serde_json::json!({
            "algebra": "C",
            "a12": {"type": "const", "params": {"value": [1, 0]}},
        });
        let spec = LiftSpec::<f64>::from_json(&v).unwrap();
        assert_eq!(LiftSpec::<f64>::from_json(&spec.to_json()).unwrap(), spec);
        assert!(LiftSpec::<f64>::from_json(&serde_json::json!({"algebra": "C", "a33": 1})).is_err());
    }
}
