//! Python bindings. Reports come back as plain dicts and lists.

use nda_riccati::algebra::laws::check_composition_laws;
use nda_riccati::hamiltonian::obstruction_witness;
use nda_riccati::lift::{compare_lift, riccati_to_lift, LiftSpec};
use nda_riccati::riccati::{self, Integration, RiccatiSpec};
use nda_riccati::scalar::{format_rational, parse_rational};
use nda_riccati::schrodinger::{self, SchrodingerSpec};
use nda_riccati::vfield::{closure as run_closure, ClosureOptions, GeneratorSet};
use nda_riccati::{Algebra, Element, Rational};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::{json, Value};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn algebra(tag: &str) -> PyResult<Algebra> {
    tag.parse().map_err(err)
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any().unbind(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any().unbind(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for x in items {
                list.append(to_py(py, x)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

/// Accepts a JSON string or anything `json.dumps` understands.
fn json_arg(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let text: String = match obj.extract::<String>() {
        Ok(s) => s,
        Err(_) => obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?,
    };
    serde_json::from_str(&text).map_err(err)
}

fn spec_arg(obj: &Bound<'_, PyAny>) -> PyResult<RiccatiSpec<f64>> {
    RiccatiSpec::from_json(&json_arg(obj)?).map_err(err)
}

fn state(alg: Algebra, x0: Option<Vec<f64>>) -> PyResult<Element<f64>> {
    match x0 {
        Some(v) => Element::new(alg, v).map_err(err),
        None => Ok(Element::zero(alg)),
    }
}

fn window(t0: f64, t1: f64, step: f64) -> Integration {
    Integration { t0, t1, step, ..Integration::default() }
}

/// Element of R, C, H or O with float coefficients.
#[pyclass(name = "Element", module = "nda_riccati", skip_from_py_object)]
struct PyElement {
    inner: Element<f64>,
}

impl PyElement {
    fn wrap(r: nda_riccati::Result<Element<f64>>) -> PyResult<Self> {
        r.map(|inner| PyElement { inner }).map_err(err)
    }
}

#[pymethods]
impl PyElement {
    #[new]
    fn new(algebra_tag: &str, coeffs: Vec<f64>) -> PyResult<Self> {
        Self::wrap(Element::new(algebra(algebra_tag)?, coeffs))
    }

    #[staticmethod]
    fn basis(algebra_tag: &str, i: usize) -> PyResult<Self> {
        let alg = algebra(algebra_tag)?;
        if i >= alg.dim() {
            return Err(err(format!("basis index {i} out of range for {alg}")));
        }
        Ok(PyElement { inner: Element::basis(alg, i) })
    }

    #[staticmethod]
    fn one(algebra_tag: &str) -> PyResult<Self> {
        Ok(PyElement { inner: Element::one(algebra(algebra_tag)?) })
    }

    #[getter]
    fn algebra(&self) -> String {
        self.inner.algebra().to_string()
    }

    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.inner.coeffs().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.dim()
    }

    fn __mul__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        Self::wrap(self.inner.checked_mul(&other.inner))
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        Self::wrap(self.inner.checked_add(&other.inner))
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        Self::wrap(self.inner.checked_sub(&other.inner))
    }

    fn __neg__(&self) -> Self {
        PyElement { inner: -self.inner.clone() }
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Element({:?}, {:?})", self.algebra(), self.inner.coeffs())
    }

    fn conj(&self) -> Self {
        PyElement { inner: self.inner.conj() }
    }

    fn inv(&self) -> PyResult<Self> {
        Self::wrap(self.inner.inv())
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn inner_product(&self, other: PyRef<'_, Self>) -> PyResult<f64> {
        if self.inner.algebra() != other.inner.algebra() {
            return Err(err("algebra mismatch"));
        }
        Ok(self.inner.inner(&other.inner))
    }
}

/// Exact product of two elements given as `"p/q"` strings.
#[pyfunction]
fn exact_mul(algebra_tag: &str, a: Vec<String>, b: Vec<String>) -> PyResult<Vec<String>> {
    let alg = algebra(algebra_tag)?;
    let parse = |v: Vec<String>| -> PyResult<Element<Rational>> {
        let cs = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        Element::new(alg, cs).map_err(err)
    };
    let p = parse(a)?.checked_mul(&parse(b)?).map_err(err)?;
    Ok(p.coeffs().iter().map(format_rational).collect())
}

#[pyfunction]
#[pyo3(signature = (algebra, samples = 1000, seed = 0, exact = true))]
fn check_laws(py: Python<'_>, algebra: &str, samples: usize, seed: u64, exact: bool) -> PyResult<Py<PyAny>> {
    let alg = self::algebra(algebra)?;
    let r = py.detach(|| check_composition_laws(alg, samples, seed, exact));
    to_py(py, &serde_json::to_value(&r).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (algebra, generators = "riccati", degree_cap = 5, round_cap = 12))]
fn closure(py: Python<'_>, algebra: &str, generators: &str, degree_cap: usize, round_cap: usize) -> PyResult<Py<PyAny>> {
    let alg = self::algebra(algebra)?;
    let set: GeneratorSet = generators.parse().map_err(err)?;
    let gens = set.build(alg).map_err(err)?;
    let r = py.detach(|| run_closure(&gens, ClosureOptions { degree_cap, round_cap }));
    to_py(py, &r.to_json())
}

#[pyfunction]
#[pyo3(signature = (spec, x0 = None, t0 = 0.0, t1 = 1.0, step = 1e-3))]
fn integrate(py: Python<'_>, spec: &Bound<'_, PyAny>, x0: Option<Vec<f64>>, t0: f64, t1: f64, step: f64) -> PyResult<Py<PyAny>> {
    let spec = spec_arg(spec)?;
    let a0 = state(spec.algebra, x0)?;
    let traj = riccati::integrate(&spec, &a0, window(t0, t1, step)).map_err(err)?;
    let states: Vec<&[f64]> = traj.states.iter().map(Element::coeffs).collect();
    to_py(py, &json!({"times": traj.times, "states": states, "blew_up": traj.blew_up}))
}

#[pyfunction]
#[pyo3(signature = (spec, x0 = (-0.5, 0.0, 0.3), k = 0.7, t0 = 0.0, t1 = 1.0, step = 1e-3))]
fn superposition(
    py: Python<'_>,
    spec: &Bound<'_, PyAny>,
    x0: (f64, f64, f64),
    k: f64,
    t0: f64,
    t1: f64,
    step: f64,
) -> PyResult<Py<PyAny>> {
    let spec = spec_arg(spec)?;
    let c = riccati::superposition_check(&spec, [x0.0, x0.1, x0.2], k, window(t0, t1, step)).map_err(err)?;
    to_py(py, &c.to_json())
}

#[pyfunction]
#[pyo3(signature = (spec, samples = 1000, seed = 0, exact = false))]
fn conformal_check(py: Python<'_>, spec: &Bound<'_, PyAny>, samples: usize, seed: u64, exact: bool) -> PyResult<Py<PyAny>> {
    let v = json_arg(spec)?;
    let c = if exact {
        riccati::conformal_check(&RiccatiSpec::<Rational>::from_json(&v).map_err(err)?, samples, seed)
    } else {
        riccati::conformal_check(&RiccatiSpec::<f64>::from_json(&v).map_err(err)?, samples, seed)
    }
    .map_err(err)?;
    to_py(py, &c.to_json())
}

/// Projected lift against direct integration.
#[pyfunction]
#[pyo3(signature = (spec, x0 = None, general = false, t0 = 0.0, t1 = 1.0, step = 1e-3))]
fn lift(
    py: Python<'_>,
    spec: &Bound<'_, PyAny>,
    x0: Option<Vec<f64>>,
    general: bool,
    t0: f64,
    t1: f64,
    step: f64,
) -> PyResult<Py<PyAny>> {
    let spec = spec_arg(spec)?;
    let q0 = state(spec.algebra, x0)?;
    let l = if general {
        LiftSpec::new(spec.algebra, spec.b_0l.clone(), spec.b_minus.clone(), spec.b_plus.clone(), spec.b_0r.clone())
            .map_err(err)?
            .with_general(true)
    } else {
        riccati_to_lift(&spec).map_err(err)?
    };
    let c = compare_lift(&l, &spec, &q0, window(t0, t1, step)).map_err(err)?;
    let mut v = c.to_json();
    v["charts"] = json!(c.projected.points.iter().map(|p| p.chart.label()).collect::<Vec<_>>());
    v["times"] = json!(c.projected.times);
    to_py(py, &v)
}

#[pyfunction]
#[pyo3(signature = (potentials, u0 = None, psi0 = None, x0 = 0.0, x1 = 1.0, step = 1e-3))]
fn schrodinger_solve(
    py: Python<'_>,
    potentials: &Bound<'_, PyAny>,
    u0: Option<Vec<f64>>,
    psi0: Option<Vec<f64>>,
    x0: f64,
    x1: f64,
    step: f64,
) -> PyResult<Py<PyAny>> {
    let spec = SchrodingerSpec::<f64>::from_json(&json_arg(potentials)?).map_err(err)?;
    let u = state(Algebra::H, u0)?;
    let psi = match psi0 {
        Some(v) => Element::new(Algebra::H, v).map_err(err)?,
        None => Element::one(Algebra::H),
    };
    let sol = schrodinger::solve_and_reconstruct(&spec, &u, &psi, window(x0, x1, step)).map_err(err)?;
    let psi: Vec<&[f64]> = sol.psi.iter().map(Element::coeffs).collect();
    to_py(
        py,
        &json!({
            "xs": sol.xs,
            "psi": psi,
            "max_residual": sol.max_residual(),
            "log_derivative_error": sol.log_derivative_error(),
            "blew_up": sol.blew_up,
        }),
    )
}

#[pyfunction]
fn minimal_algebra_dimension(py: Python<'_>) -> usize {
    py.detach(schrodinger::minimal_algebra_dimension)
}

#[pyfunction]
fn invariant_form_witness(py: Python<'_>, algebra: &str) -> PyResult<Py<PyAny>> {
    let w = obstruction_witness(self::algebra(algebra)?).map_err(err)?;
    to_py(py, &w.to_json())
}

#[pymodule]
#[pyo3(name = "nda_riccati")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(exact_mul, m)?)?;
    m.add_function(wrap_pyfunction!(check_laws, m)?)?;
    m.add_function(wrap_pyfunction!(closure, m)?)?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(superposition, m)?)?;
    m.add_function(wrap_pyfunction!(conformal_check, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(schrodinger_solve, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_algebra_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_form_witness, m)?)?;
    Ok(())
}
