//! Closed-form, serialisable time-dependent coefficients.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::scalar::{convert, Scalar};

/// A vector-valued function of `t` from a closed family of expressions.
///
/// Every node is linear in its `value` vectors, which makes
/// [`map_values`](CoeffFn::map_values) well defined for linear maps.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffFn<S> {
    Const(Vec<S>),
    /// `Σ_k coeffs[k] t^k`.
    Poly(Vec<Vec<S>>),
    /// `value · sin(omega t + phase)`.
    Sin { value: Vec<S>, omega: S, phase: S },
    /// `value · exp(rate t)`.
    Exp { value: Vec<S>, rate: S },
    Sum(Vec<CoeffFn<S>>),
}

impl<S: Scalar> CoeffFn<S> {
    pub fn zero(n: usize) -> Self {
        CoeffFn::Const(vec![S::zero(); n])
    }

    pub fn constant(value: Vec<S>) -> Self {
        CoeffFn::Const(value)
    }

    /// Output length, or an error when nodes disagree.
    pub fn len(&self) -> Result<usize> {
        match self {
            CoeffFn::Const(v) | CoeffFn::Sin { value: v, .. } | CoeffFn::Exp { value: v, .. } => Ok(v.len()),
            CoeffFn::Poly(cs) => same_len(cs.iter().map(|c| Ok(c.len()))),
            CoeffFn::Sum(ts) => same_len(ts.iter().map(CoeffFn::len)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len().map(|n| n == 0).unwrap_or(true)
    }

    pub fn eval(&self, t: &S) -> Result<Vec<S>> {
        match self {
            CoeffFn::Const(v) => Ok(v.clone()),
            CoeffFn::Poly(cs) => {
                let n = self.len()?;
                // Horner from the top coefficient down
                let mut acc = vec![S::zero(); n];
                for c in cs.iter().rev() {
                    for (a, ci) in acc.iter_mut().zip(c) {
                        *a = a.clone() * t.clone() + ci.clone();
                    }
                }
                Ok(acc)
            }
            CoeffFn::Sin { value, omega, phase } => {
                let s = (omega.clone() * t.clone() + phase.clone()).sin().ok_or(Error::NotExact("sin"))?;
                Ok(scaled(value, &s))
            }
            CoeffFn::Exp { value, rate } => {
                let s = (rate.clone() * t.clone()).exp().ok_or(Error::NotExact("exp"))?;
                Ok(scaled(value, &s))
            }
            CoeffFn::Sum(ts) => {
                let n = self.len()?;
                let mut acc = vec![S::zero(); n];
                for term in ts {
                    for (a, v) in acc.iter_mut().zip(term.eval(t)?) {
                        *a = a.clone() + v;
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Applies a linear map to every value vector.
    pub fn map_values(&self, f: &dyn Fn(&[S]) -> Vec<S>) -> CoeffFn<S> {
        match self {
            CoeffFn::Const(v) => CoeffFn::Const(f(v)),
            CoeffFn::Poly(cs) => CoeffFn::Poly(cs.iter().map(|c| f(c)).collect()),
            CoeffFn::Sin { value, omega, phase } => {
                CoeffFn::Sin { value: f(value), omega: omega.clone(), phase: phase.clone() }
            }
            CoeffFn::Exp { value, rate } => CoeffFn::Exp { value: f(value), rate: rate.clone() },
            CoeffFn::Sum(ts) => CoeffFn::Sum(ts.iter().map(|t| t.map_values(f)).collect()),
        }
    }

    /// Carrier change, e.g. exact specs to `f64` for integration.
    pub fn convert<T: Scalar>(&self) -> CoeffFn<T> {
        let cv = |v: &[S]| -> Vec<T> { v.iter().map(|x| convert(x)).collect() };
        let cs = |x: &S| convert(x);
        match self {
            CoeffFn::Const(v) => CoeffFn::Const(cv(v)),
            CoeffFn::Poly(c) => CoeffFn::Poly(c.iter().map(|v| cv(v)).collect()),
            CoeffFn::Sin { value, omega, phase } => {
                CoeffFn::Sin { value: cv(value), omega: cs(omega), phase: cs(phase) }
            }
            CoeffFn::Exp { value, rate } => CoeffFn::Exp { value: cv(value), rate: cs(rate) },
            CoeffFn::Sum(ts) => CoeffFn::Sum(ts.iter().map(CoeffFn::convert).collect()),
        }
    }

    /// `true` when every node is constant in `t` or a polynomial.
    pub fn is_polynomial(&self) -> bool {
        match self {
            CoeffFn::Const(_) | CoeffFn::Poly(_) => true,
            CoeffFn::Sin { .. } | CoeffFn::Exp { .. } => false,
            CoeffFn::Sum(ts) => ts.iter().all(CoeffFn::is_polynomial),
        }
    }

    /// Whether component `k` is identically zero in every node.
    pub fn component_vanishes(&self, k: usize) -> bool {
        match self {
            CoeffFn::Const(v) | CoeffFn::Sin { value: v, .. } | CoeffFn::Exp { value: v, .. } => {
                v.get(k).is_none_or(|x| x.is_zero())
            }
            CoeffFn::Poly(cs) => cs.iter().all(|c| c.get(k).is_none_or(|x| x.is_zero())),
            CoeffFn::Sum(ts) => ts.iter().all(|t| t.component_vanishes(k)),
        }
    }

    pub fn to_json(&self) -> Value {
        let vec = |v: &[S]| Value::Array(v.iter().map(Scalar::to_json).collect());
        match self {
            CoeffFn::Const(v) => json!({ "type": "const", "params": { "value": vec(v) } }),
            CoeffFn::Poly(cs) => {
                let cs: Vec<Value> = cs.iter().map(|c| vec(c)).collect();
                json!({ "type": "poly", "params": { "coeffs": cs } })
            }
            CoeffFn::Sin { value, omega, phase } => json!({
                "type": "sin",
                "params": { "value": vec(value), "omega": omega.to_json(), "phase": phase.to_json() }
            }),
            CoeffFn::Exp { value, rate } => {
                json!({ "type": "exp", "params": { "value": vec(value), "rate": rate.to_json() } })
            }
            CoeffFn::Sum(ts) => {
                let ts: Vec<Value> = ts.iter().map(CoeffFn::to_json).collect();
                json!({ "type": "sum", "params": { "terms": ts } })
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = object(v, "expression node")?;
        reject_unknown(obj, &["type", "params"], "expression node")?;
        let ty = obj
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Invalid("expression node needs a string `type`".into()))?;
        let params = object(obj.get("params").unwrap_or(&Value::Null), "params")?;
        let field = |name: &str| {
            params.get(name).ok_or_else(|| Error::Invalid(format!("`{ty}` node needs `{name}`")))
        };
        let node = match ty {
            "const" => {
                reject_unknown(params, &["value"], ty)?;
                CoeffFn::Const(vector(field("value")?)?)
            }
            "poly" => {
                reject_unknown(params, &["coeffs"], ty)?;
                let cs = field("coeffs")?
                    .as_array()
                    .ok_or_else(|| Error::Invalid("`coeffs` must be an array of vectors".into()))?;
                if cs.is_empty() {
                    return Err(Error::Invalid("`coeffs` must not be empty".into()));
                }
                CoeffFn::Poly(cs.iter().map(vector).collect::<Result<_>>()?)
            }
            "sin" => {
                reject_unknown(params, &["value", "omega", "phase"], ty)?;
                let phase = match params.get("phase") {
                    Some(p) => S::from_json(p)?,
                    None => S::zero(),
                };
                CoeffFn::Sin { value: vector(field("value")?)?, omega: S::from_json(field("omega")?)?, phase }
            }
            "exp" => {
                reject_unknown(params, &["value", "rate"], ty)?;
                CoeffFn::Exp { value: vector(field("value")?)?, rate: S::from_json(field("rate")?)? }
            }
            "sum" => {
                reject_unknown(params, &["terms"], ty)?;
                let ts = field("terms")?
                    .as_array()
                    .ok_or_else(|| Error::Invalid("`terms` must be an array".into()))?;
                CoeffFn::Sum(ts.iter().map(CoeffFn::from_json).collect::<Result<_>>()?)
            }
            other => return Err(Error::Invalid(format!("unknown expression type {other:?}"))),
        };
        node.len()?;
        Ok(node)
    }
}

fn scaled<S: Scalar>(v: &[S], s: &S) -> Vec<S> {
    v.iter().map(|x| x.clone() * s.clone()).collect()
}

fn same_len(mut it: impl Iterator<Item = Result<usize>>) -> Result<usize> {
    let first = it.next().ok_or_else(|| Error::Invalid("empty expression".into()))??;
    for n in it {
        let n = n?;
        if n != first {
            return Err(Error::DimensionMismatch { expected: first, found: n });
        }
    }
    Ok(first)
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::Invalid(format!("{what} must be a JSON object")))
}

pub(crate) fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::Invalid(format!("unknown key {k:?} in {what}"))),
        None => Ok(()),
    }
}

pub(crate) fn vector<S: Scalar>(v: &Value) -> Result<Vec<S>> {
    v.as_array()
        .ok_or_else(|| Error::Invalid(format!("expected an array of numbers, got {v}")))?
        .iter()
        .map(S::from_json)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn polynomial_and_sum_evaluate_exactly() {
        // (1 + 2t + 3t^2, −t) + (1/2, 1/2)
        let p = CoeffFn::Poly(vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(2, 1), rat(-1, 1)],
            vec![rat(3, 1), rat(0, 1)],
        ]);
        let f = CoeffFn::Sum(vec![p, CoeffFn::Const(vec![rat(1, 2), rat(1, 2)])]);
        assert_eq!(f.eval(&rat(2, 1)).unwrap(), vec![rat(35, 2), rat(-3, 2)]);
    }

    #[test]
    fn transcendental_nodes_refuse_exact_evaluation() {
        let f: CoeffFn<Rational> = CoeffFn::Sin { value: vec![rat(1, 1)], omega: rat(1, 1), phase: rat(0, 1) };
        assert_eq!(f.eval(&rat(1, 2)), Err(Error::NotExact("sin")));
        assert_eq!(f.eval(&rat(0, 1)).unwrap(), vec![rat(0, 1)]);
        let g = CoeffFn::Exp { value: vec![2.0], rate: -1.0 };
        assert!((g.eval(&1.0).unwrap()[0] - 2.0 * (-1f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let f: CoeffFn<Rational> = CoeffFn::Sum(vec![
            CoeffFn::Poly(vec![vec![rat(1, 3)], vec![rat(-2, 1)]]),
            CoeffFn::Sin { value: vec![rat(1, 1)], omega: rat(2, 1), phase: rat(1, 2) },
            CoeffFn::Exp { value: vec![rat(5, 1)], rate: rat(-1, 4) },
        ]);
        let v = f.to_json();
        assert_eq!(CoeffFn::<Rational>::from_json(&v).unwrap(), f);
        let g = CoeffFn::<f64>::from_json(&v).unwrap();
        assert!((g.eval(&0.0).unwrap()[0] - (1.0 / 3.0 + 0.5f64.sin() + 5.0)).abs() < 1e-15);
    }

    #[test]
    fn json_rejects_malformed_nodes() {
        let bad = [
            serde_json::json!({"type": "const", "params": {"value": [1], "extra": 2}}),
            serde_json::json!({"type": "cosh", "params": {}}),
            serde_json::json!({"type": "sum", "params": {"terms": [
                {"type": "const", "params": {"value": [1]}},
                {"type": "const", "params": {"value": [1, 2]}}
            ]}}),
            serde_json::json!({"type": "const", "params": {"value": ["1/0"]}}),
            serde_json::json!({"type": "const", "params": {"value": [1]}, "note": "x"}),
        ];
        for b in bad {
            assert!(CoeffFn::<f64>::from_json(&b).is_err(), "{b}");
        }
    }

    #[test]
    fn map_values_is_nodewise() {
        let f = CoeffFn::Sin { value: vec![1.0, 2.0], omega: 3.0, phase: 0.0 };
        let g = f.map_values(&|v| vec![v[1], -v[0]]);
        let t = 0.3;
        let (a, b) = (f.eval(&t).unwrap(), g.eval(&t).unwrap());
        assert_eq!(b, vec![a[1], -a[0]]);
    }
}
