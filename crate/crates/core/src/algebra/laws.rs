//! Composition-law residuals on random samples.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Algebra, Element};
use crate::scalar::{Rational, Scalar};

/// Maximum absolute residual per identity family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub algebra: Algebra,
    pub samples: usize,
    pub seed: u64,
    pub exact: bool,
    pub residuals: BTreeMap<String, f64>,
    /// `max |(ab)c − a(bc)|`; informational, nonzero for 𝕆.
    pub associator: f64,
}

impl LawReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    pub fn within(&self, tol: f64) -> bool {
        self.residuals.values().all(|r| *r <= tol)
    }
}

/// Evaluates every composition law on `samples` random tuples.
///
/// With `exact`, coefficients are small random rationals and every
/// residual is computed without rounding; otherwise coefficients are
/// uniform in `[-1, 1]`.
pub fn check_composition_laws(algebra: Algebra, samples: usize, seed: u64, exact: bool) -> LawReport {
    let samples = samples.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (residuals, associator) = if exact {
        let tuples: Vec<_> = (0..samples).map(|_| draw(&mut rng, algebra, rational_coeff)).collect();
        evaluate::<Rational>(&tuples)
    } else {
        let tuples: Vec<_> = (0..samples).map(|_| draw(&mut rng, algebra, float_coeff)).collect();
        evaluate::<f64>(&tuples)
    };
    LawReport { algebra, samples, seed, exact, residuals, associator }
}

fn rational_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let p: i64 = rng.random_range(-9..=9);
    let q: i64 = rng.random_range(1..=6);
    Rational::from_ratio(p, q)
}

fn float_coeff(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-1.0..=1.0)
}

struct Tuple<S> {
    a: Element<S>,
    b: Element<S>,
    c: Element<S>,
    d: Element<S>,
    // distinct imaginary units for the anticommutation law
    units: Option<(usize, usize)>,
}

fn draw<S: Scalar>(
    rng: &mut ChaCha8Rng,
    algebra: Algebra,
    coeff: fn(&mut ChaCha8Rng) -> S,
) -> Tuple<S> {
    let mut elem = |nonzero: bool| loop {
        let e = Element::new(algebra, (0..algebra.dim()).map(|_| coeff(rng)).collect()).unwrap();
        if !nonzero || !e.is_zero() {
            break e;
        }
    };
    let a = elem(true);
    let (b, c, d) = (elem(false), elem(false), elem(false));
    let units = (algebra.dim() > 2).then(|| {
        let i = rng.random_range(1..algebra.dim());
        let mut j = rng.random_range(1..algebra.dim() - 1);
        if j >= i {
            j += 1;
        }
        (i, j)
    });
    Tuple { a, b, c, d, units }
}

fn evaluate<S: Scalar>(tuples: &[Tuple<S>]) -> (BTreeMap<String, f64>, f64) {
    let per_sample: Vec<Vec<(&'static str, f64)>> = tuples.par_iter().map(residuals).collect();
    let mut out = BTreeMap::new();
    let mut assoc = 0.0f64;
    for row in per_sample {
        for (name, r) in row {
            if name == "associator" {
                assoc = assoc.max(r);
            } else {
                let slot = out.entry(name.to_string()).or_insert(0.0f64);
                *slot = slot.max(r);
            }
        }
    }
    (out, assoc)
}

fn s_res<S: Scalar>(x: S, y: S) -> f64 {
    (x - y).abs().to_f64()
}

fn e_res<S: Scalar>(x: Element<S>, y: Element<S>) -> f64 {
    (x - y).max_abs()
}

fn residuals<S: Scalar>(t: &Tuple<S>) -> Vec<(&'static str, f64)> {
    let (a, b, c, d) = (&t.a, &t.b, &t.c, &t.d);
    let g = |x: &Element<S>, y: &Element<S>| x.inner(y);
    let n2 = |x: &Element<S>| x.norm_sq();
    let ab = a * b;
    let ba = b * a;
    let ac = a * c;
    let ca = c * a;
    let bc = b * c;
    let a_inv = a.inv().expect("sampled nonzero");
    let mut out = vec![
        ("norm_multiplicative", s_res(n2(&ab), n2(a) * n2(b))),
        ("scaling_left", s_res(g(&ab, &ac), n2(a) * g(b, c))),
        ("scaling_right", s_res(g(&ac, &(b * c)), g(a, b) * n2(c))),
        (
            "exchange",
            s_res(g(&ab, &(c * d)), S::from_i64(2) * g(a, c) * g(b, d) - g(&(a * d), &(c * b))),
        ),
        ("braid_left", s_res(g(&ab, c), g(b, &(&a.conj() * c)))),
        ("braid_right", s_res(g(&ab, c), g(a, &(c * &b.conj())))),
        ("inverse_conj_left", e_res(&a.conj() * &ab, b.scale(&n2(a)))),
        ("inverse_conj_right", e_res(&ba * &a.conj(), b.scale(&n2(a)))),
        ("inverse_left", e_res(&a_inv * &ab, b.clone())),
        ("inverse_right", e_res(&ba * &a_inv, b.clone())),
        ("alternative_left", e_res(a * &ab, &(a * a) * b)),
        ("alternative_right", e_res(&ba * a, b * &(a * a))),
        ("flexible", e_res(a * &ba, &ab * a)),
        ("moufang_middle", e_res(&ab * &ca, &(a * &bc) * a)),
        ("moufang_left", e_res(a * &(b * &ac), &(&ab * a) * c)),
        ("moufang_right", e_res(&(&ba * c) * a, b * &(a * &ca))),
        ("associator", e_res(&ab * c, a * &bc)),
    ];
    if let Some((i, j)) = t.units {
        let alg = a.algebra();
        let ei = Element::basis(alg, i);
        let ej = Element::basis(alg, j);
        out.push(("anticommute_left", e_res(&ei * &(&ej * a), -(&ej * &(&ei * a)))));
        out.push(("anticommute_right", e_res(&(a * &ei) * &ej, -(&(a * &ej) * &ei))));
    }
    out
}
