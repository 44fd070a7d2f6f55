#![allow(dead_code)]

use nda_riccati::riccati::{CoeffFn, RiccatiSpec};
use nda_riccati::{Algebra, Rational, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=5))
}

pub fn vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(rng)).collect()
}

/// Exactly evaluable coefficient: a constant plus a quadratic in t.
pub fn coeff(rng: &mut ChaCha8Rng, n: usize) -> CoeffFn<Rational> {
    CoeffFn::Sum(vec![
        CoeffFn::Const(vector(rng, n)),
        CoeffFn::Poly(vec![vector(rng, n), vector(rng, n), vector(rng, n)]),
    ])
}

pub fn random_spec(rng: &mut ChaCha8Rng, alg: Algebra) -> RiccatiSpec<Rational> {
    let n = alg.dim();
    RiccatiSpec::new(alg, coeff(rng, n), coeff(rng, n), coeff(rng, n), coeff(rng, n)).unwrap()
}

/// Generic float spec with bounded smooth coefficients of size about `scale`.
pub fn smooth_spec(rng: &mut ChaCha8Rng, alg: Algebra, scale: f64, real_diagonal: bool) -> RiccatiSpec<f64> {
    let n = alg.dim();
    let mut v = |real: bool| -> Vec<f64> {
        (0..n).map(|i| if real && i > 0 { 0.0 } else { scale * rng.random_range(-1.0..1.0) }).collect()
    };
    let mut f = |real: bool| CoeffFn::Sum(vec![
        CoeffFn::Const(v(real)),
        CoeffFn::Sin { value: v(real), omega: 3.0, phase: 0.4 },
    ]);
    let (bm, bl, br, bp) = (f(false), f(real_diagonal), f(real_diagonal), f(false));
    RiccatiSpec::new(alg, bm, bl, br, bp).unwrap()
}
