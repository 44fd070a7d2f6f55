//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use nda_riccati::algebra::laws::check_composition_laws;
use nda_riccati::hamiltonian::{
    hamiltonian_residual, lie_derivative, obstruction_witness, omega_octonion, omega_quaternion, poisson,
    real_riccati_fields, Laurent2,
};
use nda_riccati::lift::compare_with_direct;
use nda_riccati::poly::Poly;
use nda_riccati::riccati::{conformal_check, superposition_check, CoeffFn, Integration, RiccatiSpec};
use nda_riccati::schrodinger::{minimal_algebra_dimension, solve_and_reconstruct, SchrodingerSpec};
use nda_riccati::vfield::generators::{self as gens, Side};
use nda_riccati::vfield::{closure, is_antisymmetric, ClosureOptions, PolyVectorField};
use nda_riccati::{Algebra, Element, Rational, Scalar};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let took = start.elapsed();
    (ok && took < limit, format!("{detail}; {:.2}s (limit {}s)", took.as_secs_f64(), limit.as_secs()))
}

fn laws() -> Outcome {
    timed(Duration::from_secs(10), || {
        let exact = check_composition_laws(Algebra::O, 10_000, 1, true);
        let float = check_composition_laws(Algebra::O, 10_000, 2, false);
        let ok = exact.max_residual() == 0.0 && float.within(1e-12);
        (ok, format!("exact max {:e}, float max {:e}", exact.max_residual(), float.max_residual()))
    })
}

fn table_dimensions() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut ok = true;
        let mut dims = Vec::new();
        for (alg, want) in [(Algebra::R, 3), (Algebra::C, 6), (Algebra::H, 15), (Algebra::O, 45)] {
            let r = closure(&gens::riccati_generators(alg), ClosureOptions::default());
            ok &= r.closed && r.dimension == want && r.max_degree() <= 2;
            dims.push(format!("{alg}={}", r.dimension));
        }
        (ok, dims.join(" "))
    })
}

fn rotations() -> Outcome {
    timed(Duration::from_secs(30), || {
        let r = closure(&gens::rotation_generators(Algebra::O), ClosureOptions::default());
        let linear = r.basis.iter().all(|f| f.linear_matrix().is_ok_and(|m| is_antisymmetric(&m)));
        (r.closed && r.dimension == 28 && linear, format!("dim {}, all linear antisymmetric: {linear}", r.dimension))
    })
}

fn square_field(i: usize, j: usize) -> PolyVectorField {
    let mut comps = vec![Poly::default(); 8];
    comps[i] = &Poly::var(j) * &Poly::var(j);
    PolyVectorField::new(format!("o{j}^2 d{i}"), comps)
}

fn alt_quadratic() -> Outcome {
    let gens = gens::alt_quadratic_generators(Algebra::O, Side::Left).expect("generator set");
    let r = closure(&gens, ClosureOptions { degree_cap: 4, round_cap: 12 });
    let d3 = r.degree_histogram.get(&3).copied().unwrap_or(0);
    let d4 = r.degree_histogram.get(&4).copied().unwrap_or(0);
    let square = r.spans(&square_field(1, 2));
    (!r.closed && d3 > 0 && d4 > 0 && square, format!("closed={}, degree3={d3}, degree4={d4}, o2^2 d1 in span: {square}", r.closed))
}

fn minus_plus() -> Outcome {
    let full = closure(&gens::riccati_generators(Algebra::O), ClosureOptions::default());
    let mp = closure(&gens::minus_plus_generators(Algebra::O), ClosureOptions::default());
    let same = full.basis.iter().all(|f| mp.spans(f)) && mp.basis.iter().all(|f| full.spans(f));
    (mp.closed && mp.dimension == 45 && same, format!("dim {}, same span: {same}", mp.dimension))
}

fn conformal() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut worst, mut anti, mut runs) = (0.0f64, 0.0f64, 0);
    for alg in [Algebra::R, Algebra::C, Algebra::H, Algebra::O] {
        for s in 0..20 {
            let spec = common::random_spec(&mut rng, alg);
            let c = conformal_check(&spec, 1000, s).expect("conformal check");
            worst = worst.max(c.max_residual);
            anti = anti.max(c.max_antisymmetry);
            runs += 1;
        }
    }
    (worst == 0.0 && anti == 0.0, format!("{runs} exact specs x 1000 samples, max residual {worst}, max antisymmetry {anti}"))
}

fn superposition() -> Outcome {
    let r = |x: f64| Element::real(Algebra::R, x);
    let spec = RiccatiSpec::constant(r(1.0), r(0.0), r(0.0), r(1.0)).expect("spec");
    let win = Integration { t0: 0.0, t1: 1.0, step: 1e-3, ..Integration::default() };
    let c = superposition_check(&spec, [-0.5, 0.0, 0.3], 0.7, win).expect("superposition");
    (!c.blew_up && c.max_error < 1e-6, format!("sup error {:e}", c.max_error))
}

fn lift() -> Outcome {
    let win = Integration::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let q0h = Element::from_f64s(Algebra::H, &[0.2, -0.1, 0.3, 0.1]).expect("q0");
    let q0o = Element::from_f64s(Algebra::O, &[0.2, -0.1, 0.3, 0.1, 0.0, 0.2, -0.2, 0.1]).expect("q0");
    let h = compare_with_direct(&common::smooth_spec(&mut rng, Algebra::H, 0.5, false), &q0h, win).expect("H");
    let o = compare_with_direct(&common::smooth_spec(&mut rng, Algebra::O, 0.5, true), &q0o, win).expect("O");

    // constant drive 2 with a small quadratic term pushes the state through |q| = 1.1
    let z = Element::zero(Algebra::H);
    let mut spec = RiccatiSpec::constant(Element::real(Algebra::H, 2.0), z.clone(), z.clone(), z).expect("spec");
    spec.b_plus = CoeffFn::Const(vec![0.0, 0.0, 0.3, 0.0]);
    let start = Element::from_f64s(Algebra::H, &[0.3, 0.4, 0.0, -0.2]).expect("q0");
    let sw = compare_with_direct(&spec, &start, win).expect("switch run");

    let dev = h.max_deviation.max(o.max_deviation).max(sw.max_deviation);
    let switches = sw.projected.switches.len();
    let ok = dev < 1e-5 && switches > 0 && sw.max_gap < 1e-10;
    (ok, format!("H {:e}, O {:e}, switch run {:e} with {switches} switch(es), gap {:e}", h.max_deviation, o.max_deviation, sw.max_deviation, sw.max_gap))
}

fn hamiltonian() -> Outcome {
    let one = |a, b| Laurent2::term(<Rational as Scalar>::from_i64(-1), a, b);
    let fs = [one(0, -1), one(1, -1), one(2, -1) + one(0, 1)];
    let mut ok = true;
    for omega in [omega_octonion(), omega_quaternion()] {
        for (x, f) in real_riccati_fields().iter().zip(&fs) {
            let (a, b) = hamiltonian_residual(x, f, &omega).expect("residual");
            ok &= a.is_zero() && b.is_zero() && lie_derivative(x, &omega).expect("lie").is_zero();
        }
        let pb = |a: &Laurent2, b: &Laurent2| poisson(a, b, &omega).expect("poisson");
        let two = <Rational as Scalar>::from_i64(-2);
        ok &= pb(&fs[0], &fs[1]) == -fs[0].clone() && pb(&fs[0], &fs[2]) == fs[1].scale(&two) && pb(&fs[1], &fs[2]) == -fs[2].clone();
    }
    let w = obstruction_witness(Algebra::O).expect("witness");
    ok &= w.with_euler == 0;
    (ok, format!("exact Hamiltonians and Poisson relations under both forms; invariant constant forms with Euler: {}", w.with_euler))
}

fn schrodinger() -> Outcome {
    let c = 0.7;
    let spec = SchrodingerSpec::new(1.0, 1.0, CoeffFn::Const(vec![c * c / 2.0]), CoeffFn::zero(2)).expect("spec");
    let psi0 = Element::from_f64s(Algebra::H, &[0.5, -1.0, 0.25, 2.0]).expect("psi0");
    let win = |step| Integration { step, ..Integration::default() };
    let sol = solve_and_reconstruct(&spec, &Element::real(Algebra::H, c), &psi0, win(1e-3)).expect("solve");
    let exact = sol.xs.iter().zip(&sol.u).zip(&sol.psi).all(|((x, u), p)| {
        (u.clone() - Element::real(Algebra::H, c)).norm() < 1e-12 && (p.clone() - psi0.scale(&(c * x).exp())).norm() < 1e-10
    });

    let sin = |v: Vec<f64>, omega| CoeffFn::Sin { value: v, omega, phase: 0.3 };
    let v = CoeffFn::Sum(vec![CoeffFn::Const(vec![0.4]), sin(vec![0.3], 2.0)]);
    let w = CoeffFn::Sum(vec![CoeffFn::Const(vec![0.2, -0.1]), sin(vec![0.1, 0.25], 3.0)]);
    let generic = SchrodingerSpec::new(1.0, 1.0, v, w).expect("spec");
    let u0 = Element::from_f64s(Algebra::H, &[0.1, 0.2, -0.1, 0.3]).expect("u0");
    let p0 = Element::from_f64s(Algebra::H, &[1.0, 0.0, 0.5, -0.2]).expect("psi0");
    let coarse = solve_and_reconstruct(&generic, &u0, &p0, win(1e-3)).expect("coarse").max_residual();
    let fine = solve_and_reconstruct(&generic, &u0, &p0, win(5e-4)).expect("fine").max_residual();
    let ratio = coarse / fine;
    let dim = minimal_algebra_dimension();
    let ok = exact && sol.max_residual() < 1e-6 && (3.5..=4.5).contains(&ratio) && dim == 15;
    (ok, format!("constant case residual {:e}, refinement ratio {ratio:.3}, minimal algebra {dim}", sol.max_residual()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("composition laws", laws),
        ("Riccati closure dimensions", table_dimensions),
        ("rotation algebra", rotations),
        ("alternative quadratic non-closure", alt_quadratic),
        ("minus/plus generation", minus_plus),
        ("conformal form", conformal),
        ("superposition rule", superposition),
        ("projective lift", lift),
        ("Hamiltonian suite", hamiltonian),
        ("Schrodinger reduction", schrodinger),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| (false, "panicked".into()));
        failed += usize::from(!ok);
        println!("criterion {:>2} {}: {name}: {detail}", k + 1, if ok { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
