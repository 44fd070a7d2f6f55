use nda_riccati::riccati::{CoeffFn, Integration};
use nda_riccati::schrodinger::{minimal_algebra, minimal_algebra_dimension, solve_and_reconstruct, SchrodingerSpec};
use nda_riccati::vfield::generators;
use nda_riccati::{Algebra, Element};

const H: Algebra = Algebra::H;

fn grid(step: f64) -> Integration {
    Integration { step, ..Integration::default() }
}

fn smooth() -> SchrodingerSpec<f64> {
    let sin = |amp: f64, omega: f64, phase: f64| CoeffFn::Sin { value: vec![amp], omega, phase };
    let v = CoeffFn::Sum(vec![CoeffFn::Const(vec![0.4]), sin(0.3, 2.0, 0.1)]);
    let w = CoeffFn::Sum(vec![
        CoeffFn::Const(vec![0.2, -0.1]),
        CoeffFn::Sin { value: vec![0.1, 0.25], omega: 3.0, phase: 0.5 },
    ]);
    SchrodingerSpec::new(1.0, 1.0, v, w).unwrap()
}

fn start() -> (Element<f64>, Element<f64>) {
    (
        Element::from_f64s(H, &[0.1, 0.2, -0.1, 0.3]).unwrap(),
        Element::from_f64s(H, &[1.0, 0.0, 0.5, -0.2]).unwrap(),
    )
}

#[test]
fn constant_potential_gives_exponential() {
    // V = ħ²c²/2m makes u ≡ c stationary, so Ψ = e^{cx} ψ0
    let (hbar, m, c) = (1.3, 0.8, 0.7);
    let spec =
        SchrodingerSpec::new(hbar, m, CoeffFn::Const(vec![hbar * hbar * c * c / (2.0 * m)]), CoeffFn::zero(2)).unwrap();
    let psi0 = Element::from_f64s(H, &[0.5, -1.0, 0.25, 2.0]).unwrap();
    let sol = solve_and_reconstruct(&spec, &Element::real(H, c), &psi0, grid(1e-3)).unwrap();
    assert!(!sol.blew_up);
    for ((x, u), psi) in sol.xs.iter().zip(&sol.u).zip(&sol.psi) {
        assert!((u.clone() - Element::real(H, c)).norm() < 1e-12);
        assert!((psi.clone() - psi0.scale(&(c * x).exp())).norm() < 1e-10);
    }
    assert!(sol.max_residual() < 1e-6, "{}", sol.max_residual());
}

#[test]
fn free_particle_with_zero_log_derivative() {
    let spec = SchrodingerSpec::new(1.0, 1.0, CoeffFn::zero(1), CoeffFn::zero(2)).unwrap();
    let psi0 = Element::from_f64s(H, &[0.0, 1.0, 1.0, 0.0]).unwrap();
    let sol = solve_and_reconstruct(&spec, &Element::zero(H), &psi0, grid(1e-3)).unwrap();
    assert!(sol.psi.iter().all(|p| *p == psi0));
    assert!(sol.max_residual() < 1e-8);
}

#[test]
fn generic_potentials_converge_at_second_order() {
    let (u0, psi0) = start();
    let coarse = solve_and_reconstruct(&smooth(), &u0, &psi0, grid(1e-3)).unwrap();
    let fine = solve_and_reconstruct(&smooth(), &u0, &psi0, grid(5e-4)).unwrap();
    assert!(coarse.max_residual() < 1e-5, "{}", coarse.max_residual());
    let ratio = coarse.max_residual() / fine.max_residual();
    assert!((3.5..=4.5).contains(&ratio), "{ratio}");
    assert!(coarse.log_derivative_error() < 1e-5);
    assert_eq!(coarse.residual.len(), coarse.xs.len());
}

#[test]
fn psi_is_right_linear() {
    // Ψ q solves the same equation for any quaternion q
    let (u0, psi0) = start();
    let q = Element::from_f64s(H, &[0.3, -0.7, 0.2, 0.9]).unwrap();
    let a = solve_and_reconstruct(&smooth(), &u0, &psi0, grid(1e-3)).unwrap();
    let b = solve_and_reconstruct(&smooth(), &u0, &(&psi0 * &q), grid(1e-3)).unwrap();
    for (pa, pb) in a.psi.iter().zip(&b.psi) {
        assert!((pa * &q - pb.clone()).norm() < 1e-12);
    }
    assert!(b.max_residual() < 1e-5);
}

#[test]
fn node_truncates_the_run() {
    // u0 = −2 with b = 0 gives u = 1/(x − 1/2), a node of Ψ at x = 1/2
    let spec = SchrodingerSpec::new(1.0, 1.0, CoeffFn::zero(1), CoeffFn::zero(2)).unwrap();
    let sol = solve_and_reconstruct(&spec, &Element::real(H, -2.0), &Element::one(H), grid(1e-3)).unwrap();
    assert!(sol.blew_up);
    assert!(*sol.xs.last().unwrap() < 0.51);
}

#[test]
fn bad_inputs() {
    let (u0, _) = start();
    assert!(solve_and_reconstruct(&smooth(), &u0, &Element::zero(H), grid(1e-3)).is_err());
    let c = Element::zero(Algebra::C);
    assert!(solve_and_reconstruct(&smooth(), &c, &Element::one(H), grid(1e-3)).is_err());
    assert!(solve_and_reconstruct(&smooth().with_energy(1.0), &u0, &Element::one(H), grid(1e-3)).is_err());
}

#[test]
fn minimal_algebra_has_fifteen_generators() {
    assert_eq!(minimal_algebra_dimension(), 15);
    let report = minimal_algebra();
    assert!(report.closed);
    assert!(report.max_degree() <= 2);
    // intermediate fields of the computation lie in the span
    let mut expected = vec![generators::euler(H)];
    for i in 1..4 {
        expected.extend([generators::left(H, i), generators::right(H, i), generators::plus(H, i)]);
        expected.extend((1..i).map(|j| generators::tilde(H, i, j)));
    }
    for f in &expected {
        assert!(report.spans(f), "{}", f.name());
    }
    // a symmetric traceless linear field is not conformal
    assert!(!report.spans(&nda_riccati::vfield::lift_field("e1*o*e2", H).unwrap()));
}
