use conestrat::orthopoly::WeightSpec;
use conestrat::quadrature::{
    ball_rule, gauss_jacobi_rule, gauss_laguerre_rule, integrate, simplex_phi, simplex_phi_inverse,
    simplex_phi_jacobian, simplex_rule,
};
use proptest::prelude::*;
use statrs::function::gamma::{gamma, ln_gamma};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn dirichlet(lambda: &[f64]) -> f64 {
    let s: f64 = lambda.iter().sum();
    (lambda.iter().map(|l| ln_gamma(*l)).sum::<f64>() - ln_gamma(s)).exp()
}

#[test]
fn one_point_legendre_is_midpoint() {
    let r = gauss_jacobi_rule(1, 0.0, 0.0).unwrap();
    assert_eq!(r.len(), 1);
    assert!(r.nodes[0][0].abs() < 1e-15);
    assert!((r.weights[0] - 2.0).abs() < 1e-14);
}

#[test]
fn two_point_legendre_integrates_square() {
    let r = gauss_jacobi_rule(2, 0.0, 0.0).unwrap();
    assert!((integrate(|v| v[0] * v[0], &r) - 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn jacobi_total_mass_is_beta_moment() {
    for &(a, b) in &[(0.0, 0.0), (0.5, -0.5), (2.5, 1.0), (-0.7, 3.2), (4.0, 4.0)] {
        let r = gauss_jacobi_rule(20, a, b).unwrap();
        let exact = 2f64.powf(a + b + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);
        assert!(rel(r.total_weight(), exact) < 1e-13, "α={a} β={b}");
        assert!(r.weights.iter().all(|w| *w > 0.0));
    }
}

#[test]
fn jacobi_monomial_moments_are_exact_to_degree() {
    let (a, b) = (1.5, 0.25);
    let n = 8;
    let r = gauss_jacobi_rule(n, a, b).unwrap();
    let fine = gauss_jacobi_rule(60, a, b).unwrap();
    for k in 0..(2 * n) as i32 {
        let got = integrate(|v| v[0].powi(k), &r);
        let want = integrate(|v| v[0].powi(k), &fine);
        assert!((got - want).abs() < 1e-13 * want.abs().max(1.0), "k={k}");
    }
}

#[test]
fn laguerre_moments_are_gamma_values() {
    let a = 1.3;
    let r = gauss_laguerre_rule(30, a).unwrap();
    for k in 0..20 {
        let got = integrate(|x| x[0].powi(k), &r);
        assert!(rel(got, gamma(a + f64::from(k) + 1.0)) < 1e-12, "k={k}");
    }
}

#[test]
fn simplex_phi_round_trip_and_jacobian() {
    let u = [0.3, -0.4, 0.1];
    let x = simplex_phi(0.7, &u);
    let (t, back) = simplex_phi_inverse(&x);
    assert!((t - 0.7).abs() < 1e-15);
    for (a, b) in u.iter().zip(&back) {
        assert!((a - b).abs() < 1e-14);
    }
    let h = 1e-6;
    let n = 4;
    let mut jac = nalgebra::DMatrix::zeros(n, n);
    let base = [0.7, u[0], u[1], u[2]];
    for j in 0..n {
        let mut p = base;
        let mut m = base;
        p[j] += h;
        m[j] -= h;
        let xp = simplex_phi(p[0], &p[1..]);
        let xm = simplex_phi(m[0], &m[1..]);
        for i in 0..n {
            jac[(i, j)] = (xp[i] - xm[i]) / (2.0 * h);
        }
    }
    assert!(rel(jac.determinant().abs(), simplex_phi_jacobian(0.7, &u)) < 1e-8);
}

#[test]
fn simplex_area_with_flat_weight() {
    let r = simplex_rule(2, &[1.0, 1.0, 1.0], 4).unwrap();
    assert!(rel(r.total_weight(), 0.5) < 1e-13);
}

#[test]
fn simplex_total_mass_is_dirichlet() {
    for lam in [vec![1.5, 2.0, 2.5], vec![0.5, 1.0, 3.0, 2.0], vec![2.0, 0.7], vec![1.2, 1.3, 1.4, 1.5, 1.6]] {
        let n = lam.len() - 1;
        let r = simplex_rule(n, &lam, 12).unwrap();
        assert!(rel(r.total_weight(), dirichlet(&lam)) < 1e-12, "{lam:?}");
        assert!(rel(WeightSpec::Simplex { lambda: lam.clone() }.total_mass(), dirichlet(&lam)) < 1e-14);
    }
}

#[test]
fn simplex_monomial_moments_are_dirichlet() {
    let lam = [1.5, 2.0, 2.5, 1.25];
    let r = simplex_rule(3, &lam, 8).unwrap();
    for e in [[1u32, 0, 0], [0, 2, 1], [3, 1, 2], [0, 0, 4]] {
        let got = integrate(|x| (0..3).map(|i| x[i].powi(e[i] as i32)).product(), &r);
        let mut shifted = lam.to_vec();
        for i in 0..3 {
            shifted[i] += f64::from(e[i]);
        }
        assert!(rel(got, dirichlet(&shifted)) < 1e-12, "{e:?}");
    }
}

#[test]
fn ball_rule_in_one_dimension_is_scaled_gegenbauer_rule() {
    let alpha = 2.0;
    let b = ball_rule(1, alpha, 10).unwrap();
    let g = gauss_jacobi_rule(10, alpha - 0.5, alpha - 0.5).unwrap();
    for i in 0..10 {
        assert!((b.nodes[i][0] - g.nodes[i][0]).abs() < 1e-15);
        assert!(rel(b.weights[i], g.weights[i] / 2f64.sqrt()) < 1e-14);
    }
}

#[test]
fn ball_moments_match_closed_forms() {
    for p in 1..=4usize {
        for &alpha in &[0.5, 2.0, 3.25] {
            let r = ball_rule(p, alpha, 10).unwrap();
            let pf = p as f64;
            let exact = 2f64.powf(-pf / 2.0)
                * std::f64::consts::PI.powf(pf / 2.0)
                * (ln_gamma(alpha + 0.5) - ln_gamma(alpha + 0.5 + pf / 2.0)).exp();
            assert!(rel(r.total_weight(), exact) < 1e-12, "p={p} α={alpha}");
            if p >= 2 {
                let e = [2.0, 4.0];
                let got = integrate(|v| v[0].powf(e[0]) * v[1].powf(e[1]), &r);
                let want = 2f64.powf(-pf / 2.0)
                    * (ln_gamma(1.5) + ln_gamma(2.5) + (pf - 2.0) * ln_gamma(0.5) + ln_gamma(alpha + 0.5)
                        - ln_gamma(alpha + 0.5 + 3.0 + pf / 2.0))
                    .exp();
                assert!(rel(got, want) < 1e-12, "p={p} α={alpha}");
                let odd = integrate(|v| v[0] * v[1] * v[1], &r);
                assert!(odd.abs() < 1e-15);
            }
        }
    }
}

#[test]
fn parallel_integration_is_bit_stable() {
    let r = simplex_rule(3, &[1.5, 2.0, 2.5, 3.0], 20).unwrap();
    assert!(r.len() > 4096);
    let f = |x: &[f64]| (x[0] * 3.0).sin() + x[1] * x[2];
    let a = integrate(f, &r);
    for _ in 0..5 {
        assert_eq!(a.to_bits(), integrate(f, &r).to_bits());
    }
}

proptest! {
    #[test]
    fn random_polynomials_integrate_exactly(
        coeffs in proptest::collection::vec(-3.0f64..3.0, 1..12),
        a in -0.9f64..4.0,
        b in -0.9f64..4.0,
    ) {
        let deg = coeffs.len();
        let npts = deg / 2 + 1;
        let r = gauss_jacobi_rule(npts, a, b).unwrap();
        let fine = gauss_jacobi_rule(40, a, b).unwrap();
        let f = |v: &[f64]| coeffs.iter().rev().fold(0.0, |acc, c| acc * v[0] + c);
        let scale: f64 = coeffs.iter().map(|c| c.abs()).sum::<f64>() * fine.total_weight();
        prop_assert!((integrate(f, &r) - integrate(f, &fine)).abs() <= 1e-12 * scale);
    }
}
