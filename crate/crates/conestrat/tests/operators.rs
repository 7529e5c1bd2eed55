use conestrat::operators::{
    ball_eigen_residual, ball_eigencheck, bessel_apply, bessel_generic, bessel_shift_identity_check, conf_0f1_negative,
    fd_bessel_lorentz, fd_bessel_tensor, hankel_rank1, lie_action, lorentz_chart_base, simplex_eigen_residual,
    simplex_eigencheck, strat_bessel_lorentz, strat_bessel_lorentz_chain, strat_bessel_tensor,
    strat_bessel_tensor_chain, tensor_chart_base, BesselAlgebra, DiffOperatorSpec, FunctionClass, HankelGrid,
    LieElement, OperatorError, PhasedFunction,
};
use conestrat::orthopoly::{ball_basis, multi_indices, simplex_basis};
use conestrat::polyalg::{int, rat, MultiPoly, PowPolyFunction, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

fn c(n: usize, q: Rational) -> MultiPoly {
    MultiPoly::constant(n, q)
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, deg: u32) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    for d in 0..=deg {
        for e in multi_indices(nvars, d) {
            let coef = rat(rng.random_range(-5..=5), rng.random_range(1..=4));
            p = &p + &MultiPoly::monomial(nvars, e, coef);
        }
    }
    p
}

fn same(a: &PowPolyFunction, b: &PowPolyFunction) -> bool {
    a.sub(b).unwrap().is_zero()
}

fn all_zero(v: &[PowPolyFunction]) -> bool {
    v.iter().all(|f| f.is_zero())
}

#[test]
fn rank_one_bessel_on_monomials() {
    for k in 0..6u32 {
        for lam in [rat(1, 2), rat(3, 1), rat(7, 3)] {
            let f = PowPolyFunction::from_poly(x(1, 0), x(1, 0).pow(k));
            let out = bessel_apply(&DiffOperatorSpec::BesselRank1(lam.clone()), &f).unwrap();
            let kq = int(i64::from(k));
            let expected =
                if k == 0 { MultiPoly::zero(1) } else { x(1, 0).pow(k - 1).scale(&(&kq * (&kq + &lam - int(1)))) };
            assert!(same(&out[0], &PowPolyFunction::from_poly(x(1, 0), expected)));
        }
    }
}

#[test]
fn rank_one_bessel_on_fractional_power() {
    // B_λ(t^μ) = μ(μ+λ−1) t^{μ−1}
    let lam = rat(5, 2);
    let mu = rat(1, 3);
    let f = PowPolyFunction::new(x(1, 0), mu.clone(), MultiPoly::one(1));
    let out = bessel_apply(&DiffOperatorSpec::BesselRank1(lam.clone()), &f).unwrap();
    let expected = PowPolyFunction::new(x(1, 0), &mu - int(1), c(1, &mu * (&mu + &lam - int(1))));
    assert!(same(&out[0], &expected));
}

#[test]
fn lorentz_bessel_on_linear_and_det() {
    // B_λ x = (λ/2) e for Lorentz coordinates with Gram 2.
    let n = 3;
    let alg = BesselAlgebra::Lorentz(n);
    let base = alg.det_poly(n);
    let lam = rat(5, 2);
    let f = PowPolyFunction::from_poly(base.clone(), x(n, 0));
    let out = bessel_apply(&DiffOperatorSpec::BesselLorentz(lam.clone(), n), &f).unwrap();
    assert!(same(&out[0], &PowPolyFunction::from_poly(base.clone(), c(n, &lam / int(2)))));
    assert!(out[1].is_zero() && out[2].is_zero());
    // B_λ Δ = μ(μ+λ−n/r) x^{−1} Δ with μ = 1, x^{−1}Δ = (x_0, −x′).
    let f = PowPolyFunction::from_poly(base.clone(), base.clone());
    let out = bessel_generic(&alg, &vec![lam.clone(); n], &f).unwrap();
    let coef = &lam + int(1) - rat(3, 2);
    assert!(same(&out[0], &PowPolyFunction::from_poly(base.clone(), x(n, 0).scale(&coef))));
    assert!(same(&out[1], &PowPolyFunction::from_poly(base.clone(), x(n, 1).scale(&-coef.clone()))));
}

#[test]
fn shift_identity_rank_one_and_lorentz() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 1..4i64 {
        let alg = BesselAlgebra::Rank1Product(1);
        let f = PowPolyFunction::from_poly(x(1, 0), random_poly(&mut rng, 1, 4));
        assert!(all_zero(&bessel_shift_identity_check(&alg, &rat(3, 2), &int(-k), &f).unwrap()));
    }
    for n in [2usize, 3, 4] {
        let alg = BesselAlgebra::Lorentz(n);
        let base = alg.det_poly(n);
        for (k, lam) in [(1i64, rat(5, 2)), (2, rat(7, 3)), (3, int(4))] {
            let f = PowPolyFunction::from_poly(base.clone(), random_poly(&mut rng, n, 2));
            assert!(all_zero(&bessel_shift_identity_check(&alg, &lam, &rat(-k, 2), &f).unwrap()));
        }
        let f = PowPolyFunction::from_poly(base.clone(), x(n, 1));
        assert!(all_zero(&bessel_shift_identity_check(&alg, &rat(9, 4), &int(1), &f).unwrap()));
    }
}

#[test]
fn shift_identity_rank_one_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let alg = BesselAlgebra::Rank1Product(2);
    let base = alg.det_poly(2);
    let f = PowPolyFunction::from_poly(base, random_poly(&mut rng, 2, 3));
    assert!(all_zero(&bessel_shift_identity_check(&alg, &rat(5, 3), &rat(-1, 2), &f).unwrap()));
}

#[test]
fn shift_identity_rejects_wrong_base() {
    let alg = BesselAlgebra::Lorentz(3);
    let f = PowPolyFunction::from_poly(x(3, 0), x(3, 1));
    assert!(matches!(bessel_shift_identity_check(&alg, &int(3), &int(1), &f), Err(OperatorError::OutsideClass(_))));
}

#[test]
fn simplex_eigen_examples() {
    // n = 2, k = 1: f = v − λ₁/|Λ|
    let lam = vec![rat(3, 2), rat(5, 2)];
    let f = &x(1, 0) - &c(1, rat(3, 8));
    assert!(simplex_eigen_residual(&lam, 1, &f).unwrap().is_zero());
    assert!(simplex_eigen_residual(&lam, 0, &MultiPoly::one(1)).unwrap().is_zero());
    let lam3 = vec![rat(3, 2), int(2), rat(5, 2)];
    for k in 0..=4 {
        assert!(simplex_eigencheck(&lam3, k).unwrap(), "k = {k}");
    }
    // a non-eigenfunction leaves a residual
    assert!(!simplex_eigen_residual(&lam3, 1, &x(2, 0)).unwrap().is_zero());
}

#[test]
fn ball_eigen_examples() {
    let alpha = rat(7, 4);
    assert!(ball_eigen_residual(&alpha, 1, 1, &x(1, 0)).unwrap().is_zero());
    assert!(ball_eigen_residual(&alpha, 1, 0, &MultiPoly::one(1)).unwrap().is_zero());
    for k in 0..=4 {
        assert!(ball_eigencheck(&alpha, 2, k).unwrap(), "k = {k}");
    }
    assert!(ball_eigencheck(&rat(3, 2), 3, 3).unwrap());
    assert!(!ball_eigen_residual(&alpha, 2, 2, &(&x(2, 0) * &x(2, 0))).unwrap().is_zero());
}

#[test]
fn operator_arity_errors() {
    let f = PowPolyFunction::from_poly(MultiPoly::one(3), x(3, 0));
    assert!(bessel_apply(&DiffOperatorSpec::SimplexPDE(vec![int(1), int(2)]), &f).is_err());
    assert!(bessel_apply(&DiffOperatorSpec::BallPDE(int(2), 2), &f).is_err());
    assert!(bessel_apply(&DiffOperatorSpec::BesselLorentz(int(2), 1), &f).is_err());
    assert!(bessel_apply(&DiffOperatorSpec::StratBesselLorentz(int(2), 3, 2), &f).is_err());
}

fn random_tensor_function(rng: &mut ChaCha8Rng, n: usize) -> PowPolyFunction {
    let base = tensor_chart_base(n);
    let a = PowPolyFunction::new(base.clone(), rat(1, 3), random_poly(rng, n, 3));
    let b = PowPolyFunction::new(base.clone(), rat(-1, 2), random_poly(rng, n, 2));
    a.add(&b).unwrap()
}

fn random_lorentz_function(rng: &mut ChaCha8Rng, n: usize, p: usize) -> PowPolyFunction {
    let base = lorentz_chart_base(n, p);
    let a = PowPolyFunction::new(base.clone(), rat(1, 4), random_poly(rng, n, 2));
    let b = PowPolyFunction::new(base.clone(), rat(-1, 2), random_poly(rng, n, 2));
    a.add(&b).unwrap()
}

#[test]
fn tensor_closed_form_matches_chain_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for lam in
        [vec![rat(3, 2), rat(5, 2)], vec![rat(3, 2), int(2), rat(5, 2)], vec![int(1), rat(1, 2), int(2), rat(4, 3)]]
    {
        let f = random_tensor_function(&mut rng, lam.len());
        let closed = strat_bessel_tensor(&lam, &f).unwrap();
        let chain = strat_bessel_tensor_chain(&lam, &f).unwrap();
        assert!(closed.sub(&chain).unwrap().is_zero(), "Λ = {lam:?}");
    }
}

#[test]
fn lorentz_closed_form_matches_chain_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (n, p, lam) in [(3usize, 1usize, rat(5, 2)), (4, 2, rat(7, 2)), (5, 2, rat(9, 2)), (5, 3, int(5))] {
        let f = random_lorentz_function(&mut rng, n, p);
        let closed = strat_bessel_lorentz(&lam, n, p, &f).unwrap();
        let chain = strat_bessel_lorentz_chain(&lam, n, p, &f).unwrap();
        for (a, b) in closed.iter().zip(&chain) {
            assert!(a.sub(b).unwrap().is_zero(), "n = {n}, p = {p}");
        }
    }
}

#[test]
fn tensor_closed_form_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let lam = vec![rat(3, 2), int(2), rat(5, 2)];
    let lf: Vec<f64> = vec![1.5, 2.0, 2.5];
    let f = random_tensor_function(&mut rng, 3);
    let closed = strat_bessel_tensor(&lam, &f).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let t = rng.random_range(0.5..3.0);
        let (a, b): (f64, f64) = (rng.random_range(0.1..0.8), rng.random_range(0.1..0.8));
        let (v1, v2) = (a * (1.0 - 0.1 - b * 0.5), b * 0.5);
        let exact = closed.eval_f64(&[t, v1, v2]);
        let fd = fd_bessel_tensor(&lf, |t, v: &[f64]| f.eval_f64(&[t, v[0], v[1]]), t, &[v1, v2]);
        worst = worst.max((exact - fd).abs() / exact.abs().max(1.0));
    }
    assert!(worst < 1e-5, "worst deviation {worst}");
}

#[test]
fn lorentz_closed_form_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let (n, p) = (4usize, 2usize);
    let lam = rat(7, 2);
    let f = random_lorentz_function(&mut rng, n, p);
    let closed = strat_bessel_lorentz(&lam, n, p, &f).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x0 = rng.random_range(1.0..2.0);
        let x1 = rng.random_range(-0.6..0.6) * x0;
        let r = rng.random_range(0.0..0.8);
        let th = rng.random_range(0.0..std::f64::consts::TAU);
        let v = [r * th.cos(), r * th.sin()];
        let point = [x0, x1, v[0], v[1]];
        let fd =
            fd_bessel_lorentz(3.5, n, p, |x: &[f64], v: &[f64]| f.eval_f64(&[x[0], x[1], v[0], v[1]]), &[x0, x1], &v);
        for (m, cf) in closed.iter().enumerate() {
            let exact = cf.eval_f64(&point);
            worst = worst.max((exact - fd[m]).abs() / exact.abs().max(1.0));
        }
    }
    assert!(worst < 1e-5, "worst deviation {worst}");
}

#[test]
fn tensor_stratified_bessel_on_simplex_family() {
    // t^{−k}·h = B_{|Λ|+2k}(t^{−k} g) when 𝓑_Λ(g R) = h R.
    let lam = vec![rat(3, 2), int(2), rat(5, 2)];
    let total: Rational = lam.iter().sum();
    let n = 3;
    let base = tensor_chart_base(n);
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for k in 0..=3u32 {
        for idx in multi_indices(n - 1, k) {
            let r = simplex_basis(n - 1, &lam, &idx).unwrap().shift_vars(n, 1);
            let g_poly = random_poly(&mut rng, 1, 3).shift_vars(n, 0);
            let g = PowPolyFunction::new(base.clone(), rat(1, 2), g_poly);
            let lhs = strat_bessel_tensor(&lam, &g.mul_poly(&r)).unwrap();
            let kq = int(i64::from(k));
            let shifted = bessel_generic(
                &BesselAlgebra::Rank1Product(1),
                &[&total + &kq * int(2)],
                &g.mul_base_pow(&-kq.clone()),
            )
            .unwrap()
            .remove(0);
            let rhs = shifted.mul_base_pow(&kq).mul_poly(&r);
            assert!(lhs.sub(&rhs).unwrap().is_zero(), "k = {k}, idx = {idx:?}");
        }
    }
}

#[test]
fn lorentz_stratified_bessel_on_ball_family() {
    // Δ^{−k/2}·[𝓑(g P)]/P = B^{(n−p)}_{λ+k}(Δ^{−k/2} g) for P ∈ Pol_k(𝔹^p), α = λ − (n−1)/2.
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for (n, p, lam) in [(4usize, 2usize, rat(7, 2)), (5, 2, rat(9, 2)), (4, 1, int(4))] {
        let q = n - p;
        let alpha = &lam - rat(n as i64 - 1, 2);
        let base = lorentz_chart_base(n, p);
        let alg = BesselAlgebra::Lorentz(q);
        for k in 0..=3u32 {
            for idx in multi_indices(p, k) {
                let pk = ball_basis(p, &alpha, &idx).unwrap().shift_vars(n, q);
                let g_poly = random_poly(&mut rng, q, 2).shift_vars(n, 0);
                let g = PowPolyFunction::new(base.clone(), rat(1, 3), g_poly);
                let lhs = strat_bessel_lorentz(&lam, n, p, &g.mul_poly(&pk)).unwrap();
                let half_k = rat(i64::from(k), 2);
                let shifted =
                    bessel_generic(&alg, &vec![&lam + int(i64::from(k)); q], &g.mul_base_pow(&-half_k.clone()))
                        .unwrap();
                for (l, s) in lhs.iter().zip(&shifted) {
                    let rhs = s.mul_base_pow(&half_k).mul_poly(&pk);
                    assert!(l.sub(&rhs).unwrap().is_zero(), "n = {n}, p = {p}, k = {k}");
                }
            }
        }
    }
}

#[test]
fn strat_variants_reject_bad_input() {
    let f = PowPolyFunction::from_poly(MultiPoly::one(3), x(3, 0));
    assert!(strat_bessel_tensor(&[int(1), int(2), int(3)], &f).is_err());
    assert!(strat_bessel_lorentz(&int(3), 3, 2, &f).is_err());
    assert!(strat_bessel_tensor(&[int(1)], &f).is_err());
}

#[test]
fn lie_action_examples() {
    let alg = BesselAlgebra::Lorentz(3);
    let base = alg.det_poly(3);
    let lam = rat(5, 2);
    let one = PhasedFunction::real(PowPolyFunction::from_poly(base.clone(), MultiPoly::one(3)));
    // u-part on 1 is i(u|x) = 2i⟨u,x⟩.
    let u = vec![int(1), int(2), int(0)];
    let out = lie_action(&alg, &lam, &LieElement::N(u), &one).unwrap();
    assert!(out.re.is_zero());
    let expected = &x(3, 0).scale(&int(2)) + &x(3, 1).scale(&int(4));
    assert!(same(&out.im, &PowPolyFunction::from_poly(base.clone(), expected)));
    // Dilation: (λ/2m)·n·f + Euler f.
    let f = PowPolyFunction::from_poly(base.clone(), &(&x(3, 0) * &x(3, 1)) + &x(3, 2));
    let id: Vec<Vec<Rational>> =
        (0..3).map(|i| (0..3).map(|j| if i == j { int(1) } else { int(0) }).collect()).collect();
    let out = lie_action(&alg, &lam, &LieElement::L(id), &PhasedFunction::real(f.clone())).unwrap();
    let vars = [0, 1, 2];
    let euler = f.map_polys(|p| p.euler(&vars));
    let expected = f.scale(&(&lam * int(3) / int(3))).add(&euler).unwrap();
    assert!(same(&out.re, &expected));
    // Rank one: n̄-part with v = e is i·B_λ f.
    let r1 = BesselAlgebra::Rank1Product(1);
    let g = PowPolyFunction::from_poly(x(1, 0), x(1, 0).pow(3));
    let out = lie_action(&r1, &lam, &LieElement::NBar(vec![int(1)]), &PhasedFunction::real(g.clone())).unwrap();
    let b = bessel_apply(&DiffOperatorSpec::BesselRank1(lam.clone()), &g).unwrap().remove(0);
    assert!(out.re.is_zero());
    assert!(same(&out.im, &b));
}

#[test]
fn lie_action_rejects_non_structure_matrix() {
    let alg = BesselAlgebra::Lorentz(3);
    let f = PhasedFunction::real(PowPolyFunction::from_poly(alg.det_poly(3), x(3, 0)));
    let t = vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(0)], vec![int(0), int(0), int(0)]];
    assert!(matches!(lie_action(&alg, &int(3), &LieElement::L(t), &f), Err(OperatorError::Unsupported(_))));
    // A Lorentz boost is accepted.
    let boost = vec![vec![int(0), int(1), int(0)], vec![int(1), int(0), int(0)], vec![int(0), int(0), int(0)]];
    assert!(lie_action(&alg, &int(3), &LieElement::L(boost), &f).is_ok());
}

#[test]
fn lie_action_commutator_of_dilation_and_translation() {
    // [dρ(0,Id,0), dρ(u,0,0)] = dρ(u,0,0) on the phased class.
    let alg = BesselAlgebra::Rank1Product(2);
    let base = alg.det_poly(2);
    let lam = rat(3, 2);
    let f = PhasedFunction::with_phase(
        &alg,
        &[rat(1, 2), int(1)],
        PowPolyFunction::from_poly(base, &x(2, 0) + &x(2, 1).pow(2)),
    )
    .unwrap();
    let id = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
    let u = LieElement::N(vec![int(2), int(-1)]);
    let d = LieElement::L(id);
    let a = lie_action(&alg, &lam, &d, &lie_action(&alg, &lam, &u, &f).unwrap()).unwrap();
    let b = lie_action(&alg, &lam, &u, &lie_action(&alg, &lam, &d, &f).unwrap()).unwrap();
    let lhs = a.plus(&b.times_scalar(&int(-1))).unwrap();
    let rhs = lie_action(&alg, &lam, &u, &f).unwrap();
    assert!(lhs.plus(&rhs.times_scalar(&int(-1))).unwrap().is_zero());
}

#[test]
fn phased_derivative_matches_numeric() {
    let alg = BesselAlgebra::Lorentz(2);
    let f = PhasedFunction::with_phase(
        &alg,
        &[rat(1, 3), rat(-1, 2)],
        PowPolyFunction::from_poly(alg.det_poly(2), x(2, 1)),
    )
    .unwrap();
    let d = f.partial(0);
    let p = [1.3, 0.4];
    let h = 1e-5;
    let num = (f.eval(&[p[0] + h, p[1]]) - f.eval(&[p[0] - h, p[1]])) / (2.0 * h);
    assert!((d.eval(&p) - num).norm() < 1e-8);
}

fn series_0f1_negative(b: f64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..400 {
        let kf = k as f64;
        term *= -z / ((b + kf) * (kf + 1.0));
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

#[test]
fn poisson_0f1_matches_series() {
    for b in [1.5, 2.5, 3.25] {
        for z in [0.0, 0.3, 2.0, 7.5, 15.0] {
            let a = conf_0f1_negative(b, z).unwrap();
            let s = series_0f1_negative(b, z);
            assert!((a - s).abs() < 1e-11, "b = {b}, z = {z}: {a} vs {s}");
        }
    }
    // ₀F₁(3/2; −z) = sin(2√z)/(2√z)
    let z: f64 = 400.0;
    let w = 2.0 * z.sqrt();
    assert!((conf_0f1_negative(1.5, z).unwrap() - w.sin() / w).abs() < 1e-12);
    assert!(conf_0f1_negative(0.5, 1.0).is_err());
    assert!(conf_0f1_negative(2.0, -1.0).is_err());
}

#[test]
fn hankel_known_transforms() {
    let lam = 2.5;
    let grid = HankelGrid::new(lam, 40.0, 160, 10.0).unwrap();
    let t: Vec<f64> = (1..=20).map(|i| 0.25 * i as f64).collect();
    let out = hankel_rank1(&grid, &grid.sample(|x| (-x).exp()), &t).unwrap();
    assert!(out.truncation_ok);
    for (ti, v) in t.iter().zip(&out.values) {
        assert!((v - (-ti).exp()).abs() < 1e-8, "t = {ti}");
    }
    let out = hankel_rank1(&grid, &grid.sample(|x| x * (-x).exp()), &t).unwrap();
    for (ti, v) in t.iter().zip(&out.values) {
        assert!((v - (lam - ti) * (-ti).exp()).abs() < 1e-8, "t = {ti}");
    }
}

#[test]
fn hankel_double_application_and_linearity() {
    let lam = 2.0;
    let grid = HankelGrid::new(lam, 40.0, 200, 40.0).unwrap();
    let f = |x: f64| (1.0 + x * x) * (-x).exp();
    let once = hankel_rank1(&grid, &grid.sample(f), &grid.nodes).unwrap();
    let t: Vec<f64> = (1..=12).map(|i| 0.5 * i as f64).collect();
    let twice = hankel_rank1(&grid, &once.values, &t).unwrap();
    for (ti, v) in t.iter().zip(&twice.values) {
        assert!((v - f(*ti)).abs() < 1e-3, "t = {ti}: {v} vs {}", f(*ti));
    }
    let g = |x: f64| x.powi(3) * (-x).exp();
    let a = hankel_rank1(&grid, &grid.sample(f), &t).unwrap().values;
    let b = hankel_rank1(&grid, &grid.sample(g), &t).unwrap().values;
    let ab = hankel_rank1(&grid, &grid.sample(|x| 2.0 * f(x) - 3.0 * g(x)), &t).unwrap().values;
    for i in 0..t.len() {
        assert!((ab[i] - (2.0 * a[i] - 3.0 * b[i])).abs() < 1e-10);
    }
}

#[test]
fn hankel_flags_slow_decay() {
    let grid = HankelGrid::new(2.0, 10.0, 60, 5.0).unwrap();
    let out = hankel_rank1(&grid, &grid.sample(|x| 1.0 / (1.0 + x)), &[1.0]).unwrap();
    assert!(!out.truncation_ok);
    assert!(HankelGrid::new(0.9, 10.0, 20, 1.0).is_err());
    assert!(hankel_rank1(&grid, &[1.0], &[1.0]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn bessel_is_linear(seed in 0u64..1000, a in -4i64..4, b in 1i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = BesselAlgebra::Lorentz(3);
        let base = alg.det_poly(3);
        let f = PowPolyFunction::new(base.clone(), rat(1, 2), random_poly(&mut rng, 3, 2));
        let g = PowPolyFunction::from_poly(base, random_poly(&mut rng, 3, 3));
        let s = rat(a, b);
        let spec = DiffOperatorSpec::BesselLorentz(rat(7, 2), 3);
        let lhs = bessel_apply(&spec, &f.scale(&s).add(&g).unwrap()).unwrap();
        let bf = bessel_apply(&spec, &f).unwrap();
        let bg = bessel_apply(&spec, &g).unwrap();
        for m in 0..3 {
            let rhs = bf[m].scale(&s).add(&bg[m]).unwrap();
            prop_assert!(lhs[m].sub(&rhs).unwrap().is_zero());
        }
    }

    #[test]
    fn tensor_bessel_lowers_t_degree(seed in 0u64..1000, k in 1u32..5) {
        // t^k·P(v) is mapped to a function homogeneous of degree k−1 in t
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lam = vec![rat(3, 2), int(2)];
        let pv = random_poly(&mut rng, 1, 2).shift_vars(2, 1);
        let f = PowPolyFunction::from_poly(tensor_chart_base(2), &x(2, 0).pow(k) * &pv);
        let out = strat_bessel_tensor(&lam, &f).unwrap();
        for (t, v) in [(0.7, 0.2), (1.9, 0.55)] {
            let lhs = out.eval_f64(&[2.0 * t, v]);
            let rhs = 2f64.powi(k as i32 - 1) * out.eval_f64(&[t, v]);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0));
        }
    }
}
