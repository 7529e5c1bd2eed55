use conestrat::orthopoly::{
    ball_basis, ball_factorization_residual, ball_mixed_basis, beta_fn, conf_0f1, gegenbauer, gegenbauer_eval,
    gegenbauer_fourier_pair, gegenbauer_norm2, harmonic_basis, harmonic_dimension, harmonic_kernel, homogenized_jacobi,
    hyper_pfq, inflated_gegenbauer, jacobi_eval, jacobi_norm2, jacobi_poly, juhl_coefficients, juhl_symbol, kummer_1f1,
    kummer_1f1_complex, kummer_integral_pair, multi_indices, pochhammer, rankin_cohen_coefficients,
    rankin_cohen_symbol, simplex_basis, simplex_basis_dunklxu, simplex_factorization_residual, MixedIndex,
};
use conestrat::polyalg::{binomial_q, factorial_q, int, pochhammer_q, rat, rational_to_f64, MultiPoly, Rational};
use num_complex::Complex64;
use proptest::prelude::*;
use statrs::function::gamma::gamma;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// `P_n^{(α,β)}(x) = Σ_s C(n+α, n−s) C(n+β, s) ((x−1)/2)^s ((x+1)/2)^{n−s}`.
fn jacobi_oracle(n: u32, a: &Rational, b: &Rational) -> MultiPoly {
    let x = MultiPoly::var(1, 0);
    let one = MultiPoly::one(1);
    let half = rat(1, 2);
    let xm = (&x - &one).scale(&half);
    let xp = (&x + &one).scale(&half);
    let na = a + int(i64::from(n));
    let nb = b + int(i64::from(n));
    let mut out = MultiPoly::zero(1);
    for s in 0..=n {
        let c = binomial_q(&na, n - s) * binomial_q(&nb, s);
        out = &out + &(&xm.pow(s) * &xp.pow(n - s)).scale(&c);
    }
    out
}

/// `C_n^α(x) = Σ_k (−1)^k (α)_{n−k} (2x)^{n−2k} / (k!(n−2k)!)`.
fn gegenbauer_oracle(n: u32, a: &Rational) -> MultiPoly {
    let mut out = MultiPoly::zero(1);
    for k in 0..=n / 2 {
        let mut c = pochhammer_q(a, n - k) * num_traits::pow(int(2), (n - 2 * k) as usize)
            / (factorial_q(k) * factorial_q(n - 2 * k));
        if k % 2 == 1 {
            c = -c;
        }
        out.add_term(vec![n - 2 * k], c);
    }
    out
}

/// Normalized Dirichlet moment of `v^a` for the simplex weight with parameters `Λ`.
fn simplex_moment(a: &[u32], lambda: &[Rational]) -> Rational {
    let total: Rational = lambda.iter().sum();
    let deg: u32 = a.iter().sum();
    let num: Rational = a.iter().zip(lambda).map(|(&ai, l)| pochhammer_q(l, ai)).product();
    num / pochhammer_q(&total, deg)
}

/// Normalized moment of `v^a` for `(1−‖v‖²)^μ` on the unit ball of dimension `p`.
fn ball_moment(a: &[u32], mu: &Rational) -> Rational {
    if a.iter().any(|e| e % 2 == 1) {
        return int(0);
    }
    let p = a.len() as i64;
    let num: Rational = a.iter().map(|&e| pochhammer_q(&rat(1, 2), e / 2)).product();
    let half: u32 = a.iter().map(|e| e / 2).sum();
    num / pochhammer_q(&(mu + int(1) + rat(p, 2)), half)
}

fn inner<F: Fn(&[u32]) -> Rational>(p: &MultiPoly, q: &MultiPoly, moment: F) -> Rational {
    (p * q).terms().map(|(e, c)| c * moment(e)).sum()
}

#[test]
fn jacobi_matches_explicit_sum() {
    for (a, b) in [(int(0), int(0)), (rat(1, 2), rat(-1, 2)), (int(3), rat(5, 3)), (rat(-1, 3), int(2))] {
        for n in 0..=6 {
            assert_eq!(jacobi_poly(n, &a, &b), jacobi_oracle(n, &a, &b), "n={n} α={a} β={b}");
        }
        let p1 = jacobi_poly(1, &a, &b).univariate_coeffs();
        assert_eq!(p1, [(&a - &b) / int(2), (&a + &b + int(2)) / int(2)]);
    }
}

#[test]
fn jacobi_float_evaluation_and_norm() {
    let (a, b) = (1.5, 0.5);
    for n in 0..6 {
        let p = jacobi_poly(n, &rat(3, 2), &rat(1, 2));
        for x in [-0.9, -0.2, 0.0, 0.45, 1.0] {
            assert!((jacobi_eval(n, a, b, x) - p.eval_f64(&[x])).abs() < 1e-12);
        }
        // h_n = 2^{α+β+1}Γ(n+α+1)Γ(n+β+1) / ((2n+α+β+1) n! Γ(n+α+β+1)).
        let nf = f64::from(n);
        let h = 2f64.powf(a + b + 1.0) * gamma(nf + a + 1.0) * gamma(nf + b + 1.0)
            / ((2.0 * nf + a + b + 1.0) * gamma(nf + 1.0) * gamma(nf + a + b + 1.0));
        assert!(rel(jacobi_norm2(n, a, b), h) < 1e-12);
    }
}

#[test]
fn homogenized_jacobi_dehomogenizes() {
    let (a, b) = (rat(2, 3), rat(5, 2));
    for n in 0..5 {
        let h = homogenized_jacobi(n, &a, &b);
        let p = jacobi_poly(n, &a, &b);
        for (s, t) in [(rat(1, 3), rat(2, 5)), (int(2), rat(-1, 4))] {
            // s^n·P_n((s−t)/(s+t))·((s+t)/s)^n is a convention check: H(s, t) at s+t = 1.
            let sum = &s + &t;
            let scaled = [&s / &sum, &t / &sum];
            let lhs = h.eval_rational(&scaled);
            let rhs = p.eval_rational(&[&scaled[0] - &scaled[1]]);
            assert_eq!(lhs, rhs, "n={n}");
        }
    }
}

#[test]
fn gegenbauer_matches_explicit_sum() {
    for a in [rat(1, 2), int(1), rat(7, 3), int(4)] {
        for n in 0..=7 {
            assert_eq!(gegenbauer(n, &a), gegenbauer_oracle(n, &a));
        }
    }
    let a = 1.25;
    for n in 0..6 {
        let p = gegenbauer(n, &rat(5, 4));
        for x in [-0.7, 0.1, 0.99] {
            assert!((gegenbauer_eval(n, a, x) - p.eval_f64(&[x])).abs() < 1e-12);
        }
        // ∫(1−x²)^{α−1/2}C_n^α² = π 2^{1−2α} Γ(n+2α) / (n!(n+α)Γ(α)²).
        let nf = f64::from(n);
        let h = std::f64::consts::PI * 2f64.powf(1.0 - 2.0 * a) * gamma(nf + 2.0 * a)
            / (gamma(nf + 1.0) * (nf + a) * gamma(a).powi(2));
        assert!(rel(gegenbauer_norm2(n, a), h) < 1e-12);
    }
}

#[test]
fn inflated_gegenbauer_homogenizes() {
    let a = rat(3, 2);
    for l in 0..7 {
        let ic = inflated_gegenbauer(l, &a);
        let c = gegenbauer(l, &a);
        for (s, y) in [(rat(1, 2), rat(1, 3)), (int(3), rat(-2, 7))] {
            let lhs = ic.eval_rational(&[&s * &s, y.clone()]);
            let rhs = num_traits::pow(s.clone(), l as usize) * c.eval_rational(&[&y / &s]);
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn juhl_coefficients_and_symbol() {
    assert_eq!(juhl_coefficients(2, &int(1)).unwrap(), [int(4), int(-1)]);
    assert_eq!(juhl_coefficients(0, &rat(1, 2)).unwrap(), [int(1)]);
    assert!(juhl_coefficients(3, &int(0)).is_err());
    assert!(juhl_coefficients(3, &int(-2)).is_err());
    for a in [rat(1, 2), int(1), rat(9, 4)] {
        for l in 0..=8 {
            assert_eq!(juhl_symbol(l, &a).unwrap(), inflated_gegenbauer(l, &a));
        }
    }
}

#[test]
fn rankin_cohen_coefficients_are_binomial_products() {
    let (lp, lpp) = (rat(5, 2), rat(7, 3));
    assert_eq!(rankin_cohen_coefficients(&lp, &lpp, 1), [lpp.clone(), -lp.clone()]);
    assert_eq!(rankin_cohen_coefficients(&int(1), &int(1), 2), [int(1), int(-4), int(1)]);
    for l in 0..=6u32 {
        let c = rankin_cohen_coefficients(&lp, &lpp, l);
        for (j, cj) in c.iter().enumerate() {
            let j = j as u32;
            let mut want =
                binomial_q(&(&lp + int(i64::from(l) - 1)), j) * binomial_q(&(&lpp + int(i64::from(l) - 1)), l - j);
            if j % 2 == 1 {
                want = -want;
            }
            assert_eq!(cj, &want);
        }
        let sym = rankin_cohen_symbol(&lp, &lpp, l);
        assert_eq!(sym.coeff(&[l, 0]), c[0]);
        assert_eq!(sym.degree(), if c.iter().all(|x| x == &int(0)) { None } else { Some(l) });
    }
}

#[test]
fn multi_indices_enumerate_compositions() {
    let v = multi_indices(3, 4);
    assert_eq!(v.len(), 15);
    assert!(v.iter().all(|k| k.iter().sum::<u32>() == 4));
    assert!(v.windows(2).all(|w| w[0] > w[1]));
    assert_eq!(multi_indices(1, 3), vec![vec![3]]);
}

#[test]
fn simplex_bases_are_exactly_orthogonal() {
    for lambda in [
        vec![int(1), int(1), int(1)],
        vec![rat(3, 2), int(2), rat(5, 2)],
        vec![rat(1, 2), rat(2, 3), int(3), rat(5, 4)],
    ] {
        let n = lambda.len() - 1;
        let basis: Vec<MultiPoly> =
            (0..=3).flat_map(|d| multi_indices(n, d)).map(|k| simplex_basis(n, &lambda, &k).unwrap()).collect();
        let dx: Vec<MultiPoly> =
            (0..=3).flat_map(|d| multi_indices(n, d)).map(|k| simplex_basis_dunklxu(n, &lambda, &k).unwrap()).collect();
        for set in [&basis, &dx] {
            for (i, p) in set.iter().enumerate() {
                for (j, q) in set.iter().enumerate() {
                    let g = inner(p, q, |e| simplex_moment(e, &lambda));
                    if i == j {
                        assert!(g > int(0));
                    } else {
                        assert_eq!(g, int(0), "{i} {j}");
                    }
                }
            }
        }
    }
    assert!(simplex_basis(2, &[int(1), int(1)], &[0, 0]).is_err());
    assert!(simplex_basis(1, &[int(0), int(1)], &[1]).is_err());
}

#[test]
fn ball_bases_are_exactly_orthogonal() {
    for (p, alpha) in [(1usize, rat(1, 2)), (2, int(1)), (3, rat(3, 4))] {
        let mu = &alpha - rat(1, 2);
        let basis: Vec<MultiPoly> =
            (0..=4).flat_map(|d| multi_indices(p, d)).map(|k| ball_basis(p, &alpha, &k).unwrap()).collect();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let g = inner(a, b, |e| ball_moment(e, &mu));
                if i == j {
                    assert!(g > int(0));
                } else {
                    assert_eq!(g, int(0), "p={p} {i} {j}");
                }
            }
        }
    }
    assert!(ball_basis(2, &rat(-1, 2), &[1, 0]).is_err());
    assert!(ball_basis(2, &int(1), &[1]).is_err());
}

#[test]
fn mixed_ball_basis_is_orthogonal() {
    let (p, lambda, n) = (3usize, rat(13, 2), 6u32);
    let mu = &lambda - rat(i64::from(n), 2);
    let mut basis = Vec::new();
    for l in 0..=4 {
        for j in 0..=l / 2 {
            for kappa in 0..harmonic_dimension(p, l - 2 * j) {
                basis.push(((l, j), ball_mixed_basis(p, &lambda, n, MixedIndex { l, j, kappa }).unwrap()));
            }
        }
    }
    // Elements of different (l, j) blocks are orthogonal.
    for (i, (ba, a)) in basis.iter().enumerate() {
        for (bb, b) in basis.iter().skip(i + 1) {
            if ba != bb {
                assert_eq!(inner(a, b, |e| ball_moment(e, &mu)), int(0), "{ba:?} {bb:?}");
            }
        }
    }
    assert!(ball_mixed_basis(3, &lambda, n, MixedIndex { l: 2, j: 2, kappa: 0 }).is_err());
}

#[test]
fn factorization_residuals_vanish() {
    for lambda in [vec![int(1), int(2), rat(3, 2)], vec![rat(1, 2), rat(2, 3), int(3), rat(5, 4)]] {
        let n = lambda.len() - 1;
        for d in 0..=3 {
            for k in multi_indices(n, d) {
                assert!(simplex_factorization_residual(n, &lambda, &k).unwrap().is_zero(), "{k:?}");
            }
        }
    }
    for (p, alpha) in [(2usize, rat(3, 2)), (3, rat(1, 3))] {
        for d in 0..=4 {
            for k in multi_indices(p, d) {
                assert!(ball_factorization_residual(p, &alpha, &k).unwrap().is_zero(), "{k:?}");
            }
        }
    }
    assert!(simplex_factorization_residual(1, &[int(1), int(1)], &[1]).is_err());
    assert!(ball_factorization_residual(1, &int(1), &[1]).is_err());
}

#[test]
fn harmonic_polynomials() {
    for p in 2..=4usize {
        for n in 0..=4u32 {
            let basis = harmonic_basis(p, n).unwrap();
            assert_eq!(basis.len(), harmonic_dimension(p, n));
            let vars: Vec<usize> = (0..p).collect();
            for h in &basis {
                assert!(h.laplacian(&vars).is_zero());
                assert_eq!(h.degree(), Some(n));
            }
        }
    }
    assert_eq!(harmonic_dimension(3, 5), 11);
    assert_eq!(harmonic_dimension(2, 4), 2);
    // For the normalized surface measure the kernel on the diagonal of the
    // sphere equals the dimension.
    let x = [0.6, 0.8, 0.0];
    let k = harmonic_kernel(3, 2, &x, &x).unwrap();
    assert!(rel(k, 5.0) < 1e-12, "{k}");
    assert!(harmonic_basis(1, 2).is_err());
}

#[test]
fn hypergeometric_closed_forms() {
    for z in [-3.0, -0.5, 0.0, 0.7, 2.5] {
        assert!(rel(kummer_1f1(1.3, 1.3, z).unwrap(), f64::exp(z)) < 1e-13);
        if z != 0.0 {
            assert!(rel(kummer_1f1(1.0, 2.0, z).unwrap(), (f64::exp(z) - 1.0) / z) < 1e-13);
        }
        let c = conf_0f1(0.5, z * z / 4.0).unwrap();
        assert!(rel(c, z.cosh()) < 1e-13);
    }
    for z in [-0.5, 0.3, 0.9] {
        let f: f64 = hyper_pfq(&[1.0, 1.0], &[2.0], z, 1e-16).unwrap();
        assert!(rel(f, -(1.0 - z).ln() / z) < 1e-12);
    }
    // ₁F₁(a; b; ix) with a = b is e^{ix}.
    let w = kummer_1f1_complex(0.8, 0.8, Complex64::new(0.0, 3.0)).unwrap();
    assert!((w - Complex64::from_polar(1.0, 3.0)).norm() < 1e-12);
    assert!(hyper_pfq(&[1.0, 1.0], &[2.0], 1.5, 1e-16).is_err());
    assert!(kummer_1f1(1.0, -2.0, 0.5).is_err());
    assert_eq!(hyper_pfq(&[-2.0], &[1.0], 3.0, 1e-16).unwrap(), 1.0 - 6.0 + 4.5);
    assert_eq!(pochhammer(2.0, 3), 24.0);
    assert!(rel(beta_fn(2.5, 1.5), gamma(2.5) * gamma(1.5) / gamma(4.0)) < 1e-13);
}

#[test]
fn integral_identities_hold() {
    for l in 0..3 {
        for x in [0.5, 3.0, 9.5] {
            let k = kummer_integral_pair(1.5, 2.0, l, x, 40).unwrap();
            assert!(k.relative_defect(1e-300) < 1e-8, "kummer l={l} x={x}");
            let g = gegenbauer_fourier_pair(1.5, l, x, 40).unwrap();
            assert!(g.relative_defect(1e-300) < 1e-8, "gegenbauer l={l} x={x}");
        }
    }
    assert!(kummer_integral_pair(0.0, 1.0, 1, 1.0, 20).is_err());
    assert!(gegenbauer_fourier_pair(0.5, 1, 1.0, 20).is_err());
}

proptest! {
    #[test]
    fn jacobi_symmetry(n in 0u32..7, a in 0i64..6, b in 0i64..6, x in -1.0f64..1.0) {
        // P_n^{(α,β)}(−x) = (−1)^n P_n^{(β,α)}(x).
        let (al, be) = (rat(a, 2), rat(b, 3));
        let lhs = jacobi_poly(n, &al, &be).eval_f64(&[-x]);
        let rhs = if n % 2 == 0 { 1.0 } else { -1.0 } * jacobi_poly(n, &be, &al).eval_f64(&[x]);
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()));
        let at_one = jacobi_poly(n, &al, &be).eval_rational(&[int(1)]);
        prop_assert_eq!(at_one, binomial_q(&(&al + int(i64::from(n))), n));
    }

    #[test]
    fn gegenbauer_recurrence(n in 1u32..8, a in 1i64..9, x in -1.0f64..1.0) {
        // (n+1)C_{n+1} = 2(n+α)x C_n − (n+2α−1)C_{n−1}.
        let al = rat(a, 4);
        let af = rational_to_f64(&al);
        let nf = f64::from(n);
        let c = |k| gegenbauer(k, &al).eval_f64(&[x]);
        let lhs = (nf + 1.0) * c(n + 1);
        let rhs = 2.0 * (nf + af) * x * c(n) - (nf + 2.0 * af - 1.0) * c(n - 1);
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + lhs.abs()));
    }
}
