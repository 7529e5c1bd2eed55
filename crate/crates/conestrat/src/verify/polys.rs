//! Suites for orthogonal bases, exact polynomial identities, Bessel
//! operators and the one-dimensional integral representations.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{fails, Ctx};
use crate::operators::{
    ball_eigencheck, bessel_generic, bessel_shift_identity_check, fd_bessel_lorentz, fd_bessel_tensor,
    lorentz_chart_base, simplex_eigencheck, strat_bessel_lorentz, strat_bessel_lorentz_chain, strat_bessel_tensor,
    strat_bessel_tensor_chain, tensor_chart_base, BesselAlgebra,
};
use crate::orthopoly::{
    ball_basis, ball_factorization_residual, gegenbauer_fourier_pair, inflated_gegenbauer, juhl_symbol,
    kummer_integral_pair, multi_indices, simplex_basis, simplex_factorization_residual,
};
use crate::polyalg::{int, rat, rational_to_f64, MultiPoly, PowPolyFunction, Rational};
use crate::quadrature::{ball_rule, simplex_rule, QuadratureRule};

fn show(q: &[Rational]) -> Vec<String> {
    q.iter().map(|x| x.to_string()).collect()
}

/// A rational in `[lo/den, hi/den]`.
fn random_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    rat(rng.random_range(lo..=hi), den)
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, deg: u32) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    for d in 0..=deg {
        for e in multi_indices(nvars, d) {
            p = &p + &MultiPoly::monomial(nvars, e, rat(rng.random_range(-5..=5), rng.random_range(1..=4)));
        }
    }
    p
}

/// Largest `|G_ij| / √(G_ii G_jj)` over `i ≠ j`.
fn gram_offdiag(polys: &[MultiPoly], rule: &QuadratureRule) -> f64 {
    let vals: Vec<Vec<f64>> = polys
        .iter()
        .map(|p| {
            let f = p.to_f64();
            rule.nodes.iter().map(|v| f.eval(v)).collect()
        })
        .collect();
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).zip(&rule.weights).map(|((x, y), w)| w * x * y).sum() };
    let diag: Vec<f64> = vals.iter().map(|v| dot(v, v)).collect();
    let mut worst = 0.0f64;
    for i in 0..vals.len() {
        for j in 0..i {
            worst = worst.max(dot(&vals[i], &vals[j]).abs() / (diag[i] * diag[j]).sqrt());
        }
    }
    worst
}

/// Criterion 4: Gram matrices of the simplex and ball bases are diagonal.
pub(super) fn bases(ctx: &mut Ctx) {
    let npts = ctx.npts(10);
    let mut rng = ctx.rng(0);
    for nv in 1..=3usize {
        for s in 0..2 {
            let lambda: Vec<Rational> = (0..=nv).map(|_| random_rat(&mut rng, 3, 16, 4)).collect();
            ctx.check(
                &format!("simplex.d{nv}.s{s}"),
                "∫_{D_n} R_k R_{k′} dμ_Λ = 0 for k ≠ k′",
                json!({"vars": nv, "lambda": show(&lambda), "max_degree": 4, "npts": npts}),
                1e-9,
                || {
                    let lf: Vec<f64> = lambda.iter().map(rational_to_f64).collect();
                    let rule = simplex_rule(nv, &lf, npts)?;
                    let mut polys = Vec::new();
                    for d in 0..=4 {
                        for k in multi_indices(nv, d) {
                            polys.push(simplex_basis(nv, &lambda, &k)?);
                        }
                    }
                    Ok(gram_offdiag(&polys, &rule))
                },
            );
        }
    }
    for p in 1..=3usize {
        for s in 0..2 {
            let alpha = random_rat(&mut rng, -1, 14, 4);
            ctx.check(
                &format!("ball.p{p}.s{s}"),
                "∫_{𝔹^p} P_k P_{k′} dμ_α = 0 for k ≠ k′",
                json!({"p": p, "alpha": alpha.to_string(), "max_degree": 4, "npts": npts}),
                1e-9,
                || {
                    let rule = ball_rule(p, rational_to_f64(&alpha), npts)?;
                    let mut polys = Vec::new();
                    for d in 0..=4 {
                        for k in multi_indices(p, d) {
                            polys.push(ball_basis(p, &alpha, &k)?);
                        }
                    }
                    Ok(gram_offdiag(&polys, &rule))
                },
            );
        }
    }
}

/// Criterion 5: exact factorizations of the simplex basis under the
/// splitting map and of the ball basis under `θ(x, u)`.
pub(super) fn factorization(ctx: &mut Ctx) {
    let mut rng = ctx.rng(0);
    for n in 2..=3usize {
        for s in 0..3 {
            let lambda: Vec<Rational> = (0..=n).map(|_| random_rat(&mut rng, 2, 17, 3)).collect();
            ctx.check(
                &format!("simplex.d{n}.s{s}"),
                "R_k^Λ∘φ = y_1^{k_1} P_{k_1}^{λ_2−1,λ_1−1}(u) R_{k̃}^{Λ̃}",
                json!({"vars": n, "lambda": show(&lambda), "max_degree": 4}),
                0.0,
                || {
                    let mut bad = 0.0;
                    for d in 0..=4 {
                        for k in multi_indices(n, d) {
                            bad += fails(simplex_factorization_residual(n, &lambda, &k)?.is_zero());
                        }
                    }
                    Ok(bad)
                },
            );
        }
    }
    for p in 2..=3usize {
        for s in 0..3 {
            let alpha = random_rat(&mut rng, -1, 14, 4);
            ctx.check(
                &format!("ball.p{p}.s{s}"),
                "P_k^α∘θ = P_{k′}^{α+k_p+1/2}(x)(1−‖x‖²)^{k_p/2}C_{k_p}^α(u)",
                json!({"p": p, "alpha": alpha.to_string(), "max_degree": 4}),
                0.0,
                || {
                    let mut bad = 0.0;
                    for d in 0..=4 {
                        for k in multi_indices(p, d) {
                            bad += fails(ball_factorization_residual(p, &alpha, &k)?.is_zero());
                        }
                    }
                    Ok(bad)
                },
            );
        }
    }
}

/// Criterion 6: exact eigen-identities and determinant-shift identities.
pub(super) fn bessel_eigen(ctx: &mut Ctx) {
    let mut rng = ctx.rng(0);
    for n in 2..=4usize {
        let lambda: Vec<Rational> = (0..n).map(|_| random_rat(&mut rng, 2, 17, 3)).collect();
        ctx.check(
            &format!("simplex.n{n}"),
            "simplex operator on Pol_k(D_{n−1}) has eigenvalue −k(k+|Λ|−1)",
            json!({"n": n, "lambda": show(&lambda), "max_degree": 4}),
            0.0,
            || Ok((0..=4).map(|k| simplex_eigencheck(&lambda, k).map(fails)).sum::<Result<f64, _>>()?),
        );
    }
    for p in 1..=3usize {
        let alpha = random_rat(&mut rng, 1, 14, 4);
        ctx.check(
            &format!("ball.p{p}"),
            "ball operator on Pol_k(𝔹^p) has eigenvalue (k+p)(k+2α−1)",
            json!({"p": p, "alpha": alpha.to_string(), "max_degree": 4}),
            0.0,
            || Ok((0..=4).map(|k| ball_eigencheck(&alpha, p, k).map(fails)).sum::<Result<f64, _>>()?),
        );
    }
    let lam = random_rat(&mut rng, 4, 16, 3);
    let polys: Vec<MultiPoly> = (0..4).map(|_| random_poly(&mut rng, 1, 4)).collect();
    ctx.check(
        "shift.rank1",
        "B_λ(t^μ f) = t^μ(B_{λ+2μ}f + μ(μ+λ−1)t^{−1}f), μ = −k",
        json!({"lambda": lam.to_string(), "k": [1, 2, 3, 4]}),
        0.0,
        || {
            let alg = BesselAlgebra::Rank1Product(1);
            let mut bad = 0.0;
            for (k, p) in polys.iter().enumerate() {
                let f = PowPolyFunction::from_poly(MultiPoly::var(1, 0), p.clone());
                let res = bessel_shift_identity_check(&alg, &lam, &int(-(k as i64) - 1), &f)?;
                bad += fails(res.iter().all(|r| r.is_zero()));
            }
            Ok(bad)
        },
    );
    for n in 3..=5usize {
        let lam = random_rat(&mut rng, 3 * n as i64, 6 * n as i64, 3);
        let polys: Vec<MultiPoly> = (0..4).map(|_| random_poly(&mut rng, n, 2)).collect();
        ctx.check(
            &format!("shift.lorentz{n}"),
            "B_λ(Δ^μ f) = Δ^μ(B_{λ+2μ}f + μ(μ+λ−n/2)x^{−1}f), μ = −k/2",
            json!({"n": n, "lambda": lam.to_string(), "k": [1, 2, 3, 4]}),
            0.0,
            || {
                let alg = BesselAlgebra::Lorentz(n);
                let mut bad = 0.0;
                for (k, p) in polys.iter().enumerate() {
                    let f = PowPolyFunction::from_poly(alg.det_poly(n), p.clone());
                    let res = bessel_shift_identity_check(&alg, &lam, &rat(-(k as i64) - 1, 2), &f)?;
                    bad += fails(res.iter().all(|r| r.is_zero()));
                }
                Ok(bad)
            },
        );
    }
    // The stratified forms of the two identities on the orthogonal families.
    let lambda = vec![rat(3, 2), int(2), rat(5, 2)];
    let g_polys: Vec<MultiPoly> = (0..=3).map(|_| random_poly(&mut rng, 1, 3)).collect();
    ctx.check(
        "strat.tensor",
        "𝓑_Λ(g R_k) = t^k B_{|Λ|+2k}(t^{−k} g) R_k",
        json!({"lambda": show(&lambda), "max_degree": 3}),
        0.0,
        || {
            let n = lambda.len();
            let total: Rational = lambda.iter().sum();
            let base = tensor_chart_base(n);
            let mut bad = 0.0;
            for (k, gp) in (0..=3u32).zip(&g_polys) {
                for idx in multi_indices(n - 1, k) {
                    let r = simplex_basis(n - 1, &lambda, &idx)?.shift_vars(n, 1);
                    let g = PowPolyFunction::new(base.clone(), rat(1, 2), gp.shift_vars(n, 0));
                    let lhs = strat_bessel_tensor(&lambda, &g.mul_poly(&r))?;
                    let kq = int(i64::from(k));
                    let shifted = bessel_generic(
                        &BesselAlgebra::Rank1Product(1),
                        &[&total + &kq * int(2)],
                        &g.mul_base_pow(&-kq.clone()),
                    )?
                    .remove(0);
                    bad += fails(lhs.sub(&shifted.mul_base_pow(&kq).mul_poly(&r))?.is_zero());
                }
            }
            Ok(bad)
        },
    );
    for (n, p, lam) in [(4usize, 2usize, rat(7, 2)), (5, 2, rat(9, 2)), (5, 3, int(5))] {
        let g_polys: Vec<MultiPoly> = (0..=3).map(|_| random_poly(&mut rng, n - p, 2)).collect();
        ctx.check(
            &format!("strat.lorentz.n{n}.p{p}"),
            "B^{(n)}_λ|_{n−p}(g P_k) = Δ^{k/2} B^{(n−p)}_{λ+k}(Δ^{−k/2} g) P_k",
            json!({"n": n, "p": p, "lambda": lam.to_string(), "max_degree": 3}),
            0.0,
            || {
                let q = n - p;
                let alpha = &lam - rat(n as i64 - 1, 2);
                let base = lorentz_chart_base(n, p);
                let alg = BesselAlgebra::Lorentz(q);
                let mut bad = 0.0;
                for (k, gp) in (0..=3u32).zip(&g_polys) {
                    for idx in multi_indices(p, k) {
                        let pk = ball_basis(p, &alpha, &idx)?.shift_vars(n, q);
                        let g = PowPolyFunction::new(base.clone(), rat(1, 3), gp.shift_vars(n, 0));
                        let lhs = strat_bessel_lorentz(&lam, n, p, &g.mul_poly(&pk))?;
                        let half_k = rat(i64::from(k), 2);
                        let shifted = bessel_generic(
                            &alg,
                            &vec![&lam + int(i64::from(k)); q],
                            &g.mul_base_pow(&-half_k.clone()),
                        )?;
                        for (l, s) in lhs.iter().zip(&shifted) {
                            bad += fails(l.sub(&s.mul_base_pow(&half_k).mul_poly(&pk))?.is_zero());
                        }
                    }
                }
                Ok(bad)
            },
        );
    }
}

fn random_class_function(rng: &mut ChaCha8Rng, base: &MultiPoly, n: usize) -> PowPolyFunction {
    let a = PowPolyFunction::new(base.clone(), rat(1, 3), random_poly(rng, n, 2));
    let b = PowPolyFunction::new(base.clone(), rat(-1, 2), random_poly(rng, n, 2));
    a.add(&b).expect("same base")
}

/// Criterion 7: closed forms of the stratified Bessel operators against the
/// exact chain rule and against finite differences.
pub(super) fn strat_bessel(ctx: &mut Ctx) {
    let mut rng = ctx.rng(0);
    for n in 2..=5usize {
        let lambda: Vec<Rational> = (0..n).map(|_| random_rat(&mut rng, 2, 12, 3)).collect();
        let f = random_class_function(&mut rng, &tensor_chart_base(n), n);
        ctx.check(
            &format!("tensor-exact.n{n}"),
            "𝓑_Λ = 𝓑^{(t)}_{|Λ|} + t^{−1}(simplex operator) vs chain rule through θ",
            json!({"n": n, "lambda": show(&lambda)}),
            0.0,
            || Ok(fails(strat_bessel_tensor(&lambda, &f)?.sub(&strat_bessel_tensor_chain(&lambda, &f)?)?.is_zero())),
        );
        let points: Vec<(f64, Vec<f64>)> = (0..100)
            .map(|_| {
                let w: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..1.0)).collect();
                let s: f64 = w.iter().sum();
                (rng.random_range(0.5..3.0), w[..n - 1].iter().map(|c| c / s).collect())
            })
            .collect();
        ctx.check(
            &format!("tensor-fd.n{n}"),
            "𝓑_Λ closed form vs finite-difference Σ B_{λ_i} through θ",
            json!({"n": n, "lambda": show(&lambda), "points": 100}),
            1e-5,
            || {
                let closed = strat_bessel_tensor(&lambda, &f)?;
                let lf: Vec<f64> = lambda.iter().map(rational_to_f64).collect();
                let mut worst = 0.0f64;
                for (t, v) in &points {
                    let mut pt = vec![*t];
                    pt.extend_from_slice(v);
                    let exact = closed.eval_f64(&pt);
                    let fd = fd_bessel_tensor(
                        &lf,
                        |t, v: &[f64]| {
                            let mut q = vec![t];
                            q.extend_from_slice(v);
                            f.eval_f64(&q)
                        },
                        *t,
                        v,
                    );
                    worst = worst.max((exact - fd).abs() / exact.abs().max(1.0));
                }
                Ok(worst)
            },
        );
    }
    for (n, p) in [(3usize, 1usize), (4, 1), (4, 2), (5, 1), (5, 2), (5, 3)] {
        let q = n - p;
        let lam = random_rat(&mut rng, 3 * n as i64, 6 * n as i64, 3);
        let f = random_class_function(&mut rng, &lorentz_chart_base(n, p), n);
        ctx.check(
            &format!("lorentz-exact.n{n}.p{p}"),
            "B^{(n)}_λ|_{n−p} = B^{(n−p)}_λ + (x^{−1}/4)(ball operator) vs chain rule through ι",
            json!({"n": n, "p": p, "lambda": lam.to_string()}),
            0.0,
            || {
                let closed = strat_bessel_lorentz(&lam, n, p, &f)?;
                let chain = strat_bessel_lorentz_chain(&lam, n, p, &f)?;
                let mut bad = 0.0;
                for (a, b) in closed.iter().zip(&chain) {
                    bad += fails(a.sub(b)?.is_zero());
                }
                Ok(bad)
            },
        );
        let points: Vec<(Vec<f64>, Vec<f64>)> = (0..100)
            .map(|_| {
                let x0 = rng.random_range(1.0..2.0);
                let mut x = vec![x0];
                let dir: Vec<f64> = (1..q).map(|_| rng.random_range(-1.0..1.0)).collect();
                let nd = dir.iter().map(|c| c * c).sum::<f64>().sqrt().max(1e-3);
                let r = rng.random_range(0.0..0.6) * x0;
                x.extend(dir.iter().map(|c| c * r / nd));
                let dir: Vec<f64> = (0..p).map(|_| rng.random_range(-1.0..1.0)).collect();
                let nd = dir.iter().map(|c| c * c).sum::<f64>().sqrt().max(1e-3);
                let r = rng.random_range(0.0..0.8);
                (x, dir.iter().map(|c| c * r / nd).collect())
            })
            .collect();
        ctx.check(
            &format!("lorentz-fd.n{n}.p{p}"),
            "B^{(n)}_λ|_{n−p} closed form vs finite differences through ι",
            json!({"n": n, "p": p, "lambda": lam.to_string(), "points": 100}),
            1e-5,
            || {
                let closed = strat_bessel_lorentz(&lam, n, p, &f)?;
                let lf = rational_to_f64(&lam);
                let mut worst = 0.0f64;
                for (x, v) in &points {
                    let mut pt = x.clone();
                    pt.extend_from_slice(v);
                    let fd = fd_bessel_lorentz(
                        lf,
                        n,
                        p,
                        |x: &[f64], v: &[f64]| {
                            let mut q = x.to_vec();
                            q.extend_from_slice(v);
                            f.eval_f64(&q)
                        },
                        x,
                        v,
                    );
                    for (m, cf) in closed.iter().enumerate() {
                        let exact = cf.eval_f64(&pt);
                        worst = worst.max((exact - fd[m]).abs() / exact.abs().max(1.0));
                    }
                }
                Ok(worst)
            },
        );
    }
}

/// Criterion 8: the Juhl symbol equals the inflated Gegenbauer polynomial.
pub(super) fn juhl(ctx: &mut Ctx) {
    let mut rng = ctx.rng(0);
    let mut alphas = vec![rat(1, 2), int(1)];
    alphas.extend((0..3).map(|_| random_rat(&mut rng, 1, 40, 7)));
    for alpha in alphas {
        ctx.check(
            &format!("alpha.{}", alpha.to_string().replace('/', "_")),
            "Σ_k a_k(l,α) y^{l−2k} x^k = x^{l/2} C_l^α(y/√x)",
            json!({"alpha": alpha.to_string(), "max_l": 8}),
            0.0,
            || {
                let mut bad = 0.0;
                for l in 0..=8 {
                    bad += fails((&juhl_symbol(l, &alpha)? - &inflated_gegenbauer(l, &alpha)).is_zero());
                }
                Ok(bad)
            },
        );
    }
}

/// Criterion 9: Fourier transforms of Jacobi and Gegenbauer weights against
/// their closed hypergeometric forms.
pub(super) fn integrals(ctx: &mut Ctx) {
    let npts = ctx.npts(40);
    let xs: Vec<f64> = (1..=20).map(|i| 0.5 * f64::from(i)).collect();
    let mut rng = ctx.rng(0);
    for s in 0..3 {
        let (a, b) = (rng.random_range(1.0..4.0), rng.random_range(1.0..4.0));
        ctx.check(
            &format!("kummer.s{s}"),
            "C_{α,β} x^l e^{ix} ₁F₁(α+l; α+β+2l; −2ix) = ∫P_l^{α−1,β−1}(v)e^{ivx}(1−v)^{α−1}(1+v)^{β−1}dv",
            json!({"alpha": a, "beta": b, "max_l": 5, "x": [0.5, 10.0], "npts": npts}),
            1e-8,
            || {
                let mut worst = 0.0f64;
                for l in 0..=5 {
                    for &x in &xs {
                        worst = worst.max(kummer_integral_pair(a, b, l, x, npts)?.relative_defect(f64::MIN_POSITIVE));
                    }
                }
                Ok(worst)
            },
        );
        let nu = rng.random_range(1.0..4.0);
        ctx.check(
            &format!("gegenbauer.s{s}"),
            "∫C_l^ν(v)(1−v²)^{ν−1/2}e^{ixv}dv = c(l;ν) x^l ₀F₁(l+ν+1; −x²/4)",
            json!({"nu": nu, "max_l": 5, "x": [0.5, 10.0], "npts": npts}),
            1e-8,
            || {
                let mut worst = 0.0f64;
                for l in 0..=5 {
                    for &x in &xs {
                        worst = worst.max(gegenbauer_fourier_pair(nu, l, x, npts)?.relative_defect(f64::MIN_POSITIVE));
                    }
                }
                Ok(worst)
            },
        );
    }
}
