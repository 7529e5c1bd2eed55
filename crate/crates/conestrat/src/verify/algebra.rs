//! Suites for Jordan identities, stratification charts and Gamma identities.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{rel, Ctx};
use crate::cones::{
    gamma_cone, gamma_product_identity, in_strat_space, strat_forward, strat_inverse, strat_jacobian,
    strat_jacobian_fd, volume_strat_space, ConeEmbedding, StratCoords,
};
use crate::jordan::{self, quad_rep, sample_in_cone, AlgebraDescriptor};
use crate::polyalg::rational_to_f64;

fn algebra_name(a: &AlgebraDescriptor) -> String {
    format!("{:?}", a.kind).to_lowercase().replace(['(', ')'], "")
}

/// Criterion 1: `det P(x) = Δ(x)^{2n/r}` and `Δ(P(y)x) = Δ(y)²Δ(x)`.
pub(super) fn jordan(ctx: &mut Ctx) {
    let algebras: Vec<AlgebraDescriptor> =
        (3..=6).map(AlgebraDescriptor::lorentz).chain((2..=4).map(AlgebraDescriptor::sym)).collect();
    for (i, alg) in algebras.iter().enumerate() {
        let name = algebra_name(alg);
        let exponent = 2.0 * rational_to_f64(&alg.m);
        let mut rng = ctx.rng(i as u64);
        ctx.check(
            &format!("det-quad-rep.{name}"),
            "det P(x) = Δ(x)^{2n/r}",
            json!({"algebra": name, "points": 100}),
            1e-10,
            || {
                let mut worst = 0.0f64;
                for _ in 0..100 {
                    let x = sample_in_cone(alg, &mut rng);
                    worst = worst.max(rel(quad_rep(&x).det(), jordan::det(&x).powf(exponent)));
                }
                Ok(worst)
            },
        );
        let mut rng = ctx.rng(100 + i as u64);
        ctx.check(
            &format!("det-quad-action.{name}"),
            "Δ(P(y)x) = Δ(y)²Δ(x)",
            json!({"algebra": name, "points": 100}),
            1e-10,
            || {
                let mut worst = 0.0f64;
                for _ in 0..100 {
                    let x = sample_in_cone(alg, &mut rng);
                    let y = sample_in_cone(alg, &mut rng);
                    let lhs = jordan::det(&quad_rep(&y).apply(&x)?);
                    worst = worst.max(rel(lhs, jordan::det(&y).powi(2) * jordan::det(&x)));
                }
                Ok(worst)
            },
        );
    }
}

fn sample_strat(emb: &ConeEmbedding, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..emb.strat_dim()).map(|_| rng.random_range(-0.6..0.6)).collect();
        if in_strat_space(emb, &v) {
            return v;
        }
    }
}

/// Criterion 2: chart round trips and Jacobian determinants.
pub(super) fn strat(ctx: &mut Ctx) {
    let mut charts: Vec<(String, ConeEmbedding)> = Vec::new();
    for n in 2..=5 {
        charts.push((format!("simplex.n{n}"), ConeEmbedding::simplex_chart(n).expect("n ≥ 2")));
    }
    for n in 3..=6 {
        for p in 1..=3 {
            if let Ok(e) = ConeEmbedding::equal_rank_lorentz(n, p) {
                charts.push((format!("ball.n{n}.p{p}"), e));
            }
        }
    }
    for p in 2..=4 {
        for v in [AlgebraDescriptor::lorentz(3), AlgebraDescriptor::sym(2)] {
            let name = format!("product.{}.p{p}", algebra_name(&v));
            charts.push((name, ConeEmbedding::diagonal_product(&v, p).expect("p ≥ 2")));
        }
    }
    for (i, (name, emb)) in charts.iter().enumerate() {
        let mut rng = ctx.rng(i as u64);
        ctx.check(
            &format!("round-trip.{name}"),
            "ι⁻¹∘ι(t, v) = (t, v)",
            json!({"chart": name, "points": 200}),
            1e-12,
            || {
                let mut worst = 0.0f64;
                for _ in 0..200 {
                    let t = sample_in_cone(&emb.inner, &mut rng);
                    let v = sample_strat(emb, &mut rng);
                    let x = strat_forward(emb, &StratCoords { t: t.clone(), v: v.clone() })?;
                    let back = strat_inverse(emb, &x)?;
                    let scale = 1.0 + t.coords.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                    for (a, b) in back.t.coords.iter().zip(&t.coords) {
                        worst = worst.max((a - b).abs() / scale);
                    }
                    for (a, b) in back.v.iter().zip(&v) {
                        worst = worst.max((a - b).abs());
                    }
                }
                Ok(worst)
            },
        );
        let mut rng = ctx.rng(100 + i as u64);
        ctx.check(
            &format!("jacobian.{name}"),
            "finite-difference det dι vs closed-form Jacobian",
            json!({"chart": name, "points": 10, "step": 1e-4}),
            1e-6,
            || {
                let mut worst = 0.0f64;
                for _ in 0..10 {
                    let t = sample_in_cone(&emb.inner, &mut rng);
                    let v = sample_strat(emb, &mut rng);
                    let c = StratCoords { t, v };
                    worst = worst.max(rel(strat_jacobian_fd(emb, &c, 1e-4)?, strat_jacobian(emb, &c)?));
                }
                Ok(worst)
            },
        );
    }
}

/// Criterion 3: the rank-one Gamma product identity and the equal-rank
/// volume identity.
pub(super) fn gamma(ctx: &mut Ctx) {
    let r1 = AlgebraDescriptor::rank1_product(1);
    let npts = ctx.npts(40);
    for p in 2..=4usize {
        let mut rng = ctx.rng(p as u64);
        for s in 0..3 {
            let lambda: Vec<f64> = (0..p).map(|_| rng.random_range(1.0..4.0)).collect();
            ctx.check(
                &format!("product.p{p}.s{s}"),
                "∏Γ(λ_i) = Γ(|Λ|)·p^{1−|Λ|}·I_Ω(Λ)",
                json!({"p": p, "lambda": lambda, "npts": npts}),
                1e-8,
                || {
                    let (lhs, rhs, _) = gamma_product_identity(&lambda, &r1, npts)?;
                    Ok(rel(rhs, lhs))
                },
            );
        }
    }
    for (n, p, lambda) in [(4usize, 1usize, 4.0), (5, 2, 3.5), (6, 3, 5.25), (6, 1, 4.5), (3, 1, 2.0)] {
        ctx.check(
            &format!("volume.n{n}.p{p}"),
            "Γ_{Ω₂}(λ) = V_X(λ)·Γ_{Ω₁}(λ)",
            json!({"n": n, "p": p, "lambda": lambda, "npts": npts}),
            1e-6,
            || {
                let emb = ConeEmbedding::equal_rank_lorentz(n, p)?;
                let v = volume_strat_space(&emb, lambda, npts)?;
                Ok(rel(v, gamma_cone(&emb.outer, lambda)? / gamma_cone(&emb.inner, lambda)?))
            },
        );
    }
}
