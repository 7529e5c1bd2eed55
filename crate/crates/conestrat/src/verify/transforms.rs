//! Suites for the symmetry-breaking transforms: commuting diagrams,
//! intertwining, the negative control, adjointness, multiplicities and the
//! exploratory Hankel transform.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{fails, Ctx};
use crate::operators::{hankel_rank1, HankelGrid};
use crate::orthopoly::{ball_basis, ball_mixed_basis, harmonic_basis, multi_indices, simplex_basis, MixedIndex};
use crate::polyalg::{int, rat, MultiPoly, Rational};
use crate::sbo::{
    adjointness_defect, branching_table, exact_bessel_residual, verify_diagram_conform, verify_diagram_tensor,
    verify_parabolic_intertwine, BranchingGeometry, Geometry, GroupElement, SboSpec,
};

type RealFn = Box<dyn Fn(&[f64]) -> f64 + Sync>;

fn lam3() -> Vec<Rational> {
    vec![rat(3, 2), int(2), rat(5, 2)]
}

fn tensor_spec(k: &[u32]) -> SboSpec {
    let lam = lam3();
    let p = simplex_basis(2, &lam, k).expect("valid simplex parameters");
    SboSpec::tensor(lam, k.iter().sum(), p).expect("basis element lies in Pol_k")
}

/// The three reference geometries with short labels.
fn geometries() -> Vec<(&'static str, SboSpec)> {
    let (n, p, lam) = (5usize, 2usize, rat(11, 2));
    let alpha = &lam - int(2);
    vec![
        ("tensor", tensor_spec(&[1, 1])),
        (
            "ball",
            SboSpec::ball(n, p, lam, 2, ball_basis(p, &alpha, &[1, 1]).expect("valid ball parameters"))
                .expect("basis element lies in Pol_k"),
        ),
        ("so-p", SboSpec::so_p(6, 3, rat(13, 2), 3, 1).expect("valid SO(p) parameters")),
    ]
}

fn t_grid() -> Vec<Vec<f64>> {
    (0..8).map(|i| vec![0.3 * 1.6f64.powi(i)]).collect()
}

/// Points of the Lorentz cone of dimension `q`.
fn cone_points(rng: &mut ChaCha8Rng, q: usize, count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| {
            let x0 = rng.random_range(0.5..3.0);
            let dir: Vec<f64> = (1..q).map(|_| rng.random_range(-1.0..1.0)).collect();
            let norm = dir.iter().map(|c| c * c).sum::<f64>().sqrt().max(1e-3);
            let r = rng.random_range(0.0..0.8) * x0;
            let mut x = vec![x0];
            x.extend(dir.iter().map(|c| c * r / norm));
            x
        })
        .collect()
}

fn unit_vector(rng: &mut ChaCha8Rng, p: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..p).map(|_| rng.random_range(-1.0..1.0)).collect();
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    v.iter().map(|c| c / n).collect()
}

fn random_rotation(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(d, d, |_, _| rng.random_range(-1.0..1.0));
    let mut q = a.qr().q();
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// Coefficients of a dense random polynomial of degree `deg`.
fn random_terms(rng: &mut ChaCha8Rng, nvars: usize, deg: u32) -> Vec<(Vec<u32>, f64)> {
    (0..=deg).flat_map(|d| multi_indices(nvars, d)).map(|e| (e, rng.random_range(-1.0..1.0))).collect()
}

fn eval_terms(terms: &[(Vec<u32>, f64)], x: &[f64]) -> f64 {
    terms.iter().map(|(e, c)| c * e.iter().zip(x).map(|(k, v)| v.powi(*k as i32)).product::<f64>()).sum()
}

fn target_points(spec: &SboSpec, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    match spec.geometry {
        Geometry::TensorSimplex { .. } => t_grid(),
        Geometry::LorentzBall { .. } => cone_points(rng, spec.small_dim(), 6),
        Geometry::LorentzBallSOp { p, .. } => cone_points(rng, spec.small_dim(), 6)
            .into_iter()
            .map(|mut x| {
                x.extend(unit_vector(rng, p));
                x
            })
            .collect(),
    }
}

/// `e^{−tr(y)/2}` times a random polynomial on the big cone.
fn ambient_test(spec: &SboSpec, rng: &mut ChaCha8Rng) -> impl Fn(&[f64]) -> Complex64 + Sync {
    let so_p = matches!(spec.geometry, Geometry::LorentzBallSOp { .. });
    let deg = if so_p { spec.degree().max(3) } else { 3 };
    let terms = random_terms(rng, spec.big_dim(), deg);
    let tensor = matches!(spec.geometry, Geometry::TensorSimplex { .. });
    move |y: &[f64]| {
        let tr = if tensor { y.iter().sum::<f64>() } else { 2.0 * y[0] };
        Complex64::new((-0.5 * tr).exp() * eval_terms(&terms, y), 0.0)
    }
}

/// Criterion 10: both commuting diagrams on five test functions each.
pub(super) fn diagrams(ctx: &mut Ctx) {
    let npts = ctx.npts(12);
    let lam = lam3();
    let ts: Vec<f64> = (0..6).map(|i| 0.4 + 0.7 * f64::from(i)).collect();
    let tensor_tests = || -> Vec<RealFn> {
        vec![
            Box::new(|x: &[f64]| (-x.iter().sum::<f64>()).exp() * x[0]),
            Box::new(|x: &[f64]| (-0.5 * x.iter().sum::<f64>()).exp() * x[0] * x[1] * x[2]),
            Box::new(|x: &[f64]| (-x.iter().sum::<f64>()).exp() * (x[1] * x[1] - 3.0 * x[2] + 1.0)),
            Box::new(|x: &[f64]| (-2.0 * x.iter().sum::<f64>()).exp() * (x[0].powi(3) + x[2].powi(2))),
            Box::new(|x: &[f64]| (-x.iter().sum::<f64>()).exp() * (x[0] - x[1]).powi(2) * x[2]),
        ]
    };
    for k in [[1u32, 1], [0, 0], [2, 1], [1, 3]] {
        ctx.check(
            &format!("tensor.k{}{}", k[0], k[1]),
            "Ψ_{k̃}^{Λ̃}θ_{n−1}^*T_{k_1}φ^*f = 2^{λ_1+λ_2−1}Ψ_k^Λθ_n^*f",
            json!({"lambda": ["3/2", "2", "5/2"], "k": k, "functions": 5, "npts": npts}),
            1e-6,
            || {
                let mut worst = 0.0f64;
                for f in tensor_tests() {
                    let d = verify_diagram_tensor(&lam, &k, f, &ts, npts)?;
                    worst = worst.max(d.defect).max((d.constant - 2f64.powf(2.5)).abs());
                }
                Ok(worst)
            },
        );
    }
    let conform_tests = || -> Vec<RealFn> {
        vec![
            Box::new(|y: &[f64]| (-y[0]).exp() * y[1]),
            Box::new(|y: &[f64]| (-y[0]).exp() * y[2] * y[2]),
            Box::new(|y: &[f64]| (-2.0 * y[0]).exp() * (y[1] * y[2] + y[2].powi(3))),
            Box::new(|y: &[f64]| (-y[0]).exp() * (1.0 + y[0] * y[2])),
            Box::new(|y: &[f64]| (-0.5 * y[0]).exp() * y[2].powi(4)),
        ]
    };
    let npts = ctx.npts(10);
    let mut rng = ctx.rng(0);
    for (n, lam, l) in [(3usize, 4.0, 2u32), (3, 4.0, 0), (4, 5.0, 3), (5, 6.0, 4)] {
        let xs = cone_points(&mut rng, n - 1, 6);
        let ys = cone_points(&mut rng, n, 6);
        ctx.check(
            &format!("conform.n{n}.l{l}"),
            "Θ^{−1}P_lι^* = c_1 D̂_{λ→λ+l} and (ι^*)^{−1}Θ = c_2 φ_λ^{λ+l}",
            json!({"n": n, "lambda": lam, "l": l, "functions": 5, "npts": npts}),
            1e-6,
            || {
                let mut worst = 0.0f64;
                for f in conform_tests() {
                    let g = |x: &[f64]| (-x[0]).exp() * (1.0 + x[1]);
                    let d = verify_diagram_conform(n, lam, l, f, g, &xs, &ys, npts)?;
                    let phase = (d.c1 / d.c1.norm() - Complex64::i().powu(l)).norm();
                    let modulus = (d.c1.norm() - d.c2 / 2f64.sqrt()).abs();
                    worst = worst.max(d.sbo_defect).max(d.holo_defect).max(phase).max(modulus);
                }
                Ok(worst)
            },
        );
    }
}

/// Criterion 11: intertwining with translations, dilations and rotations,
/// and `SO(3)` equivariance of the `W_{l,j}` transforms.
pub(super) fn intertwining(ctx: &mut Ctx) {
    let npts = ctx.npts(10);
    for (gi, (label, spec)) in geometries().into_iter().enumerate() {
        let mut rng = ctx.rng(gi as u64);
        let pts = target_points(&spec, &mut rng);
        let q = spec.small_dim();
        let cases: Vec<_> = (0..3)
            .map(|_| {
                let f = ambient_test(&spec, &mut rng);
                let u: Vec<f64> = (0..q).map(|_| rng.random_range(-2.0..2.0)).collect();
                let a = rng.random_range(0.5..2.0);
                (f, u, a)
            })
            .collect();
        ctx.check(
            &format!("translation.{label}"),
            "Ψ∘π_λ(n_u) = π_target(n_u)∘Ψ",
            json!({"geometry": label, "functions": 3, "npts": npts}),
            1e-8,
            || {
                let mut worst = 0.0f64;
                for (f, u, _) in &cases {
                    let g = GroupElement::Translation(u.clone());
                    worst = worst.max(verify_parabolic_intertwine(&spec, &g, f, &pts, npts)?);
                }
                Ok(worst)
            },
        );
        ctx.check(
            &format!("dilation.{label}"),
            "Ψ∘π_λ(a) = π_target(a)∘Ψ",
            json!({"geometry": label, "functions": 3, "npts": npts}),
            1e-8,
            || {
                let mut worst = 0.0f64;
                for (f, _, a) in &cases {
                    worst = worst.max(verify_parabolic_intertwine(&spec, &GroupElement::Dilation(*a), f, &pts, npts)?);
                }
                Ok(worst)
            },
        );
        if q >= 3 {
            let rots: Vec<DMatrix<f64>> = (0..3).map(|_| random_rotation(&mut rng, q - 1)).collect();
            ctx.check(
                &format!("rotation.{label}"),
                "Ψ∘π_λ(k) = π_target(k)∘Ψ for k ∈ SO(q−1)",
                json!({"geometry": label, "functions": 3, "npts": npts}),
                1e-8,
                || {
                    let mut worst = 0.0f64;
                    for ((f, _, _), r) in cases.iter().zip(&rots) {
                        let g = GroupElement::Rotation(r.clone());
                        worst = worst.max(verify_parabolic_intertwine(&spec, &g, f, &pts, npts)?);
                    }
                    Ok(worst)
                },
            );
        }
    }
    let mut rng = ctx.rng(10);
    for l in 0..=4u32 {
        let cases: Vec<_> = (0..=l / 2)
            .map(|j| {
                let spec = SboSpec::so_p(6, 3, rat(13, 2), l, j).expect("valid SO(p) parameters");
                let pts = target_points(&spec, &mut rng);
                let terms = random_terms(&mut rng, spec.big_dim(), l.max(3));
                let r = random_rotation(&mut rng, 3);
                (spec, pts, terms, r)
            })
            .collect();
        ctx.check(
            &format!("so3.l{l}"),
            "Ψ_{l,j}(f∘k^{−1}) = η_{l−2j}(k)Ψ_{l,j}f for k ∈ SO(3)",
            json!({"n": 6, "p": 3, "lambda": "13/2", "l": l, "j": (0..=l / 2).collect::<Vec<_>>(), "npts": npts}),
            1e-9,
            || {
                let mut worst = 0.0f64;
                for (spec, pts, terms, r) in &cases {
                    let f = |y: &[f64]| Complex64::new((-y[0]).exp() * eval_terms(terms, y), 0.0);
                    let g = GroupElement::SphereRotation(r.clone());
                    worst = worst.max(verify_parabolic_intertwine(spec, &g, f, pts, npts)?);
                }
                Ok(worst)
            },
        );
    }
}

/// Criterion 12: polynomials outside `Pol_k` break the Bessel identity while
/// the genuine ones satisfy it exactly.
pub(super) fn negative_control(ctx: &mut Ctx) {
    let lam = lam3();
    let (n, p, blam) = (5usize, 2usize, rat(11, 2));
    let gq = &MultiPoly::var(3, 1) + &MultiPoly::one(3);
    let cases: Vec<(&str, Geometry, Geometry, MultiPoly, Rational)> = vec![
        (
            "tensor",
            tensor_spec(&[1, 1]).geometry,
            Geometry::TensorSimplex { lambda: lam.clone(), k: 1, poly: MultiPoly::var(2, 0) },
            &MultiPoly::var(1, 0) + &MultiPoly::one(1),
            rat(1, 3),
        ),
        (
            "ball",
            Geometry::LorentzBall {
                n,
                p,
                lambda: blam.clone(),
                k: 2,
                poly: ball_basis(p, &(&blam - int(2)), &[2, 0]).expect("valid ball parameters"),
            },
            Geometry::LorentzBall {
                n,
                p,
                lambda: blam.clone(),
                k: 2,
                poly: &MultiPoly::var(2, 0) * &MultiPoly::var(2, 0),
            },
            gq.clone(),
            rat(1, 2),
        ),
        (
            "so-p",
            Geometry::LorentzBallSOp { n: 6, p: 3, lambda: rat(13, 2), l: 3, j: 1 },
            Geometry::LorentzBall {
                n: 6,
                p: 3,
                lambda: rat(13, 2),
                k: 2,
                poly: ball_mixed_basis(3, &rat(9, 2), 6, MixedIndex { l: 2, j: 1, kappa: 0 })
                    .expect("valid mixed basis parameters"),
            },
            gq,
            int(0),
        ),
    ];
    for (label, good, bad, g, mu) in cases {
        ctx.check(
            &format!("{label}.orthogonal"),
            "𝓑(ΦG) = Φ(B_{shifted}G) holds exactly for P ∈ Pol_k",
            json!({"geometry": label, "mu": mu.to_string()}),
            0.0,
            || {
                let res = exact_bessel_residual(&SboSpec::unchecked(good.clone())?, &g, &mu)?;
                Ok(fails(res.iter().all(|r| r.is_zero())))
            },
        );
        ctx.check(
            &format!("{label}.non-orthogonal"),
            "𝓑(ΦG) − Φ(B_{shifted}G) ≢ 0 for P ∉ Pol_k",
            json!({"geometry": label, "mu": mu.to_string()}),
            0.0,
            || {
                let res = exact_bessel_residual(&SboSpec::unchecked(bad.clone())?, &g, &mu)?;
                Ok(fails(res.iter().any(|r| !r.is_zero())))
            },
        );
    }
}

/// Criterion 13: `⟨Ψf, g⟩ = ⟨f, Φg⟩` on 20 random pairs per geometry.
pub(super) fn adjointness(ctx: &mut Ctx) {
    let npts = ctx.npts(5);
    for (gi, (label, spec)) in geometries().into_iter().enumerate() {
        let mut rng = ctx.rng(gi as u64);
        let q = spec.small_dim();
        let s = spec.strat_dim();
        let tensor = matches!(spec.geometry, Geometry::TensorSimplex { .. });
        let harm: Vec<_> = match spec.geometry {
            Geometry::LorentzBallSOp { p, l, j, .. } => {
                harmonic_basis(p, l - 2 * j).expect("valid harmonic degree").iter().map(|h| h.to_f64()).collect()
            }
            _ => Vec::new(),
        };
        let pairs: Vec<_> = (0..20)
            .map(|_| {
                let fx = random_terms(&mut rng, q, 2);
                let fv = random_terms(&mut rng, s, 3);
                let fi = rng.random_range(-1.0..1.0);
                let gx = random_terms(&mut rng, q, 2);
                let gi = rng.random_range(-1.0..1.0);
                let coeffs: Vec<f64> = harm.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
                (fx, fv, fi, gx, gi, coeffs)
            })
            .collect();
        ctx.check(
            &format!("pairing.{label}"),
            "⟨Ψf, g⟩_target = ⟨f, Φg⟩_source",
            json!({"geometry": label, "pairs": 20, "npts": npts}),
            1e-9,
            || {
                let damp = |x: &[f64]| if tensor { (-0.5 * x[0]).exp() } else { (-x[0]).exp() };
                let mut worst = 0.0f64;
                for (fx, fv, fi, gx, gi, coeffs) in &pairs {
                    let f = |x: &[f64], v: &[f64]| {
                        Complex64::new(1.0, *fi) * (damp(x) * eval_terms(fx, x) * eval_terms(fv, v))
                    };
                    let g = |pt: &[f64]| {
                        let (x, u) = pt.split_at(q);
                        let y: f64 = if harm.is_empty() {
                            1.0
                        } else {
                            harm.iter().zip(coeffs).map(|(h, c)| c * h.eval(u)).sum()
                        };
                        Complex64::new(0.5, *gi) * (damp(x) * eval_terms(gx, x) * y)
                    };
                    worst = worst.max(adjointness_defect(&spec, f, g, npts, npts)?.defect);
                }
                Ok(worst)
            },
        );
    }
}

/// Criterion 14: multiplicities against binomial and harmonic closed forms.
pub(super) fn multiplicity(ctx: &mut Ctx) {
    ctx.check("tensor", "dim Pol_k(D_{n−1}) = C(n+k−2, n−2)", json!({"n": [2, 6], "max_degree": 6}), 0.0, || {
        let mut bad = 0.0;
        for n in 2..=6 {
            for r in branching_table(BranchingGeometry::Tensor { n }, 6)? {
                bad += fails(r.multiplicity == r.closed_form);
                if n == 2 {
                    bad += fails(r.multiplicity == 1);
                }
            }
        }
        bad += fails(branching_table(BranchingGeometry::Tensor { n: 4 }, 3)?[3].multiplicity == 10);
        Ok(bad)
    });
    ctx.check("ball", "dim Pol_k(𝔹^p) = C(k+p−1, p−1)", json!({"p": [1, 4], "max_degree": 6}), 0.0, || {
        let mut bad = 0.0;
        for p in 1..=4 {
            for r in branching_table(BranchingGeometry::Ball { p }, 6)? {
                bad += fails(r.multiplicity == r.closed_form);
            }
        }
        Ok(bad)
    });
    ctx.check(
        "so-p",
        "Pol_l = ⊕_j W_{l,j} with dim W_{l,j} = dim H^p_{l−2j}",
        json!({"p": [2, 4], "max_degree": 6}),
        0.0,
        || {
            let mut bad = 0.0;
            for p in 2..=4 {
                for r in branching_table(BranchingGeometry::BallSOp { p }, 6)? {
                    bad += fails(r.refinement.iter().sum::<usize>() == r.closed_form);
                    bad += fails(r.multiplicity == r.closed_form);
                }
            }
            bad += fails(branching_table(BranchingGeometry::BallSOp { p: 3 }, 4)?[4].refinement == [9, 5, 1]);
            Ok(bad)
        },
    );
}

type Profile = fn(f64) -> f64;

/// Criterion 15 (exploratory): applying the rank-one Hankel transform twice
/// returns the input.
pub(super) fn hankel(ctx: &mut Ctx) {
    let npts = ctx.npts(200);
    let tests: [(&str, Profile); 3] = [
        ("exp-quadratic", |x| (1.0 + x * x) * (-x).exp()),
        ("gaussian", |x| (-x * x / 4.0).exp()),
        ("gaussian-linear", |x| x * (-x * x / 8.0).exp()),
    ];
    for lam in [2.0, 3.5] {
        for (name, f) in &tests {
            ctx.explore(
                &format!("involution.{name}.lambda{lam}"),
                "ρ_λ(j)²f = f up to a unimodular constant",
                json!({"lambda": lam, "function": name, "truncation": 40.0, "npts": npts}),
                1e-3,
                || {
                    let grid = HankelGrid::new(lam, 40.0, npts, 40.0)?;
                    let once = hankel_rank1(&grid, &grid.sample(f), &grid.nodes)?;
                    let t: Vec<f64> = (1..=12).map(|i| 0.5 * f64::from(i)).collect();
                    let twice = hankel_rank1(&grid, &once.values, &t)?;
                    let scale = t.iter().fold(0.0f64, |m, x| m.max(f(*x).abs()));
                    Ok(t.iter().zip(&twice.values).fold(0.0f64, |m, (x, v)| m.max((v - f(*x)).abs())) / scale)
                },
            );
        }
    }
}
