//! Two-path evaluations of the commuting diagrams for the tensor and the
//! conformal geometries.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{inner, lorentz_det, tensor_chart, SboError};
use crate::orthopoly::{gegenbauer_eval, gegenbauer_norm2, inflated_gegenbauer, jacobi_eval, simplex_basis};
use crate::polyalg::{int, rational_to_f64, Rational};
use crate::quadrature::{gauss_jacobi_rule, simplex_rule};

/// Both paths of the tensor diagram at each sample `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramDefect {
    /// `Ψ_k^Λ(R_k^Λ) θ_n^* f`.
    pub path_i: Vec<f64>,
    /// `Ψ_{k̃}^{Λ̃} θ_{n−1}^* T_{k_1} φ^* f`.
    pub path_ii: Vec<f64>,
    /// The constant `2^{λ_1+λ_2−1}` with `(II) = c·(I)`.
    pub constant: f64,
    /// `max |(II) − c(I)|` relative to the larger of `max |(II)|` and `c`
    /// times the integral of `|f R_k^Λ|` along path (I).
    pub defect: f64,
}

/// Evaluates `(I) = t^{−|k|}∫_{D_{n−1}} f(θ_n(t,v)) R_k^Λ(v) dμ_Λ(v)` and
/// `(II)`, which splits the first two coordinates through
/// `φ(y,u) = (y_1(1+u)/2, y_1(1−u)/2, y_2, …)`, applies the Jacobi transform
/// `T_{k_1}F(y) = y_1^{−k_1}∫F(φ(y,u))P_{k_1}^{λ_2−1,λ_1−1}(u)(1−u)^{λ_2−1}(1+u)^{λ_1−1}du`
/// and then the `(n−1)`-fold transform with `Λ̃ = (λ_1+λ_2+2k_1, λ_3, …)`,
/// `k̃ = (k_2, …)`.
pub fn verify_diagram_tensor<F>(
    lambda: &[Rational],
    k: &[u32],
    f: F,
    t: &[f64],
    npts: usize,
) -> Result<DiagramDefect, SboError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let n = lambda.len();
    if n < 2 || k.len() != n - 1 {
        return Err(SboError::InvalidParameter("need n ≥ 2 and a multi-index of length n − 1".into()));
    }
    let lf: Vec<f64> = lambda.iter().map(rational_to_f64).collect();
    let ktot: u32 = k.iter().sum();
    let r = simplex_basis(n - 1, lambda, k).map_err(inner)?.to_f64();
    let rule = simplex_rule(n - 1, &lf, npts).map_err(inner)?;
    let rw: Vec<f64> = rule.nodes.iter().zip(&rule.weights).map(|(v, w)| w * r.eval(v)).collect();
    let (path_i, magnitude): (Vec<f64>, Vec<f64>) = t
        .par_iter()
        .map(|&ti| {
            let (s, m) = rule.nodes.iter().zip(&rw).fold((0.0, 0.0), |(s, m), (v, w)| {
                let fv = w * f(&tensor_chart(ti, v));
                (s + fv, m + fv.abs())
            });
            let pref = ti.powf(-f64::from(ktot));
            (s * pref, m * pref)
        })
        .unzip();

    let k1 = k[0];
    let jac = gauss_jacobi_rule(npts, lf[1] - 1.0, lf[0] - 1.0).map_err(inner)?;
    let jw: Vec<(f64, f64)> = jac
        .nodes
        .iter()
        .zip(&jac.weights)
        .map(|(u, w)| (u[0], w * jacobi_eval(k1, lf[1] - 1.0, lf[0] - 1.0, u[0])))
        .collect();
    let t_k1 = |y: &[f64]| -> f64 {
        let s: f64 = jw
            .iter()
            .map(|&(u, w)| {
                let mut x = Vec::with_capacity(n);
                x.push(y[0] * (1.0 + u) / 2.0);
                x.push(y[0] * (1.0 - u) / 2.0);
                x.extend_from_slice(&y[1..]);
                w * f(&x)
            })
            .sum();
        s * y[0].powf(-f64::from(k1))
    };
    let path_ii: Vec<f64> = if n == 2 {
        t.par_iter().map(|&ti| t_k1(&[ti])).collect()
    } else {
        let mut lt = vec![&lambda[0] + &lambda[1] + int(2 * i64::from(k1))];
        lt.extend_from_slice(&lambda[2..]);
        let kt = &k[1..];
        let ltf: Vec<f64> = lt.iter().map(rational_to_f64).collect();
        let rt = simplex_basis(n - 2, &lt, kt).map_err(inner)?.to_f64();
        let rule2 = simplex_rule(n - 2, &ltf, npts).map_err(inner)?;
        let rw2: Vec<f64> = rule2.nodes.iter().zip(&rule2.weights).map(|(w, c)| c * rt.eval(w)).collect();
        let kt_tot: u32 = kt.iter().sum();
        t.par_iter()
            .map(|&ti| {
                let s: f64 = rule2.nodes.iter().zip(&rw2).map(|(w, c)| c * t_k1(&tensor_chart(ti, w))).sum();
                s * ti.powf(-f64::from(kt_tot))
            })
            .collect()
    };
    let constant = 2f64.powf(lf[0] + lf[1] - 1.0);
    let floor = constant * magnitude.iter().fold(0.0f64, |m, v| m.max(*v));
    let scale = path_ii.iter().fold(floor, |m, v| m.max(v.abs()));
    let diff = path_i.iter().zip(&path_ii).fold(0.0f64, |m, (a, b)| m.max((b - constant * a).abs()));
    Ok(DiagramDefect { path_i, path_ii, constant, defect: if scale > 0.0 { diff / scale } else { diff } })
}

/// Defects of the conformal diagram (`Lorentz(n) ⊃ Lorentz(n−1)`).
#[derive(Clone, Debug, PartialEq)]
pub struct ConformDefect {
    /// `c_1 = 2^{−1/2} i^l / ‖C_l^α‖`.
    pub c1: Complex64,
    /// `c_2 = 1 / ‖C_l^α‖`.
    pub c2: f64,
    /// Defect of `Θ^{−1} P_l ι^* f` against `c_1 D̂ f`, relative to the
    /// larger of the result and the integral of `|f C_l^α|`.
    pub sbo_defect: f64,
    /// Relative defect of `(ι^*)^{−1} Θ g` against `c_2 φ g`.
    pub holo_defect: f64,
}

/// Checks `c_1 D̂_{λ→λ+l} = Θ^{−1}∘P_l∘ι^*` on `f` at the points `xs` of
/// `Ω_{n−1}`, and `(ι^*)^{−1}∘Θ = c_2 φ_λ^{λ+l}` on `g` at the points `ys`
/// of `Ω_n`, with `α = λ − (n−1)/2` and `dμ_α = 2^{−1/2}(1−v²)^{α−1/2}dv`.
#[allow(clippy::too_many_arguments)]
pub fn verify_diagram_conform<F, G>(
    n: usize,
    lambda: f64,
    l: u32,
    f: F,
    g: G,
    xs: &[Vec<f64>],
    ys: &[Vec<f64>],
    npts: usize,
) -> Result<ConformDefect, SboError>
where
    F: Fn(&[f64]) -> f64 + Sync,
    G: Fn(&[f64]) -> f64 + Sync,
{
    if n < 3 || lambda <= n as f64 - 1.0 {
        return Err(SboError::InvalidParameter("need n ≥ 3 and λ > n − 1".into()));
    }
    let alpha = lambda - (n as f64 - 1.0) / 2.0;
    let norm2 = std::f64::consts::FRAC_1_SQRT_2 * gegenbauer_norm2(l, alpha);
    let norm = norm2.sqrt();
    let il = Complex64::i().powu(l);
    let c1 = il * (std::f64::consts::FRAC_1_SQRT_2 / norm);
    let c2 = 1.0 / norm;

    // Stratified path: pull back, project on C_l in dμ_α, then invert Θ.
    let mu = gauss_jacobi_rule(npts, alpha - 0.5, alpha - 0.5).map_err(inner)?;
    let mu_w: Vec<(f64, f64)> = mu
        .nodes
        .iter()
        .zip(&mu.weights)
        .map(|(v, w)| (v[0], std::f64::consts::FRAC_1_SQRT_2 * w * gegenbauer_eval(l, alpha, v[0])))
        .collect();
    // Direct path: D̂ with the raw weight (1−v²)^{λ−n/2}.
    let raw = gauss_jacobi_rule(npts, lambda - n as f64 / 2.0, lambda - n as f64 / 2.0).map_err(inner)?;
    let raw_w: Vec<(f64, f64)> =
        raw.nodes.iter().zip(&raw.weights).map(|(v, w)| (v[0], w * gegenbauer_eval(l, alpha, v[0]))).collect();
    let pull = |x: &[f64], v: f64| -> f64 {
        let mut y = x.to_vec();
        y.push(-lorentz_det(x).sqrt() * v);
        f(&y)
    };
    let mut floor = 0.0f64;
    let mut lhs = Vec::with_capacity(xs.len());
    let mut rhs = Vec::with_capacity(xs.len());
    for x in xs {
        if x.len() != n - 1 || lorentz_det(x) <= 0.0 || x[0] <= 0.0 {
            return Err(SboError::InvalidParameter("points must lie in Ω_{n−1}".into()));
        }
        let q = lorentz_det(x);
        let proj: f64 = mu_w.iter().map(|&(v, w)| w * pull(x, v)).sum::<f64>() / norm2;
        lhs.push(Complex64::new(q.powf(-f64::from(l) / 2.0) * norm * proj, 0.0));
        let d_hat: f64 = raw_w.iter().map(|&(v, w)| w * pull(x, v)).sum();
        let mag: f64 = raw_w.iter().map(|&(v, w)| (w * pull(x, v)).abs()).sum();
        floor = floor.max(c1.norm() * q.powf(-f64::from(l) / 2.0) * mag);
        rhs.push(c1 * il.inv() * (q.powf(-f64::from(l) / 2.0) * d_hat));
    }
    let sbo_defect = super::scaled_defect(&lhs, &rhs, floor);

    let ic = inflated_gegenbauer(
        l,
        &crate::polyalg::Rational::from_float(alpha)
            .ok_or_else(|| SboError::InvalidParameter("α must be finite".into()))?,
    )
    .to_f64();
    let mut hl = Vec::with_capacity(ys.len());
    let mut hr = Vec::with_capacity(ys.len());
    for y in ys {
        if y.len() != n {
            return Err(SboError::InvalidParameter("points must lie in Ω_n".into()));
        }
        let xp = &y[..n - 1];
        let q = lorentz_det(xp);
        if q <= y[n - 1] * y[n - 1] || xp[0] <= 0.0 {
            return Err(SboError::InvalidParameter("points must lie in Ω_n".into()));
        }
        let v = -y[n - 1] / q.sqrt();
        hl.push(Complex64::new(q.powf(f64::from(l) / 2.0) * gegenbauer_eval(l, alpha, v) / norm * g(xp), 0.0));
        hr.push(Complex64::new(c2 * ic.eval(&[q, -y[n - 1]]) * g(xp), 0.0));
    }
    let holo_defect = super::relative_defect(&hl, &hr);
    Ok(ConformDefect { c1, c2, sbo_defect, holo_defect })
}
