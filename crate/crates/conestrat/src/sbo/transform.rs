//! The symmetry-breaking transforms `Ψ` and their holographic adjoints `Φ`.

use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::gamma;

use super::{lorentz_det, Geometry, SboError, SboSpec};
use crate::orthopoly::{inflated_gegenbauer, jacobi_eval, jacobi_norm2};
use crate::polyalg::{rat, rational_to_f64, F64Poly};
use crate::quadrature::QuadratureRule;

/// A function on `Ω₁ × X` returned by [`holo_apply`].
pub type HoloFn<'a> = Box<dyn Fn(&[f64], &[f64]) -> Complex64 + Sync + Send + 'a>;

/// `γ = 2^{(l−2j+λ+(p−n)/2+1)/2} / ‖P_j‖` with `P_j = P_j^{λ−n/2, l−2j+(p−2)/2}`.
pub fn so_p_gamma(n: usize, p: usize, lambda: f64, l: u32, j: u32) -> f64 {
    let m = f64::from(l - 2 * j);
    let a = lambda - n as f64 / 2.0;
    let b = m + (p as f64 - 2.0) / 2.0;
    2f64.powf((m + lambda + (p as f64 - n as f64) / 2.0 + 1.0) / 2.0) / jacobi_norm2(j, a, b).sqrt()
}

/// `Ψ_{l,j} ∘ Φ_{l,j} = c·id` with `c = 2^{−p/2}|S^{p−1}|` for the ball
/// measure `dμ_α` and the normalized sphere measure on the target.
pub fn so_p_roundtrip_constant(p: usize) -> f64 {
    let pf = p as f64;
    2f64.powf(-pf / 2.0) * 2.0 * std::f64::consts::PI.powf(pf / 2.0) / gamma(pf / 2.0)
}

struct KernelData {
    radial: Vec<f64>,
    ic: F64Poly,
    kc: f64,
    gamma: f64,
}

fn so_p_data(n: usize, p: usize, lambda: f64, l: u32, j: u32, rule: &QuadratureRule) -> KernelData {
    let m = l - 2 * j;
    let a = lambda - n as f64 / 2.0;
    let b = f64::from(m) + (p as f64 - 2.0) / 2.0;
    let radial =
        rule.nodes.iter().map(|v| jacobi_eval(j, a, b, 2.0 * v.iter().map(|c| c * c).sum::<f64>() - 1.0)).collect();
    let ic = inflated_gegenbauer(m, &rat(p as i64 - 2, 2)).to_f64();
    let kc = (2.0 * f64::from(m) + p as f64 - 2.0) / (p as f64 - 2.0);
    KernelData { radial, ic, kc, gamma: so_p_gamma(n, p, lambda, l, j) }
}

fn kernel(data: &KernelData, u: &[f64], v: &[f64]) -> f64 {
    let nu: f64 = u.iter().map(|c| c * c).sum();
    let nv: f64 = v.iter().map(|c| c * c).sum();
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    data.kc * data.ic.eval(&[nu * nv, dot])
}

fn check_order(rule: &QuadratureRule, degree: u32) -> Result<(), SboError> {
    let required = 2 * degree as usize;
    if rule.order < required {
        return Err(SboError::InsufficientOrder { order: rule.order, required });
    }
    Ok(())
}

/// `Ψ f` at each target point: `t^{−k}∫ f(t,v)P(v) dμ_Λ(v)` (tensor) or
/// `Δ(x)^{−k/2}∫ f(x,v)P(v) dμ_α(v)` (ball). In the `SO(p)` geometry a
/// target point is `x` followed by `u ∈ S^{p−1}`, see [`sbo_so_p`].
pub fn sbo_apply<F>(spec: &SboSpec, f: F, points: &[Vec<f64>], npts: usize) -> Result<Vec<Complex64>, SboError>
where
    F: Fn(&[f64], &[f64]) -> Complex64 + Sync,
{
    sbo_eval(spec, f, points, npts, false)
}

/// The same sums as [`sbo_apply`] with every term replaced by its modulus;
/// a natural scale for defects of quantities that may vanish.
pub fn sbo_magnitude<F>(spec: &SboSpec, f: F, points: &[Vec<f64>], npts: usize) -> Result<Vec<f64>, SboError>
where
    F: Fn(&[f64], &[f64]) -> Complex64 + Sync,
{
    Ok(sbo_eval(spec, f, points, npts, true)?.into_iter().map(|z| z.re).collect())
}

fn sbo_eval<F>(
    spec: &SboSpec,
    f: F,
    points: &[Vec<f64>],
    npts: usize,
    absolute: bool,
) -> Result<Vec<Complex64>, SboError>
where
    F: Fn(&[f64], &[f64]) -> Complex64 + Sync,
{
    let f = |x: &[f64], v: &[f64]| if absolute { Complex64::new(f(x, v).norm(), 0.0) } else { f(x, v) };
    if let Geometry::LorentzBallSOp { .. } = spec.geometry {
        return so_p_eval(spec, f, points, npts, absolute);
    }
    let rule = spec.strat_rule(npts)?;
    check_order(&rule, spec.degree())?;
    let pf = spec.poly()?.to_f64();
    let pw: Vec<f64> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(v, w)| if absolute { w * pf.eval(v).abs() } else { w * pf.eval(v) })
        .collect();
    let q = spec.small_dim();
    let k = f64::from(spec.degree());
    let tensor = matches!(spec.geometry, Geometry::TensorSimplex { .. });
    points
        .par_iter()
        .map(|x| {
            if x.len() != q {
                return Err(SboError::InvalidParameter(format!("target points have {q} coordinates")));
            }
            let s: Complex64 = rule.nodes.iter().zip(&pw).map(|(v, w)| f(x, v) * w).sum();
            let pref = if tensor { x[0].powf(-k) } else { lorentz_det(x).powf(-k / 2.0) };
            Ok(s * pref)
        })
        .collect()
}

/// `Ψ_{l,j} f(x, u) = γ Δ(x)^{−l/2} ∫ f(x,v) P_j(2‖v‖²−1) K_{l−2j}(u,v) dμ_α(v)`,
/// where each point is `x` (length `n − p`) followed by `u` (length `p`).
pub fn sbo_so_p<F>(spec: &SboSpec, f: F, points: &[Vec<f64>], npts: usize) -> Result<Vec<Complex64>, SboError>
where
    F: Fn(&[f64], &[f64]) -> Complex64 + Sync,
{
    so_p_eval(spec, f, points, npts, false)
}

fn so_p_eval<F>(
    spec: &SboSpec,
    f: F,
    points: &[Vec<f64>],
    npts: usize,
    absolute: bool,
) -> Result<Vec<Complex64>, SboError>
where
    F: Fn(&[f64], &[f64]) -> Complex64 + Sync,
{
    let Geometry::LorentzBallSOp { n, p, ref lambda, l, j } = spec.geometry else {
        return Err(SboError::Unsupported("sbo_so_p needs the SO(p) geometry".into()));
    };
    let rule = spec.strat_rule(npts)?;
    check_order(&rule, l)?;
    let data = so_p_data(n, p, rational_to_f64(lambda), l, j, &rule);
    let q = n - p;
    points
        .par_iter()
        .map(|pt| {
            if pt.len() != n {
                return Err(SboError::InvalidParameter(format!("points need {n} coordinates")));
            }
            let (x, u) = pt.split_at(q);
            let s: Complex64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .zip(&data.radial)
                .map(|((v, w), r)| {
                    let c = w * r * kernel(&data, u, v);
                    f(x, v) * if absolute { c.abs() } else { c }
                })
                .sum();
            Ok(s * data.gamma * lorentz_det(x).powf(-f64::from(l) / 2.0))
        })
        .collect()
}

/// `Φ g`: `P(v) t^k g(t)` (tensor), `P(v) Δ(x)^{k/2} g(x)` (ball) or
/// `γ Δ(x)^{l/2} P_j(2‖v‖²−1) ‖v‖^{l−2j} g(x, v/‖v‖)` (`SO(p)`, with `g`
/// taking `x` followed by `u`).
pub fn holo_apply<'a, G>(spec: &SboSpec, g: G) -> Result<HoloFn<'a>, SboError>
where
    G: Fn(&[f64]) -> Complex64 + Sync + Send + 'a,
{
    match &spec.geometry {
        Geometry::TensorSimplex { k, poly, .. } => {
            let pf = poly.to_f64();
            let k = f64::from(*k);
            Ok(Box::new(move |t: &[f64], v: &[f64]| g(t) * (pf.eval(v) * t[0].powf(k))))
        }
        Geometry::LorentzBall { k, poly, .. } => {
            let pf = poly.to_f64();
            let k = f64::from(*k);
            Ok(Box::new(move |x: &[f64], v: &[f64]| g(x) * (pf.eval(v) * lorentz_det(x).powf(k / 2.0))))
        }
        Geometry::LorentzBallSOp { n, p, lambda, l, j } => {
            let (n, p, l, j) = (*n, *p, *l, *j);
            let lam = rational_to_f64(lambda);
            let m = l - 2 * j;
            let gam = so_p_gamma(n, p, lam, l, j);
            let a = lam - n as f64 / 2.0;
            let b = f64::from(m) + (p as f64 - 2.0) / 2.0;
            Ok(Box::new(move |x: &[f64], v: &[f64]| {
                let r2: f64 = v.iter().map(|c| c * c).sum();
                let r = r2.sqrt();
                let mut pt = x.to_vec();
                if r > 0.0 {
                    pt.extend(v.iter().map(|c| c / r));
                } else if m == 0 {
                    pt.extend((0..p).map(|i| if i == 0 { 1.0 } else { 0.0 }));
                } else {
                    return Complex64::new(0.0, 0.0);
                }
                let radial = jacobi_eval(j, a, b, 2.0 * r2 - 1.0) * r.powi(m as i32);
                g(&pt) * (gam * lorentz_det(x).powf(f64::from(l) / 2.0) * radial)
            }))
        }
    }
}
