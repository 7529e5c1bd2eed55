//! The rank-one Hankel transform
//! `(Hf)(t) = Γ(λ)^{−1} ∫_0^∞ ₀F₁(λ; −xt) f(x) x^{λ−1} dx`, truncated at `x = T`.

use rayon::prelude::*;
use statrs::function::gamma::gamma;

use super::OperatorError;
use crate::quadrature::{gauss_jacobi_rule, QuadratureRule};

fn poisson_rule(lambda: f64, omega: f64) -> Result<QuadratureRule, OperatorError> {
    let npts = (omega * 0.75) as usize + 24;
    gauss_jacobi_rule(npts, lambda - 1.5, lambda - 1.5).map_err(|e| OperatorError::InvalidParameter(e.to_string()))
}

fn poisson_eval(lambda: f64, z: f64, rule: &QuadratureRule) -> f64 {
    let omega = 2.0 * z.sqrt();
    let c = gamma(lambda) / (std::f64::consts::PI.sqrt() * gamma(lambda - 0.5));
    let s: f64 = rule.nodes.iter().zip(&rule.weights).map(|(v, w)| w * (omega * v[0]).cos()).sum();
    c * s
}

/// `₀F₁(λ; −z)` for `z ≥ 0` and `λ > 1/2`, through
/// `Γ(λ)/(√π Γ(λ−½)) ∫_{−1}^{1} (1−s²)^{λ−3/2} cos(2√z s) ds`.
pub fn conf_0f1_negative(lambda: f64, z: f64) -> Result<f64, OperatorError> {
    if lambda <= 0.5 || z < 0.0 || !z.is_finite() {
        return Err(OperatorError::InvalidParameter(format!("need λ > 1/2 and z ≥ 0, got λ={lambda}, z={z}")));
    }
    let rule = poisson_rule(lambda, 2.0 * z.sqrt())?;
    Ok(poisson_eval(lambda, z, &rule))
}

/// Quadrature nodes on `[0, T]` for the weight `x^{λ−1}`, together with the
/// kernel rule sized for outputs `t ≤ t_max`.
#[derive(Clone, Debug)]
pub struct HankelGrid {
    /// The parameter `λ`.
    pub lambda: f64,
    /// Truncation point `T`.
    pub truncation: f64,
    /// Largest output point the kernel rule resolves.
    pub t_max: f64,
    /// Nodes in `(0, T)`.
    pub nodes: Vec<f64>,
    /// Weights including `x^{λ−1}`.
    pub weights: Vec<f64>,
    kernel: QuadratureRule,
}

impl HankelGrid {
    /// Gauss–Jacobi nodes on `[0, T]` with `npts` points; outputs are
    /// resolved up to `t_max`.
    pub fn new(lambda: f64, truncation: f64, npts: usize, t_max: f64) -> Result<Self, OperatorError> {
        if lambda <= 1.0 || truncation <= 0.0 || t_max <= 0.0 {
            return Err(OperatorError::InvalidParameter("need λ > 1, T > 0 and t_max > 0".into()));
        }
        let rule =
            gauss_jacobi_rule(npts, 0.0, lambda - 1.0).map_err(|e| OperatorError::InvalidParameter(e.to_string()))?;
        let half = truncation / 2.0;
        let scale = half.powf(lambda);
        let nodes = rule.nodes.iter().map(|v| half * (1.0 + v[0])).collect();
        let weights = rule.weights.iter().map(|w| w * scale).collect();
        let kernel = poisson_rule(lambda, 2.0 * (truncation * t_max).sqrt())?;
        Ok(HankelGrid { lambda, truncation, t_max, nodes, weights, kernel })
    }

    /// `f` sampled at the grid nodes.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }
}

/// Result of a truncated transform.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelOutput {
    /// Transform values at the requested points.
    pub values: Vec<f64>,
    /// False when the samples near `T` are not negligible.
    pub truncation_ok: bool,
}

/// Transform of `samples` (values at `grid.nodes`) evaluated at each `t`.
pub fn hankel_rank1(grid: &HankelGrid, samples: &[f64], t: &[f64]) -> Result<HankelOutput, OperatorError> {
    if samples.len() != grid.nodes.len() {
        return Err(OperatorError::InvalidParameter("one sample per grid node required".into()));
    }
    if t.iter().any(|&ti| ti < 0.0 || ti > grid.t_max * (1.0 + 1e-12)) {
        return Err(OperatorError::InvalidParameter("output point outside [0, t_max]".into()));
    }
    let peak = samples.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    let tail = grid
        .nodes
        .iter()
        .zip(samples)
        .filter(|(x, _)| **x > 0.9 * grid.truncation)
        .fold(0.0f64, |m, (_, s)| m.max(s.abs()));
    let truncation_ok = tail <= 1e-10 * peak.max(f64::MIN_POSITIVE);
    let g = gamma(grid.lambda);
    let values = t
        .par_iter()
        .map(|&ti| {
            let terms: Vec<f64> = grid
                .nodes
                .iter()
                .zip(&grid.weights)
                .zip(samples)
                .map(|((x, w), s)| w * s * poisson_eval(grid.lambda, x * ti, &grid.kernel))
                .collect();
            crate::quadrature::pairwise_sum(&terms) / g
        })
        .collect();
    Ok(HankelOutput { values, truncation_ok })
}
