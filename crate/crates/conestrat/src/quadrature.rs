//! Gauss-type quadrature: Gauss–Jacobi and generalized Gauss–Laguerre rules
//! on the line, and product rules on the simplex and the ball obtained by
//! pushing tensor grids through iterated polar-type diffeomorphisms.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::orthopoly::WeightSpec;

/// Errors raised while building rules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    /// Weight parameters outside the integrable range.
    #[error("weight parameters out of range: {0}")]
    InvalidWeight(String),
    /// A rule needs at least one node.
    #[error("a rule needs at least one node")]
    NoNodes,
}

/// Nodes and positive weights for a weighted integral.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    /// The weight function integrated against.
    pub weight: WeightSpec,
    /// Quadrature nodes (each of length `weight.dim()`).
    pub nodes: Vec<Vec<f64>>,
    /// Positive weights, one per node.
    pub weights: Vec<f64>,
    /// Per-factor polynomial exactness degree.
    pub order: usize,
}

impl QuadratureRule {
    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    /// True if the rule has no nodes.
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Sum of the weights.
    pub fn total_weight(&self) -> f64 {
        pairwise_sum(&self.weights)
    }
}

/// Gauss rule for a measure given by its monic three-term recurrence
/// `p_{k+1} = (x − a_k)p_k − b_k p_{k−1}` and total mass `mu0`.
///
/// Nodes come from the Jacobi matrix eigenvalues, are polished by Newton
/// steps on the orthonormal recurrence, and weights are taken from the
/// Christoffel function.
fn gauss_from_recurrence(a: &[f64], b: &[f64], mu0: f64) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let mut j = DMatrix::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = a[i];
        if i + 1 < n {
            let s = b[i + 1].sqrt();
            j[(i, i + 1)] = s;
            j[(i + 1, i)] = s;
        }
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let sb: Vec<f64> = b.iter().map(|v| v.sqrt()).collect();
    let orthonormal = |x: f64| -> (f64, f64, f64) {
        let mut p_prev = 0.0;
        let mut d_prev = 0.0;
        let mut p = 1.0 / mu0.sqrt();
        let mut d = 0.0;
        let mut christoffel = 0.0;
        for k in 0..n {
            christoffel += p * p;
            let p_next = ((x - a[k]) * p - if k > 0 { sb[k] * p_prev } else { 0.0 }) / sb[k + 1];
            let d_next = (p + (x - a[k]) * d - if k > 0 { sb[k] * d_prev } else { 0.0 }) / sb[k + 1];
            p_prev = p;
            d_prev = d;
            p = p_next;
            d = d_next;
        }
        (p, d, christoffel)
    };
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (i, &(x0, w0)) in pairs.iter().enumerate() {
        let gap = if n == 1 {
            1.0
        } else {
            let l = if i > 0 { x0 - pairs[i - 1].0 } else { f64::INFINITY };
            let r = if i + 1 < n { pairs[i + 1].0 - x0 } else { f64::INFINITY };
            l.min(r)
        };
        let mut x = x0;
        for _ in 0..3 {
            let (p, d, _) = orthonormal(x);
            if !(p.is_finite() && d.is_finite()) || d == 0.0 {
                break;
            }
            let step = p / d;
            if step.abs() > 0.25 * gap {
                break;
            }
            x -= step;
        }
        let (_, _, c) = orthonormal(x);
        let w = if c.is_finite() && c > 0.0 { 1.0 / c } else { w0 };
        nodes.push(x);
        weights.push(w);
    }
    (nodes, weights)
}

/// Monic recurrence coefficients for `(1−x)^α(1+x)^β` on `(−1,1)`.
fn jacobi_recurrence(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let mut a = Vec::with_capacity(n);
    let mut b = vec![0.0; n + 1];
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        a.push(if k == 0 { (beta - alpha) / (ab + 2.0) } else { (beta * beta - alpha * alpha) / (s * (s + 2.0)) });
    }
    for (k, bk) in b.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        *bk = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
        } else {
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
    }
    (a, b)
}

/// Gauss–Jacobi rule for `(1−v)^α(1+v)^β` on `(−1,1)`, exact through
/// degree `2·npts − 1`.
pub fn gauss_jacobi_rule(npts: usize, alpha: f64, beta: f64) -> Result<QuadratureRule, QuadError> {
    if npts == 0 {
        return Err(QuadError::NoNodes);
    }
    let weight = WeightSpec::Interval { alpha, beta };
    weight.validate().map_err(|e| QuadError::InvalidWeight(e.to_string()))?;
    let (a, b) = jacobi_recurrence(npts, alpha, beta);
    let mu0 = weight.total_mass();
    let (x, w) = gauss_from_recurrence(&a, &b, mu0);
    Ok(QuadratureRule { weight, nodes: x.into_iter().map(|v| vec![v]).collect(), weights: w, order: 2 * npts - 1 })
}

/// Generalized Gauss–Laguerre rule for `x^a e^{−x}` on `(0,∞)`.
pub fn gauss_laguerre_rule(npts: usize, a_exp: f64) -> Result<QuadratureRule, QuadError> {
    if npts == 0 {
        return Err(QuadError::NoNodes);
    }
    let weight = WeightSpec::HalfLine { a: a_exp };
    weight.validate().map_err(|e| QuadError::InvalidWeight(e.to_string()))?;
    let a: Vec<f64> = (0..npts).map(|k| 2.0 * k as f64 + a_exp + 1.0).collect();
    let b: Vec<f64> = (0..=npts).map(|k| k as f64 * (k as f64 + a_exp)).collect();
    let (x, w) = gauss_from_recurrence(&a, &b, weight.total_mass());
    Ok(QuadratureRule { weight, nodes: x.into_iter().map(|v| vec![v]).collect(), weights: w, order: 2 * npts - 1 })
}

fn interval_rule_parts(npts: usize, alpha: f64, beta: f64) -> Result<(Vec<f64>, Vec<f64>), QuadError> {
    let r = gauss_jacobi_rule(npts, alpha, beta)?;
    Ok((r.nodes.into_iter().map(|v| v[0]).collect(), r.weights))
}

/// The map `φ_n: (0,1) × (−1,1)^{n−1} → D_n`,
/// `x_1 = t∏_{i}(1+u_i)/2`, `x_k = t·(1−u_{k−1})/2·∏_{i≥k}(1+u_i)/2`,
/// `x_n = t(1−u_{n−1})/2`.
pub fn simplex_phi(t: f64, u: &[f64]) -> Vec<f64> {
    let n = u.len() + 1;
    let mut x = vec![0.0; n];
    let mut tail = t;
    for k in (1..n).rev() {
        x[k] = tail * (1.0 - u[k - 1]) / 2.0;
        tail *= (1.0 + u[k - 1]) / 2.0;
    }
    x[0] = tail;
    x
}

/// Inverse of [`simplex_phi`]: `t = |x|`, `u_k = (|x^{(k)}| − x_{k+1})/(|x^{(k)}| + x_{k+1})`.
pub fn simplex_phi_inverse(x: &[f64]) -> (f64, Vec<f64>) {
    let n = x.len();
    let mut u = Vec::with_capacity(n.saturating_sub(1));
    let mut partial = x[0];
    for k in 1..n {
        u.push((partial - x[k]) / (partial + x[k]));
        partial += x[k];
    }
    (partial, u)
}

/// `|Jac φ_n| = t^{n−1} 2^{−n(n−1)/2} ∏_i (1+u_i)^{i−1}`.
pub fn simplex_phi_jacobian(t: f64, u: &[f64]) -> f64 {
    let n = u.len() + 1;
    let mut j = t.powi(n as i32 - 1) * 2f64.powi(-((n * (n - 1) / 2) as i32));
    for (i, ui) in u.iter().enumerate() {
        j *= (1.0 + ui).powi(i as i32);
    }
    j
}

/// Product rule on `D_n` for `(1−|v|)^{λ_{n+1}−1}∏v_i^{λ_i−1}`.
///
/// Under `φ_n` the weight splits into `t^{|Λ^{(n)}|−1}(1−t)^{λ_{n+1}−1}` and,
/// for each `u_j`, a Jacobi weight with exponents `λ_{j+1}−1` at `u = 1` and
/// `|Λ^{(j)}|−1` at `u = −1`.
pub fn simplex_rule(n: usize, lambda: &[f64], npts: usize) -> Result<QuadratureRule, QuadError> {
    if lambda.len() != n + 1 || n == 0 {
        return Err(QuadError::InvalidWeight(format!("simplex D_{n} needs {} parameters", n + 1)));
    }
    let weight = WeightSpec::Simplex { lambda: lambda.to_vec() };
    weight.validate().map_err(|e| QuadError::InvalidWeight(e.to_string()))?;
    let head: f64 = lambda[..n].iter().sum();
    let (ts, tw) = interval_rule_parts(npts, lambda[n] - 1.0, head - 1.0)?;
    let t_scale = 2f64.powf(-(lambda[n] - 1.0 + head - 1.0 + 1.0));
    let mut factors = Vec::with_capacity(n - 1);
    let mut partial = 0.0;
    for j in 1..n {
        partial += lambda[j - 1];
        let (a, b) = (lambda[j] - 1.0, partial - 1.0);
        let (x, w) = interval_rule_parts(npts, a, b)?;
        let s = 2f64.powf(-(a + b));
        factors.push((x, w.into_iter().map(|v| v * s).collect::<Vec<_>>()));
    }
    let global = 2f64.powi(-(n as i32 - 1)) * t_scale;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut idx = vec![0usize; n - 1];
    loop {
        let u: Vec<f64> = idx.iter().enumerate().map(|(j, &i)| factors[j].0[i]).collect();
        let wu: f64 = idx.iter().enumerate().map(|(j, &i)| factors[j].1[i]).product();
        for (tk, wk) in ts.iter().zip(&tw) {
            let t = (1.0 + tk) / 2.0;
            nodes.push(simplex_phi(t, &u));
            weights.push(global * wk * wu);
        }
        if !advance(&mut idx, npts) {
            break;
        }
    }
    Ok(QuadratureRule { weight, nodes, weights, order: 2 * npts - 1 })
}

/// Odometer increment over `[0, base)^len`; false once exhausted.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for i in idx.iter_mut() {
        *i += 1;
        if *i < base {
            return true;
        }
        *i = 0;
    }
    false
}

/// `θ(x, u) = (x, u·(1−‖x‖²)^{1/2})` from `𝔹^{p−1} × (−1,1)` onto `𝔹^p`.
pub fn ball_theta(x: &[f64], u: f64) -> Vec<f64> {
    let s = (1.0 - x.iter().map(|v| v * v).sum::<f64>()).max(0.0).sqrt();
    let mut out = x.to_vec();
    out.push(u * s);
    out
}

/// Product rule on `𝔹^p` for `dμ_α(v) = 2^{−p/2}(1−‖v‖²)^{α−1/2}dv`,
/// built by iterating [`ball_theta`]; the `k`-th coordinate carries a
/// symmetric Jacobi weight with exponent `α + (p−k)/2 − 1/2`.
pub fn ball_rule(p: usize, alpha: f64, npts: usize) -> Result<QuadratureRule, QuadError> {
    if p == 0 {
        return Err(QuadError::InvalidWeight("ball dimension must be positive".into()));
    }
    let weight = WeightSpec::Ball { alpha, p };
    weight.validate().map_err(|e| QuadError::InvalidWeight(e.to_string()))?;
    let mut nodes: Vec<Vec<f64>> = vec![vec![]];
    let mut weights = vec![2f64.powf(-(p as f64) / 2.0)];
    for k in 1..=p {
        let e = alpha + (p - k) as f64 / 2.0 - 0.5;
        let (u, w) = interval_rule_parts(npts, e, e)?;
        let mut nn = Vec::with_capacity(nodes.len() * npts);
        let mut nw = Vec::with_capacity(nodes.len() * npts);
        for (x, wx) in nodes.iter().zip(&weights) {
            for (ui, wi) in u.iter().zip(&w) {
                nn.push(ball_theta(x, *ui));
                nw.push(wx * wi);
            }
        }
        nodes = nn;
        weights = nw;
    }
    Ok(QuadratureRule { weight, nodes, weights, order: 2 * npts - 1 })
}

/// Builds the rule matching a weight specification with `npts` points per
/// factor.
pub fn rule_for(weight: &WeightSpec, npts: usize) -> Result<QuadratureRule, QuadError> {
    match weight {
        WeightSpec::Interval { alpha, beta } => gauss_jacobi_rule(npts, *alpha, *beta),
        WeightSpec::HalfLine { a } => gauss_laguerre_rule(npts, *a),
        WeightSpec::Simplex { lambda } => simplex_rule(lambda.len() - 1, lambda, npts),
        WeightSpec::Ball { alpha, p } => ball_rule(*p, *alpha, npts),
    }
}

const PAIRWISE_BLOCK: usize = 32;
const PARALLEL_THRESHOLD: usize = 4096;

/// Deterministic pairwise summation.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= PAIRWISE_BLOCK {
        v.iter().sum()
    } else {
        let mid = v.len() / 2;
        pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
    }
}

fn pairwise_sum_complex(v: &[Complex64]) -> Complex64 {
    if v.len() <= PAIRWISE_BLOCK {
        v.iter().sum()
    } else {
        let mid = v.len() / 2;
        pairwise_sum_complex(&v[..mid]) + pairwise_sum_complex(&v[mid..])
    }
}

fn weighted_values<T, F>(f: &F, rule: &QuadratureRule) -> Vec<T>
where
    T: Send + std::ops::Mul<f64, Output = T>,
    F: Fn(&[f64]) -> T + Sync,
{
    if rule.len() >= PARALLEL_THRESHOLD {
        rule.nodes.par_iter().zip(rule.weights.par_iter()).map(|(x, w)| f(x) * *w).collect()
    } else {
        rule.nodes.iter().zip(&rule.weights).map(|(x, w)| f(x) * *w).collect()
    }
}

/// `Σ w_i f(x_i)` with a fixed reduction tree, so results are bit-stable
/// whether or not node evaluation runs in parallel.
pub fn integrate<F: Fn(&[f64]) -> f64 + Sync>(f: F, rule: &QuadratureRule) -> f64 {
    pairwise_sum(&weighted_values(&f, rule))
}

/// Complex-valued version of [`integrate`].
pub fn integrate_complex<F: Fn(&[f64]) -> Complex64 + Sync>(f: F, rule: &QuadratureRule) -> Complex64 {
    pairwise_sum_complex(&weighted_values(&f, rule))
}

/// Largest frequency for which an `npts`-point interval rule resolves
/// `e^{ivx}` to about `1e−10`.
pub fn max_resolved_frequency(npts: usize) -> f64 {
    (npts as f64 * 0.8).min(50.0)
}
