//! Symmetry-breaking and holographic operators in the stratified model, with
//! numerical checks of the commuting diagrams, intertwining relations,
//! adjointness and multiplicity bookkeeping.
//!
//! Three geometries are covered. `TensorSimplex` restricts an `n`-fold tensor
//! product on `ℝ₊^n` to the diagonal half-line, with stratification space the
//! simplex `D_{n−1}`. `LorentzBall` restricts from the Lorentz cone of
//! dimension `n` to the one of dimension `n − p`, with stratification space
//! the ball `𝔹^p`. `LorentzBallSOp` refines the latter by the `SO(p)` action
//! on the ball.

mod checks;
mod diagram;
mod transform;

pub use checks::{
    adjointness_defect, branching_table, exact_bessel_residual, mixed_gram_defect, verify_parabolic_intertwine,
    AdjointPairing, BranchingGeometry, BranchingRow, GroupElement,
};
pub use diagram::{verify_diagram_conform, verify_diagram_tensor, ConformDefect, DiagramDefect};
pub use transform::{holo_apply, sbo_apply, sbo_magnitude, sbo_so_p, so_p_gamma, so_p_roundtrip_constant, HoloFn};

use num_complex::Complex64;
use thiserror::Error;

use crate::orthopoly::multi_indices;
use crate::polyalg::{rational_to_f64, MultiPoly, Rational};
use crate::quadrature::{ball_rule, integrate, simplex_rule, QuadratureRule};

/// Errors raised by the transforms and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SboError {
    /// Parameters outside the supported range.
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    /// The defining polynomial is not orthogonal to lower degrees.
    #[error("polynomial is not in Pol_k: {0}")]
    NotOrthogonal(String),
    /// The quadrature cannot resolve the defining polynomial.
    #[error("quadrature order {order} below the required {required}")]
    InsufficientOrder {
        /// Exactness degree of the rule.
        order: usize,
        /// Degree needed.
        required: usize,
    },
    /// The requested group element does not act in this geometry.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Failure in a lower layer.
    #[error("{0}")]
    Inner(String),
}

pub(crate) fn inner<E: std::fmt::Display>(e: E) -> SboError {
    SboError::Inner(e.to_string())
}

/// The three stratified geometries.
#[derive(Clone, Debug, PartialEq)]
pub enum Geometry {
    /// `ℝ₊^n ⊃ ℝ₊·e` with `Λ = (λ_1, …, λ_n)` and `P ∈ Pol_k(D_{n−1})`.
    TensorSimplex {
        /// Parameters `λ_i`.
        lambda: Vec<Rational>,
        /// Degree.
        k: u32,
        /// Polynomial in `n − 1` variables.
        poly: MultiPoly,
    },
    /// Lorentz(n) ⊃ Lorentz(n−p) with `P ∈ Pol_k(𝔹^p)` for `dμ_α`, `α = λ − (n−1)/2`.
    LorentzBall {
        /// Ambient dimension.
        n: usize,
        /// Codimension.
        p: usize,
        /// Parameter `λ`.
        lambda: Rational,
        /// Degree.
        k: u32,
        /// Polynomial in `p` variables.
        poly: MultiPoly,
    },
    /// The `W_{l,j}` block of the Lorentz ball geometry, `p ≥ 3`.
    LorentzBallSOp {
        /// Ambient dimension.
        n: usize,
        /// Codimension.
        p: usize,
        /// Parameter `λ`.
        lambda: Rational,
        /// Total degree.
        l: u32,
        /// Radial degree.
        j: u32,
    },
}

/// Defining data of a symmetry-breaking operator.
#[derive(Clone, Debug, PartialEq)]
pub struct SboSpec {
    /// Geometry and defining data.
    pub geometry: Geometry,
}

const ORTHO_TOL: f64 = 1e-9;

impl SboSpec {
    /// Tensor geometry; `poly` must lie in `Pol_k(D_{n−1})`.
    pub fn tensor(lambda: Vec<Rational>, k: u32, poly: MultiPoly) -> Result<Self, SboError> {
        let spec = SboSpec { geometry: Geometry::TensorSimplex { lambda, k, poly } };
        spec.validate()?;
        spec.check_orthogonal()?;
        Ok(spec)
    }

    /// Lorentz ball geometry; `poly` must lie in `Pol_k(𝔹^p)`.
    pub fn ball(n: usize, p: usize, lambda: Rational, k: u32, poly: MultiPoly) -> Result<Self, SboError> {
        let spec = SboSpec { geometry: Geometry::LorentzBall { n, p, lambda, k, poly } };
        spec.validate()?;
        spec.check_orthogonal()?;
        Ok(spec)
    }

    /// The `(l, j)` block of the `SO(p)`-refined geometry.
    pub fn so_p(n: usize, p: usize, lambda: Rational, l: u32, j: u32) -> Result<Self, SboError> {
        let spec = SboSpec { geometry: Geometry::LorentzBallSOp { n, p, lambda, l, j } };
        spec.validate()?;
        Ok(spec)
    }

    /// Skips the orthogonality check (used for negative controls).
    pub fn unchecked(geometry: Geometry) -> Result<Self, SboError> {
        let spec = SboSpec { geometry };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), SboError> {
        match &self.geometry {
            Geometry::TensorSimplex { lambda, poly, .. } => {
                if lambda.len() < 2 || poly.nvars() != lambda.len() - 1 {
                    return Err(SboError::InvalidParameter(
                        "tensor geometry needs n ≥ 2 and P in n−1 variables".into(),
                    ));
                }
                if lambda.iter().any(|l| rational_to_f64(l) <= 0.0) {
                    return Err(SboError::InvalidParameter("λ_i must be positive".into()));
                }
            }
            Geometry::LorentzBall { n, p, lambda, poly, .. } => {
                check_lorentz(*n, *p, lambda)?;
                if poly.nvars() != *p {
                    return Err(SboError::InvalidParameter("P must have p variables".into()));
                }
            }
            Geometry::LorentzBallSOp { n, p, lambda, l, j } => {
                check_lorentz(*n, *p, lambda)?;
                if *p < 3 {
                    return Err(SboError::Unsupported("SO(p) refinement needs p ≥ 3".into()));
                }
                if 2 * j > *l {
                    return Err(SboError::InvalidParameter("need 2j ≤ l".into()));
                }
            }
        }
        Ok(())
    }

    /// Dimension of the small cone.
    pub fn small_dim(&self) -> usize {
        match &self.geometry {
            Geometry::TensorSimplex { .. } => 1,
            Geometry::LorentzBall { n, p, .. } | Geometry::LorentzBallSOp { n, p, .. } => n - p,
        }
    }

    /// Dimension of the stratification space.
    pub fn strat_dim(&self) -> usize {
        match &self.geometry {
            Geometry::TensorSimplex { lambda, .. } => lambda.len() - 1,
            Geometry::LorentzBall { p, .. } | Geometry::LorentzBallSOp { p, .. } => *p,
        }
    }

    /// Dimension of the big cone.
    pub fn big_dim(&self) -> usize {
        match &self.geometry {
            Geometry::TensorSimplex { lambda, .. } => lambda.len(),
            Geometry::LorentzBall { n, .. } | Geometry::LorentzBallSOp { n, .. } => *n,
        }
    }

    /// Degree shift: `k`, or `l` in the `SO(p)` geometry.
    pub fn degree(&self) -> u32 {
        match &self.geometry {
            Geometry::TensorSimplex { k, .. } | Geometry::LorentzBall { k, .. } => *k,
            Geometry::LorentzBallSOp { l, .. } => *l,
        }
    }

    /// Ball parameter `α = λ − (n−1)/2` of the Lorentz geometries.
    pub fn ball_alpha(&self) -> Option<f64> {
        match &self.geometry {
            Geometry::TensorSimplex { .. } => None,
            Geometry::LorentzBall { n, lambda, .. } | Geometry::LorentzBallSOp { n, lambda, .. } => {
                Some(rational_to_f64(lambda) - (*n as f64 - 1.0) / 2.0)
            }
        }
    }

    /// Quadrature rule for the stratification-space measure.
    pub fn strat_rule(&self, npts: usize) -> Result<QuadratureRule, SboError> {
        match &self.geometry {
            Geometry::TensorSimplex { lambda, .. } => {
                let lf: Vec<f64> = lambda.iter().map(rational_to_f64).collect();
                simplex_rule(lambda.len() - 1, &lf, npts).map_err(inner)
            }
            _ => ball_rule(self.strat_dim(), self.ball_alpha().expect("Lorentz geometry"), npts).map_err(inner),
        }
    }

    /// The defining polynomial on the stratification space.
    pub fn poly(&self) -> Result<MultiPoly, SboError> {
        match &self.geometry {
            Geometry::TensorSimplex { poly, .. } | Geometry::LorentzBall { poly, .. } => Ok(poly.clone()),
            Geometry::LorentzBallSOp { .. } => {
                Err(SboError::Unsupported("the SO(p) geometry is defined by a kernel, not a single polynomial".into()))
            }
        }
    }

    /// `‖P‖²` for the stratification-space measure.
    pub fn poly_norm2(&self, npts: usize) -> Result<f64, SboError> {
        let p = self.poly()?.to_f64();
        let rule = self.strat_rule(npts)?;
        Ok(integrate(|v| p.eval(v).powi(2), &rule))
    }

    fn check_orthogonal(&self) -> Result<(), SboError> {
        let poly = self.poly()?;
        let k = self.degree();
        if poly.degree().unwrap_or(0) > k {
            return Err(SboError::NotOrthogonal(format!("degree exceeds {k}")));
        }
        let d = self.strat_dim();
        let npts = k as usize + 4;
        let rule = self.strat_rule(npts)?;
        let pf = poly.to_f64();
        let pvals: Vec<f64> = rule.nodes.iter().map(|v| pf.eval(v)).collect();
        let pn = rule.weights.iter().zip(&pvals).map(|(w, p)| w * p * p).sum::<f64>().sqrt();
        if pn == 0.0 {
            return Err(SboError::NotOrthogonal("zero polynomial".into()));
        }
        for deg in 0..k {
            for e in multi_indices(d, deg) {
                let mono = |v: &[f64]| v.iter().zip(&e).map(|(x, &k)| x.powi(k as i32)).product::<f64>();
                let mut ip = 0.0;
                let mut mn = 0.0;
                for ((v, w), p) in rule.nodes.iter().zip(&rule.weights).zip(&pvals) {
                    let m = mono(v);
                    ip += w * p * m;
                    mn += w * m * m;
                }
                if ip.abs() > ORTHO_TOL * pn * mn.sqrt() {
                    return Err(SboError::NotOrthogonal(format!("⟨P, v^{e:?}⟩ = {ip:e}")));
                }
            }
        }
        Ok(())
    }
}

fn check_lorentz(n: usize, p: usize, lambda: &Rational) -> Result<(), SboError> {
    if p == 0 || n < p + 2 {
        return Err(SboError::InvalidParameter(format!("need p ≥ 1 and n − p ≥ 2 (n = {n}, p = {p})")));
    }
    if rational_to_f64(lambda) <= n as f64 - 1.0 {
        return Err(SboError::InvalidParameter("need λ > n − 1".into()));
    }
    Ok(())
}

/// `Δ(x) = x_0² − x_1² − …` on the small Lorentz cone.
pub(crate) fn lorentz_det(x: &[f64]) -> f64 {
    x[0] * x[0] - x[1..].iter().map(|c| c * c).sum::<f64>()
}

/// `θ_n(t, v) = (t v_1, …, t v_{n−1}, t(1 − |v|))`.
pub fn tensor_chart(t: f64, v: &[f64]) -> Vec<f64> {
    let mut y: Vec<f64> = v.iter().map(|vi| t * vi).collect();
    y.push(t * (1.0 - v.iter().sum::<f64>()));
    y
}

/// Inverse of [`tensor_chart`].
pub fn tensor_chart_inverse(y: &[f64]) -> (f64, Vec<f64>) {
    let t: f64 = y.iter().sum();
    (t, y[..y.len() - 1].iter().map(|c| c / t).collect())
}

/// `ι(x, v) = (x, −Δ(x)^{1/2} v)` from `Ω_{n−p} × 𝔹^p` to `Ω_n`.
pub fn lorentz_chart(x: &[f64], v: &[f64]) -> Vec<f64> {
    let s = lorentz_det(x).sqrt();
    let mut y = x.to_vec();
    y.extend(v.iter().map(|c| -s * c));
    y
}

/// Inverse of [`lorentz_chart`] for a split after `q` coordinates.
pub fn lorentz_chart_inverse(y: &[f64], q: usize) -> (Vec<f64>, Vec<f64>) {
    let s = lorentz_det(&y[..q]).sqrt();
    (y[..q].to_vec(), y[q..].iter().map(|c| -c / s).collect())
}

/// Pulls a function on the big cone back to `Ω₁ × X`.
pub fn pullback<'a, F>(spec: &SboSpec, f: F) -> impl Fn(&[f64], &[f64]) -> Complex64 + Sync + 'a
where
    F: Fn(&[f64]) -> Complex64 + Sync + 'a,
{
    let tensor = matches!(spec.geometry, Geometry::TensorSimplex { .. });
    move |x: &[f64], v: &[f64]| if tensor { f(&tensor_chart(x[0], v)) } else { f(&lorentz_chart(x, v)) }
}

/// Normalized rule on `S^{p−1}` (`p ≥ 2`) built from a ball rule on
/// `𝔹^{p−1}` and the two hemispheres; exact on polynomials of degree
/// `< 2·npts`.
pub fn sphere_rule(p: usize, npts: usize) -> Result<(Vec<Vec<f64>>, Vec<f64>), SboError> {
    if p < 2 {
        return Err(SboError::InvalidParameter("sphere rule needs p ≥ 2".into()));
    }
    let rule = ball_rule(p - 1, 0.0, npts).map_err(inner)?;
    let total: f64 = 2.0 * rule.weights.iter().sum::<f64>();
    let mut nodes = Vec::with_capacity(2 * rule.len());
    let mut weights = Vec::with_capacity(2 * rule.len());
    for (w, wt) in rule.nodes.iter().zip(&rule.weights) {
        let h = (1.0 - w.iter().map(|c| c * c).sum::<f64>()).max(0.0).sqrt();
        for sign in [1.0, -1.0] {
            let mut u = w.clone();
            u.push(sign * h);
            nodes.push(u);
            weights.push(wt / total);
        }
    }
    Ok((nodes, weights))
}

/// `max |a_i − b_i| / max(max |b_i|, floor)`.
pub(crate) fn scaled_defect(a: &[Complex64], b: &[Complex64], floor: f64) -> f64 {
    let scale = b.iter().fold(floor, |m, z| m.max(z.norm()));
    let diff = a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// `max |a_i − b_i| / max |b_i|` (absolute when `b` vanishes).
pub fn relative_defect(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let diff = a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}
