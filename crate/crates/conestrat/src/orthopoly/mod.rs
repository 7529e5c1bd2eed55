//! Classical and multivariate orthogonal polynomials, hypergeometric series,
//! harmonic polynomial bases and the coefficient families built from them.

mod classical;
mod harmonic;
mod hypergeometric;
mod integral;
mod multivariate;

pub use classical::{
    gegenbauer, gegenbauer_eval, gegenbauer_norm2, homogenized_jacobi, inflated_gegenbauer, jacobi_eval, jacobi_norm2,
    jacobi_poly, juhl_coefficients, juhl_symbol, rankin_cohen_coefficients, rankin_cohen_symbol,
};
pub use harmonic::{harmonic_basis, harmonic_dimension, harmonic_kernel};
pub use hypergeometric::{conf_0f1, hyper_pfq, hyper_pfq_complex, kummer_1f1, kummer_1f1_complex, pochhammer};
pub use integral::{gegenbauer_fourier_pair, kummer_integral_pair, IntegralPair};
pub use multivariate::{
    ball_basis, ball_factorization_residual, ball_mixed_basis, multi_indices, simplex_basis, simplex_basis_dunklxu,
    simplex_factorization_residual, MixedIndex,
};

use statrs::function::gamma::{gamma, ln_gamma};
use thiserror::Error;

/// Errors raised by special-function evaluators and basis constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrthoError {
    /// A lower parameter of a hypergeometric series is a non-positive integer.
    #[error("hypergeometric parameter pole at b = {0}")]
    Pole(f64),
    /// The series failed to reach the requested tolerance.
    #[error("hypergeometric series did not converge after {0} terms")]
    NonConvergence(usize),
    /// A parameter lies outside the admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Weight functions for which orthogonal bases and quadrature rules exist.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightSpec {
    /// `(1−v)^α (1+v)^β` on `(−1, 1)`.
    Interval {
        /// Exponent at `v = 1`.
        alpha: f64,
        /// Exponent at `v = −1`.
        beta: f64,
    },
    /// `x^a e^{−x}` on `(0, ∞)`.
    HalfLine {
        /// Power of `x`.
        a: f64,
    },
    /// `(1−|v|)^{λ_{n+1}−1} ∏ v_i^{λ_i−1}` on the open simplex `D_n`.
    Simplex {
        /// `(λ_1, …, λ_{n+1})`.
        lambda: Vec<f64>,
    },
    /// `2^{−p/2}(1−‖v‖²)^{α−1/2}` on the open unit ball of `ℝ^p`.
    Ball {
        /// Ball parameter.
        alpha: f64,
        /// Dimension.
        p: usize,
    },
}

impl WeightSpec {
    /// Checks that the weight is integrable.
    pub fn validate(&self) -> Result<(), OrthoError> {
        let ok = match self {
            WeightSpec::Interval { alpha, beta } => *alpha > -1.0 && *beta > -1.0,
            WeightSpec::HalfLine { a } => *a > -1.0,
            WeightSpec::Simplex { lambda } => lambda.len() >= 2 && lambda.iter().all(|l| *l > 0.0),
            WeightSpec::Ball { alpha, p } => *alpha > -0.5 && *p >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(OrthoError::InvalidParameter(format!("{self:?}")))
        }
    }

    /// Total mass of the weight, in closed form.
    pub fn total_mass(&self) -> f64 {
        match self {
            WeightSpec::Interval { alpha, beta } => 2f64.powf(alpha + beta + 1.0) * beta_fn(alpha + 1.0, beta + 1.0),
            WeightSpec::HalfLine { a } => gamma(a + 1.0),
            WeightSpec::Simplex { lambda } => {
                let s: f64 = lambda.iter().sum();
                (lambda.iter().map(|l| ln_gamma(*l)).sum::<f64>() - ln_gamma(s)).exp()
            }
            WeightSpec::Ball { alpha, p } => {
                let p = *p as f64;
                let pi = std::f64::consts::PI;
                2f64.powf(-p / 2.0) * pi.powf(p / 2.0) * (ln_gamma(alpha + 0.5) - ln_gamma(alpha + 0.5 + p / 2.0)).exp()
            }
        }
    }

    /// Number of coordinates of a point of the domain.
    pub fn dim(&self) -> usize {
        match self {
            WeightSpec::Interval { .. } | WeightSpec::HalfLine { .. } => 1,
            WeightSpec::Simplex { lambda } => lambda.len() - 1,
            WeightSpec::Ball { p, .. } => *p,
        }
    }

    /// Evaluates the weight density at a point of the open domain.
    pub fn density(&self, v: &[f64]) -> f64 {
        match self {
            WeightSpec::Interval { alpha, beta } => (1.0 - v[0]).powf(*alpha) * (1.0 + v[0]).powf(*beta),
            WeightSpec::HalfLine { a } => v[0].powf(*a) * (-v[0]).exp(),
            WeightSpec::Simplex { lambda } => {
                let n = lambda.len() - 1;
                let s: f64 = v.iter().sum();
                let mut w = (1.0 - s).powf(lambda[n] - 1.0);
                for i in 0..n {
                    w *= v[i].powf(lambda[i] - 1.0);
                }
                w
            }
            WeightSpec::Ball { alpha, p } => {
                let r2: f64 = v.iter().map(|x| x * x).sum();
                2f64.powf(-(*p as f64) / 2.0) * (1.0 - r2).powf(alpha - 0.5)
            }
        }
    }
}

/// Euler Beta function `B(a, b)` for positive arguments.
pub fn beta_fn(a: f64, b: f64) -> f64 {
    if a + b < 150.0 {
        gamma(a) * gamma(b) / gamma(a + b)
    } else {
        ln_beta(a, b).exp()
    }
}

/// `ln B(a, b)` for positive arguments.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}
