//! Bessel operators and the stratified differential-operator identities,
//! applied exactly on [`PowPolyFunction`], plus the derived Lie algebra
//! action and the rank-one Hankel transform.

mod bessel;
mod hankel;
mod lie;
mod pde;
mod strat;

pub use bessel::{
    bessel_apply, bessel_generic, bessel_shift_identity_check, inverse_numerator, structure_coefficient, BesselAlgebra,
    FunctionClass,
};
pub use hankel::{conf_0f1_negative, hankel_rank1, HankelGrid, HankelOutput};
pub use lie::{lie_action, LieElement, PhasedFunction};
pub use pde::{
    ball_eigen_residual, ball_eigencheck, ball_pde_apply, simplex_eigen_residual, simplex_eigencheck, simplex_pde_apply,
};
pub use strat::{
    fd_bessel_lorentz, fd_bessel_tensor, lorentz_chart_base, strat_bessel_lorentz, strat_bessel_lorentz_chain,
    strat_bessel_tensor, strat_bessel_tensor_chain, tensor_chart_base,
};

use thiserror::Error;

use crate::polyalg::{PolyError, Rational};

/// Errors raised by operator evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    /// The function has the wrong arity or base for the operator.
    #[error("function outside the operator class: {0}")]
    OutsideClass(String),
    /// Operator parameters are out of range.
    #[error("invalid operator parameters: {0}")]
    InvalidParameter(String),
    /// The requested combination is not supported.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Underlying polynomial failure.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Differential operator families with rational parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum DiffOperatorSpec {
    /// `t∂² + λ∂` on the half-line (variable 0).
    BesselRank1(Rational),
    /// Vector-valued Bessel operator `P(∂)x + λ∂` of Lorentz(n) (variables `0..n`).
    BesselLorentz(Rational, usize),
    /// `Σ_i (x_i∂_i² + λ_i∂_i)` on `ℝ₊^n`.
    BesselTensorSum(Vec<Rational>),
    /// Simplex operator on `D_{n−1}` with `Λ = (λ_1, …, λ_n)`.
    SimplexPDE(Vec<Rational>),
    /// Ball operator on `𝔹^p` with parameter `α`.
    BallPDE(Rational, usize),
    /// Stratified tensor Bessel operator in `(t, v)`, `v ∈ D_{n−1}`.
    StratBesselTensor(Vec<Rational>),
    /// `V_{n−p}`-component of the Lorentz(n) Bessel operator in `(x, v)`.
    StratBesselLorentz(Rational, usize, usize),
}
