//! Second-order operators on the simplex and the ball whose polynomial
//! eigenspaces are the orthogonal families of [`crate::orthopoly`].

use super::OperatorError;
use crate::orthopoly::{ball_basis, multi_indices, simplex_basis};
use crate::polyalg::{int, MultiPoly, Rational};

/// `Σ v_i(1−v_i)∂_i² − 2Σ_{i<j} v_iv_j∂_i∂_j + Σ(λ_i − |Λ|v_i)∂_i` on
/// `D_{n−1}`, where `Λ = (λ_1, …, λ_n)` and `p` has `n−1` variables.
pub fn simplex_pde_apply(lambda: &[Rational], p: &MultiPoly) -> Result<MultiPoly, OperatorError> {
    let n = lambda.len();
    if n < 2 || p.nvars() != n - 1 {
        return Err(OperatorError::OutsideClass(format!("expected {} variables", n.saturating_sub(1))));
    }
    Ok(simplex_operator_on(lambda, p, 0))
}

/// The simplex operator acting on variables `offset..offset+n−1` of `p`.
pub(crate) fn simplex_operator_on(lambda: &[Rational], p: &MultiPoly, offset: usize) -> MultiPoly {
    let nv = p.nvars();
    let m = lambda.len() - 1;
    let total: Rational = lambda.iter().sum();
    let one = MultiPoly::one(nv);
    let mut out = MultiPoly::zero(nv);
    for i in 0..m {
        let vi = MultiPoly::var(nv, offset + i);
        let di = p.derivative(offset + i);
        out = &out + &(&(&vi * &(&one - &vi)) * &di.derivative(offset + i));
        out = &out + &(&(&MultiPoly::constant(nv, lambda[i].clone()) - &vi.scale(&total)) * &di);
        for j in i + 1..m {
            let vj = MultiPoly::var(nv, offset + j);
            out = &out - &(&(&vi * &vj).scale(&int(2)) * &di.derivative(offset + j));
        }
    }
    out
}

/// `simplex_pde_apply(Λ, P) + k(k+|Λ|−1)P`.
pub fn simplex_eigen_residual(lambda: &[Rational], k: u32, p: &MultiPoly) -> Result<MultiPoly, OperatorError> {
    let total: Rational = lambda.iter().sum();
    let kq = int(i64::from(k));
    let ev = &kq * (&kq + &total - int(1));
    Ok(&simplex_pde_apply(lambda, p)? + &p.scale(&ev))
}

/// True iff every degree-`k` element of the simplex basis on `D_{n−1}` is an
/// exact eigenfunction with eigenvalue `−k(k+|Λ|−1)`.
pub fn simplex_eigencheck(lambda: &[Rational], k: u32) -> Result<bool, OperatorError> {
    let n = lambda.len();
    if n < 2 {
        return Err(OperatorError::InvalidParameter("need at least two parameters".into()));
    }
    for idx in multi_indices(n - 1, k) {
        let r = simplex_basis(n - 1, lambda, &idx).map_err(|e| OperatorError::InvalidParameter(e.to_string()))?;
        if !simplex_eigen_residual(lambda, k, &r)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ∂_i²f − Σ∂_i(v_i[(2α−1)f + Σ_j v_j∂_jf])` on `𝔹^p`.
pub fn ball_pde_apply(alpha: &Rational, p: usize, f: &MultiPoly) -> Result<MultiPoly, OperatorError> {
    if f.nvars() != p {
        return Err(OperatorError::OutsideClass(format!("expected {p} variables")));
    }
    let vars: Vec<usize> = (0..p).collect();
    let inner = &f.scale(&(alpha * int(2) - int(1))) + &f.euler(&vars);
    let mut out = f.laplacian(&vars);
    for i in 0..p {
        out = &out - &(&MultiPoly::var(p, i) * &inner).derivative(i);
    }
    Ok(out)
}

/// `ball_pde_apply(α, p, P) + (k+p)(k+2α−1)P`.
pub fn ball_eigen_residual(alpha: &Rational, p: usize, k: u32, f: &MultiPoly) -> Result<MultiPoly, OperatorError> {
    let kq = int(i64::from(k));
    let ev = (&kq + int(p as i64)) * (&kq + alpha * int(2) - int(1));
    Ok(&ball_pde_apply(alpha, p, f)? + &f.scale(&ev))
}

/// True iff every degree-`k` element of the ball basis satisfies the ball
/// equation with eigenvalue `(k+p)(k+2α−1)` exactly.
pub fn ball_eigencheck(alpha: &Rational, p: usize, k: u32) -> Result<bool, OperatorError> {
    for idx in multi_indices(p, k) {
        let b = ball_basis(p, alpha, &idx).map_err(|e| OperatorError::InvalidParameter(e.to_string()))?;
        if !ball_eigen_residual(alpha, p, k, &b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
