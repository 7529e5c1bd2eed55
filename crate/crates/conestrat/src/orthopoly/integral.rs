//! Fourier-type integrals of Jacobi and Gegenbauer weights, evaluated both
//! by quadrature and in closed hypergeometric form.

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use super::{conf_0f1, gegenbauer_eval, jacobi_eval, kummer_1f1_complex, ln_beta, pochhammer, OrthoError};
use crate::quadrature::{gauss_jacobi_rule, integrate_complex, max_resolved_frequency};

/// Two evaluations of the same quantity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralPair {
    /// Left-hand side of the identity.
    pub lhs: Complex64,
    /// Right-hand side of the identity.
    pub rhs: Complex64,
}

impl IntegralPair {
    /// `|lhs − rhs| / max(|lhs|, floor)`.
    pub fn relative_defect(&self, floor: f64) -> f64 {
        (self.lhs - self.rhs).norm() / self.lhs.norm().max(floor)
    }
}

fn i_pow(l: u32) -> Complex64 {
    match l % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn nodes_for(x: f64, l: u32, npts: usize) -> Result<usize, OrthoError> {
    let need = npts.max(l as usize + 2);
    if x.abs() > max_resolved_frequency(need) {
        return Err(OrthoError::InvalidParameter(format!("frequency {x} not resolved by {need} nodes")));
    }
    Ok(need)
}

/// Both sides of
/// `C_{α,β} x^l e^{ix} ₁F₁(α+l, α+β+2l; −2ix)
///   = ∫_{−1}^{1} P_l^{α−1,β−1}(v) e^{ivx} (1−v)^{α−1}(1+v)^{β−1} dv`
/// with `C_{α,β} = 2^{α+β+l−1} i^l B(α+l, β+l) / l!`.
pub fn kummer_integral_pair(alpha: f64, beta: f64, l: u32, x: f64, npts: usize) -> Result<IntegralPair, OrthoError> {
    if alpha <= 0.0 || beta <= 0.0 {
        return Err(OrthoError::InvalidParameter("α, β must be positive".into()));
    }
    let lf = f64::from(l);
    let c = i_pow(l)
        * ((alpha + beta + lf - 1.0) * std::f64::consts::LN_2 + ln_beta(alpha + lf, beta + lf) - ln_gamma(lf + 1.0))
            .exp();
    let f = kummer_1f1_complex(alpha + lf, alpha + beta + 2.0 * lf, Complex64::new(0.0, -2.0 * x))?;
    let lhs = c * x.powi(l as i32) * Complex64::from_polar(1.0, x) * f;
    let rule = gauss_jacobi_rule(nodes_for(x, l, npts)?, alpha - 1.0, beta - 1.0)
        .map_err(|e| OrthoError::InvalidParameter(e.to_string()))?;
    let rhs =
        integrate_complex(|v| Complex64::from_polar(jacobi_eval(l, alpha - 1.0, beta - 1.0, v[0]), v[0] * x), &rule);
    Ok(IntegralPair { lhs, rhs })
}

/// Both sides of
/// `∫_{−1}^{1} C_l^ν(v)(1−v²)^{ν−½} e^{ixv} dv = c(l;ν) x^l ₀F₁(l+ν+1; −x²/4)`
/// with `c(l;ν) = i^l √π (2ν)_l Γ(ν+½) / (2^l l! Γ(l+ν+1))`.
pub fn gegenbauer_fourier_pair(nu: f64, l: u32, x: f64, npts: usize) -> Result<IntegralPair, OrthoError> {
    if nu <= 0.5 {
        return Err(OrthoError::InvalidParameter("ν must exceed 1/2".into()));
    }
    let lf = f64::from(l);
    let rule = gauss_jacobi_rule(nodes_for(x, l, npts)?, nu - 0.5, nu - 0.5)
        .map_err(|e| OrthoError::InvalidParameter(e.to_string()))?;
    let lhs = integrate_complex(|v| Complex64::from_polar(gegenbauer_eval(l, nu, v[0]), v[0] * x), &rule);
    let c = i_pow(l)
        * std::f64::consts::PI.sqrt()
        * pochhammer(2.0 * nu, l)
        * (ln_gamma(nu + 0.5) - lf * std::f64::consts::LN_2 - ln_gamma(lf + 1.0) - ln_gamma(lf + nu + 1.0)).exp();
    let rhs = c * x.powi(l as i32) * conf_0f1(lf + nu + 1.0, -x * x / 4.0)?;
    Ok(IntegralPair { lhs, rhs })
}
