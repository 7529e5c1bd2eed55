//! Jacobi and Gegenbauer polynomials with exact rational coefficients, their
//! norms, and the Juhl and Rankin–Cohen coefficient families.

use num_traits::Zero;
use statrs::function::gamma::ln_gamma;

use super::{ln_beta, OrthoError};
use crate::polyalg::{binomial_q, factorial_q, int, pochhammer_q, rat, MultiPoly, Rational};

/// Jacobi polynomial `P_n^{α,β}` in one variable:
/// `Σ_s C(n+α, n−s) C(n+β, s) ((x−1)/2)^s ((x+1)/2)^{n−s}`.
pub fn jacobi_poly(n: u32, alpha: &Rational, beta: &Rational) -> MultiPoly {
    homogenized_jacobi(n, alpha, beta)
        .compose(&[MultiPoly::from_coeffs(&[rat(1, 2), rat(1, 2)]), MultiPoly::from_coeffs(&[rat(1, 2), rat(-1, 2)])])
        .expect("arity two")
}

/// Homogenized Jacobi polynomial `(a+b)^n P_n^{α,β}((a−b)/(a+b))` as a
/// polynomial in `(a, b)`: `Σ_s C(n+α, n−s) C(n+β, s) (−b)^s a^{n−s}`.
pub fn homogenized_jacobi(n: u32, alpha: &Rational, beta: &Rational) -> MultiPoly {
    let mut p = MultiPoly::zero(2);
    let na = int(i64::from(n)) + alpha;
    let nb = int(i64::from(n)) + beta;
    for s in 0..=n {
        let mut c = binomial_q(&na, n - s) * binomial_q(&nb, s);
        if s % 2 == 1 {
            c = -c;
        }
        p.add_term(vec![n - s, s], c);
    }
    p
}

/// `P_n^{α,β}(x)` in floating point by the three-term recurrence.
pub fn jacobi_eval(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let ab = alpha + beta;
    let mut p0 = 1.0;
    let mut p1 = 0.5 * ((ab + 2.0) * x + alpha - beta);
    for k in 2..=n {
        let k = f64::from(k);
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (c - 2.0) * (c - 1.0) * c;
        let a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
        let p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `∫_{−1}^{1} P_n^{α,β}(v)² (1−v)^α (1+v)^β dv`.
pub fn jacobi_norm2(n: u32, alpha: f64, beta: f64) -> f64 {
    let ab = alpha + beta;
    if n == 0 {
        return ((ab + 1.0) * std::f64::consts::LN_2 + ln_beta(alpha + 1.0, beta + 1.0)).exp();
    }
    let nf = f64::from(n);
    let ln = (ab + 1.0) * std::f64::consts::LN_2 - (2.0 * nf + ab + 1.0).ln()
        + ln_gamma(nf + alpha + 1.0)
        + ln_gamma(nf + beta + 1.0)
        - ln_gamma(nf + ab + 1.0)
        - ln_gamma(nf + 1.0);
    ln.exp()
}

/// Gegenbauer polynomial `C_n^α = (2α)_n/(α+½)_n · P_n^{α−½, α−½}`.
pub fn gegenbauer(n: u32, alpha: &Rational) -> MultiPoly {
    let half = rat(1, 2);
    let denom = pochhammer_q(&(alpha + &half), n);
    if denom.is_zero() {
        return gegenbauer_explicit(n, alpha);
    }
    let c = pochhammer_q(&(alpha * int(2)), n) / denom;
    let e = alpha - &half;
    jacobi_poly(n, &e, &e).scale(&c)
}

/// `Σ_k (−1)^k (α)_{n−k}/(k!(n−2k)!) (2x)^{n−2k}`.
fn gegenbauer_explicit(n: u32, alpha: &Rational) -> MultiPoly {
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    for k in 0..=n / 2 {
        let mut c = pochhammer_q(alpha, n - k) / (factorial_q(k) * factorial_q(n - 2 * k))
            * num_traits::pow(int(2), (n - 2 * k) as usize);
        if k % 2 == 1 {
            c = -c;
        }
        coeffs[(n - 2 * k) as usize] = c;
    }
    MultiPoly::from_coeffs(&coeffs)
}

/// `C_n^α(x)` in floating point by the three-term recurrence.
pub fn gegenbauer_eval(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut c0 = 1.0;
    let mut c1 = 2.0 * alpha * x;
    for k in 2..=n {
        let k = f64::from(k);
        let c2 = (2.0 * x * (k + alpha - 1.0) * c1 - (k + 2.0 * alpha - 2.0) * c0) / k;
        c0 = c1;
        c1 = c2;
    }
    c1
}

/// `∫_{−1}^{1} C_n^α(v)² (1−v²)^{α−½} dv = π 2^{1−2α} Γ(n+2α) / (n!(n+α)Γ(α)²)`.
pub fn gegenbauer_norm2(n: u32, alpha: f64) -> f64 {
    let nf = f64::from(n);
    let ln = std::f64::consts::PI.ln() + (1.0 - 2.0 * alpha) * std::f64::consts::LN_2 + ln_gamma(nf + 2.0 * alpha)
        - ln_gamma(nf + 1.0)
        - (nf + alpha).ln()
        - 2.0 * ln_gamma(alpha);
    ln.exp()
}

/// Inflated Gegenbauer polynomial `I_l C_l^α(x, y) = x^{l/2} C_l^α(y/x^{1/2})`,
/// a polynomial in `(x, y)` since `C_l^α` has the parity of `l`.
pub fn inflated_gegenbauer(l: u32, alpha: &Rational) -> MultiPoly {
    let c = gegenbauer(l, alpha);
    let mut out = MultiPoly::zero(2);
    for (e, coef) in c.terms() {
        let m = e[0];
        debug_assert_eq!((l - m) % 2, 0, "Gegenbauer parity");
        out.add_term(vec![(l - m) / 2, m], coef.clone());
    }
    out
}

/// Juhl coefficients `a_k(l, α) = (−1)^k 2^{l−2k} Γ(α+l−k) / (Γ(α) k! (l−2k)!)`
/// for `k = 0..⌊l/2⌋`, with the Gamma ratio taken as the rising factorial
/// `(α)_{l−k}`.
pub fn juhl_coefficients(l: u32, alpha: &Rational) -> Result<Vec<Rational>, OrthoError> {
    if alpha.is_zero() || (alpha < &Rational::zero() && alpha.is_integer()) {
        return Err(OrthoError::InvalidParameter(format!("Γ(α) singular at α = {alpha}")));
    }
    Ok((0..=l / 2)
        .map(|k| {
            let gamma_ratio = pochhammer_q(alpha, l - k);
            let c =
                num_traits::pow(int(2), (l - 2 * k) as usize) * gamma_ratio / (factorial_q(k) * factorial_q(l - 2 * k));
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect())
}

/// Juhl symbol `Σ_k a_k(l, α) y^{l−2k} q^k` as a polynomial in `(q, y)`.
pub fn juhl_symbol(l: u32, alpha: &Rational) -> Result<MultiPoly, OrthoError> {
    let a = juhl_coefficients(l, alpha)?;
    let mut p = MultiPoly::zero(2);
    for (k, c) in a.into_iter().enumerate() {
        let k = k as u32;
        p.add_term(vec![k, l - 2 * k], c);
    }
    Ok(p)
}

/// Rankin–Cohen coefficients
/// `c_j = (−1)^j (λ′+l−j)_j (λ″+j)_{l−j} / (j!(l−j)!)`, `j = 0..l`.
pub fn rankin_cohen_coefficients(lp: &Rational, lpp: &Rational, l: u32) -> Vec<Rational> {
    (0..=l)
        .map(|j| {
            let c = pochhammer_q(&(lp + int(i64::from(l - j))), j) * pochhammer_q(&(lpp + int(i64::from(j))), l - j)
                / (factorial_q(j) * factorial_q(l - j));
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Generating polynomial `Σ_j c_j x^{l−j} y^j` of the Rankin–Cohen
/// coefficients, in `(x, y)`.
pub fn rankin_cohen_symbol(lp: &Rational, lpp: &Rational, l: u32) -> MultiPoly {
    let mut p = MultiPoly::zero(2);
    for (j, c) in rankin_cohen_coefficients(lp, lpp, l).into_iter().enumerate() {
        p.add_term(vec![l - j as u32, j as u32], c);
    }
    p
}
