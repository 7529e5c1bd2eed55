//! Generalized hypergeometric series `pFq` by forward summation.

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use super::OrthoError;
use crate::polyalg::{int, rational_from_f64, rational_to_f64, Rational};

const MAX_TERMS: usize = 20_000;

/// Rising factorial `(a)_n` in floating point.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (a + f64::from(i)))
}

fn check_lower(b: &[f64]) -> Result<(), OrthoError> {
    for &bj in b {
        if bj <= 0.0 && bj == bj.round() {
            return Err(OrthoError::Pole(bj));
        }
    }
    Ok(())
}

/// `pFq(a; b; z)` for complex `z`, summed until the relative size of the
/// last terms drops below `tol`.
///
/// Polynomial cases (some `a_i` a non-positive integer) terminate exactly.
/// Divergent cases (`p > q + 1`, or `p = q + 1` with `|z| ≥ 1`) are rejected
/// unless the series terminates.
pub fn hyper_pfq_complex(a: &[f64], b: &[f64], z: Complex64, tol: f64) -> Result<Complex64, OrthoError> {
    check_lower(b)?;
    let terminating = a.iter().any(|&ai| ai <= 0.0 && ai == ai.round());
    if !terminating && (a.len() > b.len() + 1 || (a.len() == b.len() + 1 && z.norm() >= 1.0)) {
        return Err(OrthoError::NonConvergence(0));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut max_term: f64 = 1.0;
    let mut small_run = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let num: f64 = a.iter().map(|ai| ai + kf).product();
        let den: f64 = b.iter().map(|bj| bj + kf).product::<f64>() * (kf + 1.0);
        if num == 0.0 {
            return finish(a, b, z, tol, sum, max_term);
        }
        term *= z * (num / den);
        sum += term;
        max_term = max_term.max(term.norm());
        let ratio_decaying = (z.norm() * num.abs() / den.abs()) < 1.0;
        if term.norm() <= tol * sum.norm().max(f64::MIN_POSITIVE) && ratio_decaying {
            small_run += 1;
            if small_run >= 2 {
                return finish(a, b, z, tol, sum, max_term);
            }
        } else {
            small_run = 0;
        }
    }
    Err(OrthoError::NonConvergence(MAX_TERMS))
}

/// Accepts the floating-point sum unless cancellation between terms has
/// eaten more than three digits, in which case the series is re-summed
/// exactly over the rationals.
fn finish(
    a: &[f64],
    b: &[f64],
    z: Complex64,
    tol: f64,
    sum: Complex64,
    max_term: f64,
) -> Result<Complex64, OrthoError> {
    if max_term <= 1e3 * sum.norm() {
        Ok(sum)
    } else {
        hyper_pfq_exact(a, b, z, tol)
    }
}

fn cnorm(re: &Rational, im: &Rational) -> f64 {
    rational_to_f64(re).hypot(rational_to_f64(im))
}

/// Exact rational summation of the series at the (exactly representable)
/// floating-point parameters and argument.
fn hyper_pfq_exact(a: &[f64], b: &[f64], z: Complex64, tol: f64) -> Result<Complex64, OrthoError> {
    let aq: Vec<Rational> = a.iter().map(|v| rational_from_f64(*v)).collect();
    let bq: Vec<Rational> = b.iter().map(|v| rational_from_f64(*v)).collect();
    let (zr, zi) = (rational_from_f64(z.re), rational_from_f64(z.im));
    let (mut tr, mut ti) = (int(1), Rational::zero());
    let (mut sr, mut si) = (int(1), Rational::zero());
    let mut small_run = 0;
    for k in 0..MAX_TERMS {
        let kq = int(k as i64);
        let num: Rational = aq.iter().map(|ai| ai + &kq).product();
        if num.is_zero() {
            break;
        }
        let den: Rational = bq.iter().map(|bj| bj + &kq).product::<Rational>() * (&kq + int(1));
        let f = num / den;
        let nr = (&tr * &zr - &ti * &zi) * &f;
        let ni = (&tr * &zi + &ti * &zr) * &f;
        tr = nr;
        ti = ni;
        sr += &tr;
        si += &ti;
        let ratio = z.norm() * rational_to_f64(&f.abs());
        if cnorm(&tr, &ti) <= 1e-4 * tol * cnorm(&sr, &si).max(f64::MIN_POSITIVE) && ratio < 1.0 {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
        if k + 1 == MAX_TERMS {
            return Err(OrthoError::NonConvergence(MAX_TERMS));
        }
    }
    Ok(Complex64::new(rational_to_f64(&sr), rational_to_f64(&si)))
}

/// Real-argument version of [`hyper_pfq_complex`].
pub fn hyper_pfq(a: &[f64], b: &[f64], z: f64, tol: f64) -> Result<f64, OrthoError> {
    hyper_pfq_complex(a, b, Complex64::new(z, 0.0), tol).map(|c| c.re)
}

/// Kummer's confluent function `₁F₁(a; b; z)`.
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64, OrthoError> {
    hyper_pfq(&[a], &[b], z, 1e-16)
}

/// `₁F₁(a; b; z)` for complex `z`.
pub fn kummer_1f1_complex(a: f64, b: f64, z: Complex64) -> Result<Complex64, OrthoError> {
    hyper_pfq_complex(&[a], &[b], z, 1e-16)
}

/// `₀F₁(; b; z)`.
pub fn conf_0f1(b: f64, z: f64) -> Result<f64, OrthoError> {
    hyper_pfq(&[], &[b], z, 1e-16)
}
