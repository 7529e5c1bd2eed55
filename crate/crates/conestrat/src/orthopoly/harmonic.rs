//! Harmonic polynomials on `ℝ^p` and their reproducing kernels.

use super::{inflated_gegenbauer, OrthoError};
use crate::polyalg::{int, linalg, rat, MultiPoly, Rational};
use num_traits::Zero;

/// All exponent vectors of length `nvars` and total degree `deg`, in
/// increasing lexicographic order.
pub(crate) fn homogeneous_exponents(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    fn go(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for d in 0..=deg {
            prefix.push(d);
            go(nvars, deg - d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(vec![]);
        }
        return out;
    }
    go(nvars, deg, &mut Vec::new(), &mut out);
    out
}

fn binom(n: i64, k: i64) -> usize {
    if k < 0 || n < k {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// `dim H^p_n = C(n+p−1, p−1) − C(n+p−3, p−1)`.
pub fn harmonic_dimension(p: usize, n: u32) -> usize {
    let (p, n) = (p as i64, i64::from(n));
    binom(n + p - 1, p - 1) - binom(n + p - 3, p - 1)
}

/// Basis of the harmonic homogeneous polynomials of degree `n` in `p`
/// variables: the exact kernel of the Laplacian on degree-`n` forms.
///
/// Each element is monic in its lexicographically largest monomial, and the
/// list is sorted by that monomial in decreasing order.
pub fn harmonic_basis(p: usize, n: u32) -> Result<Vec<MultiPoly>, OrthoError> {
    if p < 2 {
        return Err(OrthoError::InvalidParameter("harmonic basis needs p ≥ 2".into()));
    }
    let cols = homogeneous_exponents(p, n);
    let vars: Vec<usize> = (0..p).collect();
    let rows_idx = if n >= 2 { homogeneous_exponents(p, n - 2) } else { Vec::new() };
    let mut rows = vec![vec![Rational::zero(); cols.len()]; rows_idx.len()];
    for (c, e) in cols.iter().enumerate() {
        let lap = MultiPoly::monomial(p, e.clone(), int(1)).laplacian(&vars);
        for (re, coef) in lap.terms() {
            let r = rows_idx.binary_search(re).expect("degree n−2 monomial");
            rows[r][c] = coef.clone();
        }
    }
    let mut basis: Vec<(Vec<u32>, MultiPoly)> = linalg::nullspace(&rows, cols.len())
        .into_iter()
        .map(|v| {
            let lead = cols[v.iter().rposition(|x| !x.is_zero()).expect("nonzero")].clone();
            let poly = MultiPoly::from_terms(p, cols.iter().cloned().zip(v)).expect("arity");
            (lead, poly)
        })
        .collect();
    basis.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(basis.into_iter().map(|(_, q)| q).collect())
}

/// Reproducing kernel of `H^p_n` for the normalized surface measure,
/// `K_n(x,y) = (2n+p−2)/(p−2) ‖x‖ⁿ‖y‖ⁿ C_n^{(p−2)/2}(⟨x,y⟩/(‖x‖‖y‖))`,
/// evaluated through the inflated Gegenbauer polynomial so that it is
/// defined at the origin.
pub fn harmonic_kernel(p: usize, n: u32, x: &[f64], y: &[f64]) -> Result<f64, OrthoError> {
    if p < 3 {
        return Err(OrthoError::InvalidParameter("kernel formula needs p ≥ 3".into()));
    }
    if x.len() != p || y.len() != p {
        return Err(OrthoError::InvalidParameter("point dimension differs from p".into()));
    }
    let alpha = rat(p as i64 - 2, 2);
    let ic = inflated_gegenbauer(n, &alpha).to_f64();
    let nx: f64 = x.iter().map(|v| v * v).sum();
    let ny: f64 = y.iter().map(|v| v * v).sum();
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let c = (2.0 * f64::from(n) + p as f64 - 2.0) / (p as f64 - 2.0);
    Ok(c * ic.eval(&[nx * ny, dot]))
}
