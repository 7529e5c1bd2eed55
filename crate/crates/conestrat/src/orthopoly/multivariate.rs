//! Orthogonal polynomial bases on the simplex `D_n` and the unit ball `𝔹^p`.

use super::harmonic::homogeneous_exponents;
use super::{gegenbauer, harmonic_basis, homogenized_jacobi, inflated_gegenbauer, jacobi_poly, OrthoError};
use crate::polyalg::{int, rat, MultiPoly, Rational};

/// All multi-indices of length `len` with total degree `k`, in decreasing
/// lexicographic order.
pub fn multi_indices(len: usize, k: u32) -> Vec<Vec<u32>> {
    let mut v = homogeneous_exponents(len, k);
    v.reverse();
    v
}

fn sum_vars(nvars: usize, upto: usize) -> MultiPoly {
    let mut s = MultiPoly::zero(nvars);
    for i in 0..upto {
        s = &s + &MultiPoly::var(nvars, i);
    }
    s
}

fn check_simplex(n: usize, lambda: &[Rational], k: &[u32]) -> Result<(), OrthoError> {
    if n == 0 || lambda.len() != n + 1 || k.len() != n {
        return Err(OrthoError::InvalidParameter(format!("D_{n} needs {} parameters and {n} degrees", n + 1)));
    }
    if lambda.iter().any(|l| l <= &int(0)) {
        return Err(OrthoError::InvalidParameter("simplex parameters must be positive".into()));
    }
    Ok(())
}

/// The family `⁽ⁿ⁾R_k^Λ` on `D_n`:
/// `P_{k_n}^{λ_{n+1}−1, α_n−1}(2|x|−1) ∏_{i<n} (|x^{(i)}|+x_{i+1})^{k_i}
/// P_{k_i}^{λ_{i+1}−1, α_i−1}((|x^{(i)}|−x_{i+1})/(|x^{(i)}|+x_{i+1}))`,
/// with `α_i = |Λ^{(i)}| + 2|k^{(i−1)}|`.
pub fn simplex_basis(n: usize, lambda: &[Rational], k: &[u32]) -> Result<MultiPoly, OrthoError> {
    check_simplex(n, lambda, k)?;
    let alpha_i = |i: usize| -> Rational {
        let lam: Rational = lambda[..i].iter().sum();
        let kk: u32 = k[..i - 1].iter().sum();
        lam + int(2 * i64::from(kk))
    };
    let one = MultiPoly::one(n);
    let total = sum_vars(n, n);
    let mut out = homogenized_jacobi(k[n - 1], &(&lambda[n] - int(1)), &(alpha_i(n) - int(1)))
        .compose(&[total.clone(), &one - &total])
        .expect("arity two");
    for i in 1..n {
        let h = homogenized_jacobi(k[i - 1], &(&lambda[i] - int(1)), &(alpha_i(i) - int(1)));
        let f = h.compose(&[sum_vars(n, i), MultiPoly::var(n, i)]).expect("arity two");
        out = &out * &f;
    }
    Ok(out)
}

/// The simplex family `∏_j s_j^{k_j} P_{k_j}^{a_j, b_j}(2x_j/s_j − 1)` with
/// `s_j = 1 − |x^{(j−1)}|`, `a_j = 2(k_{j+1}+…+k_n) + λ_{j+1}+…+λ_{n+1} − 1`
/// and `b_j = λ_j − 1`.
pub fn simplex_basis_dunklxu(n: usize, lambda: &[Rational], k: &[u32]) -> Result<MultiPoly, OrthoError> {
    check_simplex(n, lambda, k)?;
    let one = MultiPoly::one(n);
    let mut out = one.clone();
    for j in 0..n {
        let tail_k: u32 = k[j + 1..].iter().sum();
        let tail_l: Rational = lambda[j + 1..].iter().sum();
        let a = int(2 * i64::from(tail_k)) + tail_l - int(1);
        let b = &lambda[j] - int(1);
        let h = homogenized_jacobi(k[j], &a, &b);
        let rest = &one - &sum_vars(n, j + 1);
        let f = h.compose(&[MultiPoly::var(n, j), rest]).expect("arity two");
        out = &out * &f;
    }
    Ok(out)
}

/// The ball family `⁽ᵖ⁾P_k^α(v) = ∏_j I_{k_j}C_{k_j}^{α+|k_{(j+1)}|+(p−j)/2}(1−‖v^{(j−1)}‖², v_j)`,
/// orthogonal for `dμ_α`.
pub fn ball_basis(p: usize, alpha: &Rational, k: &[u32]) -> Result<MultiPoly, OrthoError> {
    if p == 0 || k.len() != p {
        return Err(OrthoError::InvalidParameter(format!("ball basis needs {p} degrees")));
    }
    if alpha <= &rat(-1, 2) {
        return Err(OrthoError::InvalidParameter("ball parameter must exceed −1/2".into()));
    }
    let one = MultiPoly::one(p);
    let mut out = one.clone();
    let mut radial = one.clone();
    for j in 0..p {
        let tail: u32 = k[j + 1..].iter().sum();
        let a = alpha + int(i64::from(tail)) + rat((p - j - 1) as i64, 2);
        let ic = inflated_gegenbauer(k[j], &a);
        let xj = MultiPoly::var(p, j);
        let f = ic.compose(&[radial.clone(), xj.clone()]).expect("arity two");
        out = &out * &f;
        radial = &radial - &(&xj * &xj);
    }
    Ok(out)
}

/// Index of an element of the mixed ball basis: total degree `l`, radial
/// degree `j` and the position `kappa` inside the harmonic basis of degree
/// `l − 2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedIndex {
    /// Total degree.
    pub l: u32,
    /// Radial degree (`2j ≤ l`).
    pub j: u32,
    /// Position in the harmonic basis of degree `l − 2j`.
    pub kappa: usize,
}

/// Mixed ball basis element
/// `P_{j,κ}(v) = P_j^{λ−n/2, l−2j+(p−2)/2}(2‖v‖²−1) · Y_κ^{l−2j}(v)`,
/// orthogonal for `(1−‖v‖²)^{λ−n/2}dv`.
pub fn ball_mixed_basis(p: usize, lambda: &Rational, n: u32, idx: MixedIndex) -> Result<MultiPoly, OrthoError> {
    if p < 2 {
        return Err(OrthoError::InvalidParameter("mixed basis needs p ≥ 2".into()));
    }
    if 2 * idx.j > idx.l {
        return Err(OrthoError::InvalidParameter("radial degree exceeds l/2".into()));
    }
    let m = idx.l - 2 * idx.j;
    let harm = harmonic_basis(p, m)?;
    let y = harm
        .get(idx.kappa)
        .ok_or_else(|| OrthoError::InvalidParameter(format!("harmonic index {} out of range", idx.kappa)))?;
    let a = lambda - rat(i64::from(n), 2);
    let b = int(i64::from(m)) + rat(p as i64 - 2, 2);
    let jac = jacobi_poly(idx.j, &a, &b);
    let mut r2 = MultiPoly::zero(p);
    for i in 0..p {
        let xi = MultiPoly::var(p, i);
        r2 = &r2 + &(&xi * &xi);
    }
    let arg = &r2.scale(&int(2)) - &MultiPoly::one(p);
    let radial = jac.compose(&[arg]).expect("arity one");
    Ok(&radial * y)
}

/// `⁽ⁿ⁾R_k^Λ(φ(y,u)) − ⁽ⁿ⁻¹⁾R_{k̃}^{Λ̃}(y)·y_1^{k_1}·P_{k_1}^{λ_2−1,λ_1−1}(u)` as a
/// polynomial in `(y_1, …, y_{n−1}, u)`, where
/// `φ(y,u) = (y_1(1+u)/2, y_1(1−u)/2, y_2, …, y_{n−1})`,
/// `Λ̃ = (λ_1+λ_2+2k_1, λ_3, …)` and `k̃ = (k_2, …)`. Needs `n ≥ 2`.
pub fn simplex_factorization_residual(n: usize, lambda: &[Rational], k: &[u32]) -> Result<MultiPoly, OrthoError> {
    check_simplex(n, lambda, k)?;
    if n < 2 {
        return Err(OrthoError::InvalidParameter("the factorization needs n ≥ 2".into()));
    }
    let u = MultiPoly::var(n, n - 1);
    let one = MultiPoly::one(n);
    let y1 = MultiPoly::var(n, 0);
    let half = rat(1, 2);
    let mut subs = vec![(&y1 * &(&one + &u)).scale(&half), (&y1 * &(&one - &u)).scale(&half)];
    subs.extend((1..n - 1).map(|i| MultiPoly::var(n, i)));
    let lhs = simplex_basis(n, lambda, k)?.compose(&subs).expect("arity n");

    let mut lt = vec![&lambda[0] + &lambda[1] + int(2 * i64::from(k[0]))];
    lt.extend_from_slice(&lambda[2..]);
    let inner = simplex_basis(n - 1, &lt, &k[1..])?.shift_vars(n, 0);
    let jac = jacobi_poly(k[0], &(&lambda[1] - int(1)), &(&lambda[0] - int(1))).shift_vars(n, n - 1);
    let rhs = &(&inner * &jac) * &y1.pow(k[0]);
    Ok(&lhs - &rhs)
}

/// `⁽ᵖ⁾P_k^α(θ(x,u)) − ⁽ᵖ⁻¹⁾P_{k′}^{α+k_p+1/2}(x)(1−‖x‖²)^{k_p/2}C_{k_p}^α(u)`
/// with `θ(x,u) = (x, u(1−‖x‖²)^{1/2})`, written with an extra variable `s`
/// for `(1−‖x‖²)^{1/2}` and reduced modulo `s² = 1−‖x‖²`. The result is a
/// polynomial in `(x_1, …, x_{p−1}, u, s)` of degree at most one in `s`.
pub fn ball_factorization_residual(p: usize, alpha: &Rational, k: &[u32]) -> Result<MultiPoly, OrthoError> {
    if p < 2 || k.len() != p {
        return Err(OrthoError::InvalidParameter("the factorization needs p ≥ 2 and p degrees".into()));
    }
    let nv = p + 1;
    let u = MultiPoly::var(nv, p - 1);
    let s = MultiPoly::var(nv, p);
    let mut rad = MultiPoly::one(nv);
    for i in 0..p - 1 {
        let xi = MultiPoly::var(nv, i);
        rad = &rad - &(&xi * &xi);
    }
    let mut subs: Vec<MultiPoly> = (0..p - 1).map(|i| MultiPoly::var(nv, i)).collect();
    subs.push(&u * &s);
    let lhs = ball_basis(p, alpha, k)?.compose(&subs).expect("arity p");

    let kp = k[p - 1];
    let inner = ball_basis(p - 1, &(alpha + int(i64::from(kp)) + rat(1, 2)), &k[..p - 1])?.shift_vars(nv, 0);
    let c = gegenbauer(kp, alpha).shift_vars(nv, p - 1);
    let rhs = &(&inner * &c) * &s.pow(kp);
    let diff = &lhs - &rhs;
    diff.reduce_square(p, &rad).map_err(|e| OrthoError::InvalidParameter(e.to_string()))
}
