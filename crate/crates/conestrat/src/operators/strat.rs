//! Bessel operators written in stratified coordinates, each with a closed
//! form, an exact chain-rule evaluation and a finite-difference evaluation.

use num_traits::{One, Zero};

use super::bessel::{bessel_generic, inverse_numerator, structure_coefficient, BesselAlgebra};
use super::pde::simplex_operator_on;
use super::OperatorError;
use crate::polyalg::{int, rat, rational_to_f64, MultiPoly, PowPolyFunction, Rational};

/// Base `t` (variable 0) for functions of `(t, v_1, …, v_{n−1})`.
pub fn tensor_chart_base(n: usize) -> MultiPoly {
    MultiPoly::var(n, 0)
}

/// Base `Δ₁(x) = x_0² − x_1² − … − x_{q−1}²` for functions of
/// `(x_0, …, x_{q−1}, v_1, …, v_p)` with `q = n − p`.
pub fn lorentz_chart_base(n: usize, p: usize) -> MultiPoly {
    BesselAlgebra::Lorentz(n - p).det_poly(n)
}

fn check_base(f: &PowPolyFunction, base: &MultiPoly) -> Result<(), OperatorError> {
    if f.base() != base {
        return Err(OperatorError::OutsideClass("unexpected base polynomial".into()));
    }
    Ok(())
}

/// `𝓑_Λ f = 𝓑^{(t)}_{|Λ|} f + t^{−1}[Σv_i(1−v_i)∂²_{v_i} − 2Σ_{i<j}v_iv_j∂²_{v_iv_j}
/// + Σ(λ_i − |Λ|v_i)∂_{v_i}] f` for `f(t, v)`, `v ∈ D_{n−1}`.
pub fn strat_bessel_tensor(lambda: &[Rational], f: &PowPolyFunction) -> Result<PowPolyFunction, OperatorError> {
    let n = lambda.len();
    if n < 2 {
        return Err(OperatorError::InvalidParameter("need n ≥ 2".into()));
    }
    check_base(f, &tensor_chart_base(n))?;
    let total: Rational = lambda.iter().sum();
    let radial = bessel_generic(&BesselAlgebra::Rank1Product(1), &[total], f)?.remove(0);
    let angular = f.map_polys(|p| simplex_operator_on(lambda, p, 1)).mul_base_pow(&-Rational::one());
    Ok(radial.add(&angular)?)
}

fn chain_components(
    alg: &BesselAlgebra,
    lambdas: &[Rational],
    xs: &[PowPolyFunction],
    jac: &[Vec<PowPolyFunction>],
    f: &PowPolyFunction,
    comps: usize,
) -> Result<Vec<PowPolyFunction>, OperatorError> {
    let n = alg.dim();
    let zero = PowPolyFunction::zero(f.base().clone());
    let d = |g: &PowPolyFunction, i: usize| -> Result<PowPolyFunction, OperatorError> {
        let mut acc = zero.clone();
        for (a, row) in jac.iter().enumerate() {
            if row[i].is_zero() {
                continue;
            }
            acc = acc.add(&row[i].mul(&g.derivative(a))?)?;
        }
        Ok(acc)
    };
    let g = alg.gram();
    let g2 = &g * &g;
    let first: Vec<PowPolyFunction> = (0..n).map(|i| d(f, i)).collect::<Result<_, _>>()?;
    let mut second = vec![vec![None; n]; n];
    for k in 0..n {
        for l in k..n {
            second[k][l] = Some(d(&first[l], k)?);
        }
    }
    let mut out = Vec::with_capacity(comps);
    for m in 0..comps {
        let mut acc = first[m].scale(&(&lambdas[m] / &g));
        for k in 0..n {
            for l in 0..n {
                let mut coef = zero.clone();
                for (q, xq) in xs.iter().enumerate() {
                    let c = structure_coefficient(alg, k, l, m, q);
                    if !c.is_zero() {
                        coef = coef.add(&xq.scale(&(c / &g2)))?;
                    }
                }
                if coef.is_zero() {
                    continue;
                }
                let dd: &PowPolyFunction = second[k.min(l)][k.max(l)].as_ref().expect("filled");
                acc = acc.add(&dd.mul(&coef)?)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// `Σ_i B_{λ_i}` on `ℝ₊^n` pulled back through `x_i = t v_i` (`i < n`),
/// `x_n = t(1 − |v|)`, evaluated by the exact chain rule.
pub fn strat_bessel_tensor_chain(lambda: &[Rational], f: &PowPolyFunction) -> Result<PowPolyFunction, OperatorError> {
    let n = lambda.len();
    if n < 2 {
        return Err(OperatorError::InvalidParameter("need n ≥ 2".into()));
    }
    let base = tensor_chart_base(n);
    check_base(f, &base)?;
    let t = MultiPoly::var(n, 0);
    let pp = |p: MultiPoly| PowPolyFunction::from_poly(base.clone(), p);
    let mut xs = Vec::with_capacity(n);
    let mut sum_v = MultiPoly::zero(n);
    for i in 0..n - 1 {
        let v = MultiPoly::var(n, i + 1);
        xs.push(pp(&t * &v));
        sum_v = &sum_v + &v;
    }
    xs.push(pp(&t * &(&MultiPoly::one(n) - &sum_v)));
    let mut jac = vec![vec![pp(MultiPoly::one(n)); n]];
    for j in 1..n {
        let vj = MultiPoly::var(n, j);
        let row = (0..n)
            .map(|i| {
                let delta = if i == j - 1 { MultiPoly::one(n) } else { MultiPoly::zero(n) };
                PowPolyFunction::new(base.clone(), -Rational::one(), &delta - &vj)
            })
            .collect();
        jac.push(row);
    }
    let comps = chain_components(&BesselAlgebra::Rank1Product(n), lambda, &xs, &jac, f, n)?;
    let mut acc = PowPolyFunction::zero(base);
    for c in &comps {
        acc = acc.add(c)?;
    }
    Ok(acc)
}

/// `V_{n−p}`-component of the Lorentz(n) Bessel operator in the chart
/// `(x, v) ↦ (x, −Δ₁(x)^{1/2} v)`:
/// `B^{(n−p)}_λ f + (x^{−1}/4)[Σ∂²_{v_i} − Σv_iv_j∂²_{v_iv_j} − (2λ−n+p+1)Σv_i∂_{v_i}] f`.
pub fn strat_bessel_lorentz(
    lambda: &Rational,
    n: usize,
    p: usize,
    f: &PowPolyFunction,
) -> Result<Vec<PowPolyFunction>, OperatorError> {
    if p == 0 || n < p + 2 {
        return Err(OperatorError::InvalidParameter(format!("Lorentz({n}) ⊃ Lorentz({})", n as i64 - p as i64)));
    }
    check_base(f, &lorentz_chart_base(n, p))?;
    let q = n - p;
    let alg = BesselAlgebra::Lorentz(q);
    let radial = bessel_generic(&alg, &vec![lambda.clone(); q], f)?;
    let c = lambda * int(2) - int(n as i64) + int(p as i64) + int(1);
    let vvars: Vec<usize> = (q..n).collect();
    let angular = f.map_polys(|g| {
        let mut out = g.laplacian(&vvars);
        let e = g.euler(&vvars);
        out = &out - &(&e.euler(&vvars) - &e);
        &out - &e.scale(&c)
    });
    let num = inverse_numerator(&alg, n);
    let mut out = Vec::with_capacity(q);
    for (m, r) in radial.into_iter().enumerate() {
        let extra = angular.mul_poly(&num[m]).mul_base_pow(&-Rational::one()).scale(&rat(1, 4));
        out.push(r.add(&extra)?);
    }
    Ok(out)
}

/// The first `n − p` components of the Lorentz(n) Bessel operator applied
/// to `f∘ι^{−1}`, evaluated by the exact chain rule in `(x, v)`.
pub fn strat_bessel_lorentz_chain(
    lambda: &Rational,
    n: usize,
    p: usize,
    f: &PowPolyFunction,
) -> Result<Vec<PowPolyFunction>, OperatorError> {
    if p == 0 || n < p + 2 {
        return Err(OperatorError::InvalidParameter(format!("Lorentz({n}) ⊃ Lorentz({})", n as i64 - p as i64)));
    }
    let base = lorentz_chart_base(n, p);
    check_base(f, &base)?;
    let q = n - p;
    let half = rat(1, 2);
    let mut xs = Vec::with_capacity(n);
    for m in 0..q {
        xs.push(PowPolyFunction::from_poly(base.clone(), MultiPoly::var(n, m)));
    }
    for i in 0..p {
        xs.push(PowPolyFunction::new(base.clone(), half.clone(), -&MultiPoly::var(n, q + i)));
    }
    let zero = PowPolyFunction::zero(base.clone());
    let mut jac = Vec::with_capacity(n);
    for a in 0..q {
        jac.push(
            (0..n)
                .map(
                    |i| if i == a { PowPolyFunction::from_poly(base.clone(), MultiPoly::one(n)) } else { zero.clone() },
                )
                .collect::<Vec<_>>(),
        );
    }
    for j in 0..p {
        let vj = MultiPoly::var(n, q + j);
        let row = (0..n)
            .map(|i| {
                if i < q {
                    PowPolyFunction::new(
                        base.clone(),
                        -Rational::one(),
                        (&vj * &base.derivative(i)).scale(&-half.clone()),
                    )
                } else if i == q + j {
                    PowPolyFunction::new(base.clone(), -half.clone(), -&MultiPoly::one(n))
                } else {
                    zero.clone()
                }
            })
            .collect();
        jac.push(row);
    }
    chain_components(&BesselAlgebra::Lorentz(n), &vec![lambda.clone(); n], &xs, &jac, f, q)
}

fn fd_derivatives<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], h: f64) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = x.len();
    let at = |shifts: &[(usize, f64)]| {
        let mut y = x.to_vec();
        for &(i, s) in shifts {
            y[i] += s;
        }
        f(&y)
    };
    let once = |h: f64| {
        let f0 = f(x);
        let mut g = vec![0.0; n];
        let mut hs = vec![vec![0.0; n]; n];
        for i in 0..n {
            let fp = at(&[(i, h)]);
            let fm = at(&[(i, -h)]);
            g[i] = (fp - fm) / (2.0 * h);
            hs[i][i] = (fp - 2.0 * f0 + fm) / (h * h);
            for j in i + 1..n {
                let v = (at(&[(i, h), (j, h)]) - at(&[(i, h), (j, -h)]) - at(&[(i, -h), (j, h)])
                    + at(&[(i, -h), (j, -h)]))
                    / (4.0 * h * h);
                hs[i][j] = v;
                hs[j][i] = v;
            }
        }
        (g, hs)
    };
    let (g1, h1) = once(h);
    let (g2, h2) = once(h / 2.0);
    let g = g1.iter().zip(&g2).map(|(a, b)| (4.0 * b - a) / 3.0).collect();
    let hs = h1.iter().zip(&h2).map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| (4.0 * b - a) / 3.0).collect()).collect();
    (g, hs)
}

/// Finite-difference value of `Σ_i B_{λ_i}(f∘θ^{−1})` at `θ(t, v)`, where
/// `θ(t, v) = (t v_1, …, t v_{n−1}, t(1 − |v|))`.
pub fn fd_bessel_tensor<F: Fn(f64, &[f64]) -> f64>(lambda: &[f64], f: F, t: f64, v: &[f64]) -> f64 {
    let n = lambda.len();
    let mut x: Vec<f64> = v.iter().map(|vi| t * vi).collect();
    x.push(t * (1.0 - v.iter().sum::<f64>()));
    let big = |y: &[f64]| {
        let s: f64 = y.iter().sum();
        let w: Vec<f64> = y[..n - 1].iter().map(|yi| yi / s).collect();
        f(s, &w)
    };
    let h = 1e-3 * x.iter().cloned().fold(f64::INFINITY, f64::min);
    let (g, hs) = fd_derivatives(&big, &x, h);
    (0..n).map(|m| x[m] * hs[m][m] + lambda[m] * g[m]).sum()
}

/// Finite-difference value of the first `n − p` components of the Lorentz(n)
/// Bessel operator applied to `f∘ι^{−1}` at `ι(x, v)`.
pub fn fd_bessel_lorentz<F: Fn(&[f64], &[f64]) -> f64>(
    lambda: f64,
    n: usize,
    p: usize,
    f: F,
    x: &[f64],
    v: &[f64],
) -> Vec<f64> {
    let q = n - p;
    let delta = |y: &[f64]| y[0] * y[0] - y[1..q].iter().map(|c| c * c).sum::<f64>();
    let sq = delta(x).sqrt();
    let mut point = x.to_vec();
    point.extend(v.iter().map(|vi| -sq * vi));
    let big = |y: &[f64]| {
        let s = delta(&y[..q]).sqrt();
        let w: Vec<f64> = y[q..].iter().map(|c| -c / s).collect();
        f(&y[..q], &w)
    };
    let h = 1e-3 * sq.min(1.0);
    let (g, hs) = fd_derivatives(&big, &point, h);
    let alg = BesselAlgebra::Lorentz(n);
    (0..q)
        .map(|m| {
            let mut acc = lambda * g[m] / 2.0;
            for k in 0..n {
                for l in 0..n {
                    let mut c = 0.0;
                    for (qq, pq) in point.iter().enumerate() {
                        let s = structure_coefficient(&alg, k, l, m, qq);
                        if !s.is_zero() {
                            c += rational_to_f64(&s) * pq;
                        }
                    }
                    acc += hs[k][l] * c / 4.0;
                }
            }
            acc
        })
        .collect()
}
