//! Symmetric-cone analysis: Gindikin Gamma and Beta functions, the
//! stratification diffeomorphism `ι: Ω₁ × X → Ω₂` for a unital subalgebra
//! `V₁ ⊂ V₂`, its Jacobian and the associated measure identities.

use nalgebra::{DMatrix, DVector};
use statrs::function::gamma::gamma;
use thiserror::Error;

use crate::jordan::{
    self, identity, in_cone, quad_rep, AlgebraDescriptor, AlgebraKind, JordanElement, JordanError, LinearMap,
};
use crate::quadrature::{ball_rule, gauss_laguerre_rule, integrate, simplex_rule, QuadratureRule};

/// Errors raised by cone-level computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConeError {
    /// A Gamma factor hits a pole.
    #[error("Gamma function pole at λ = {0}")]
    Pole(f64),
    /// The operation needs a different kind of algebra or embedding.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A point lies outside the domain of the chart.
    #[error("point outside the domain: {0}")]
    Domain(String),
    /// Parameters outside the convergence range.
    #[error("parameter out of range: {0}")]
    Range(String),
    /// Underlying Jordan algebra failure.
    #[error(transparent)]
    Jordan(#[from] JordanError),
}

fn gamma_checked(x: f64) -> Result<f64, ConeError> {
    if x <= 0.0 && x == x.round() {
        return Err(ConeError::Pole(x));
    }
    Ok(gamma(x))
}

/// Gindikin Gamma function
/// `Γ_Ω(λ) = (2π)^{(n−r)/2} ∏_{i=1}^{r} Γ(λ − (i−1)d/2)`,
/// extended multiplicatively over direct sums and products of half-lines.
pub fn gamma_cone(a: &AlgebraDescriptor, lambda: f64) -> Result<f64, ConeError> {
    match &a.kind {
        AlgebraKind::Rank1Product(p) => Ok(gamma_checked(lambda)?.powi(*p as i32)),
        AlgebraKind::DirectSum(parts) => parts.iter().try_fold(1.0, |acc, p| Ok(acc * gamma_cone(p, lambda)?)),
        _ => {
            let (n, r, d) = (a.n as f64, a.r as f64, a.d as f64);
            let mut acc = (2.0 * std::f64::consts::PI).powf((n - r) / 2.0);
            for i in 0..a.r {
                acc *= gamma_checked(lambda - i as f64 * d / 2.0)?;
            }
            Ok(acc)
        }
    }
}

/// Beta function of the cone `B_Ω(a, b) = Γ_Ω(a)Γ_Ω(b)/Γ_Ω(a+b)`.
pub fn beta_cone(alg: &AlgebraDescriptor, a: f64, b: f64) -> Result<f64, ConeError> {
    Ok(gamma_cone(alg, a)? * gamma_cone(alg, b)? / gamma_cone(alg, a + b)?)
}

/// Quadrature rule on the Lorentz cone of dimension `m` for the measure
/// `Δ(x)^μ e^{−tr x} dx`, with `dx` the Lebesgue measure of the trace form.
///
/// Writing `x = (s, s·w)` with `w` in the unit ball gives
/// `dx = 2^{m/2} s^{m−1} ds dw`, `Δ = s²(1−‖w‖²)` and `tr = 2s`, so the rule
/// is a generalized Laguerre rule in `2s` times a ball rule in `w`.
pub fn lorentz_cone_rule(m: usize, mu: f64, npts: usize) -> Result<(Vec<Vec<f64>>, Vec<f64>), ConeError> {
    if m < 2 || mu <= -1.0 {
        return Err(ConeError::Range(format!("Lorentz({m}) with μ = {mu}")));
    }
    let mf = m as f64;
    let radial = gauss_laguerre_rule(npts, mf - 1.0 + 2.0 * mu).map_err(|e| ConeError::Range(e.to_string()))?;
    let ball = ball_rule(m - 1, mu + 0.5, npts).map_err(|e| ConeError::Range(e.to_string()))?;
    let scale = 2f64.powf(mf / 2.0) * 2f64.powf(-(mf + 2.0 * mu)) * 2f64.powf((mf - 1.0) / 2.0);
    let mut nodes = Vec::with_capacity(radial.len() * ball.len());
    let mut weights = Vec::with_capacity(radial.len() * ball.len());
    for (u, wu) in radial.nodes.iter().zip(&radial.weights) {
        let s = u[0] / 2.0;
        for (w, ww) in ball.nodes.iter().zip(&ball.weights) {
            let mut x = Vec::with_capacity(m);
            x.push(s);
            x.extend(w.iter().map(|c| s * c));
            nodes.push(x);
            weights.push(scale * wu * ww);
        }
    }
    Ok((nodes, weights))
}

/// Stratified coordinates `(t, v) ∈ Ω₁ × X`.
#[derive(Clone, Debug, PartialEq)]
pub struct StratCoords {
    /// Point of the small cone.
    pub t: JordanElement,
    /// Coordinates of a point of the stratification space.
    pub v: Vec<f64>,
}

/// The concrete embeddings `V₁ ⊂ V₂`.
#[derive(Clone, Debug, PartialEq)]
pub enum EmbeddingKind {
    /// `ℝ × ℝ^{n−p−1} ⊂ ℝ × ℝ^{n−1}` (first `n−p` coordinates); `X ≅ 𝔹^p`.
    EqualRankLorentz {
        /// Dimension of the big algebra.
        n: usize,
        /// Codimension.
        p: usize,
    },
    /// `V` embedded diagonally into `V^p`; `v = (v_1, …, v_{p−1})` with
    /// `v_p = −Σ v_i`.
    DiagonalProduct {
        /// Number of copies.
        p: usize,
    },
    /// `ℝ·e ⊂ V₂`; `v` are coordinates in an orthonormal basis of `e^⊥`.
    ScalarLine,
}

/// A unital embedding `η: V₁ → V₂` with `(ηx|ηy)₂ = (r₂/r₁)(x|y)₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeEmbedding {
    /// Small algebra `V₁`.
    pub inner: AlgebraDescriptor,
    /// Big algebra `V₂`.
    pub outer: AlgebraDescriptor,
    /// Which concrete chart.
    pub kind: EmbeddingKind,
    eta: DMatrix<f64>,
    complement: DMatrix<f64>,
}

impl ConeEmbedding {
    fn build(inner: AlgebraDescriptor, outer: AlgebraDescriptor, kind: EmbeddingKind, eta: DMatrix<f64>) -> Self {
        let n1 = inner.n;
        let n2 = outer.n;
        let mut aug = DMatrix::zeros(n2, n1 + n2);
        aug.view_mut((0, 0), (n2, n1)).copy_from(&eta);
        aug.view_mut((0, n1), (n2, n2)).copy_from(&DMatrix::identity(n2, n2));
        let q = aug.qr().q();
        let complement = match kind {
            EmbeddingKind::ScalarLine => q.columns(n1, n2 - n1).into_owned(),
            _ => DMatrix::zeros(n2, 0),
        };
        Self { inner, outer, kind, eta, complement }
    }

    /// `ℝ×ℝ^{n−p−1} ⊂ ℝ×ℝ^{n−1}`; needs `p ≥ 1` and `n − p ≥ 2`.
    pub fn equal_rank_lorentz(n: usize, p: usize) -> Result<Self, ConeError> {
        if p == 0 || n < p + 2 {
            return Err(ConeError::Unsupported(format!("Lorentz({n}) ⊃ Lorentz({})", n as i64 - p as i64)));
        }
        let eta = DMatrix::from_fn(n, n - p, |i, j| if i == j { 1.0 } else { 0.0 });
        Ok(Self::build(
            AlgebraDescriptor::lorentz(n - p),
            AlgebraDescriptor::lorentz(n),
            EmbeddingKind::EqualRankLorentz { n, p },
            eta,
        ))
    }

    /// Diagonal embedding of `v` into `v^p`, `p ≥ 2`.
    pub fn diagonal_product(v: &AlgebraDescriptor, p: usize) -> Result<Self, ConeError> {
        if p < 2 {
            return Err(ConeError::Unsupported("diagonal embedding needs p ≥ 2".into()));
        }
        let outer = AlgebraDescriptor::direct_sum(vec![v.clone(); p]);
        let n = v.n;
        let eta = DMatrix::from_fn(n * p, n, |i, j| if i % n == j { 1.0 } else { 0.0 });
        Ok(Self::build(v.clone(), outer, EmbeddingKind::DiagonalProduct { p }, eta))
    }

    /// The simplex chart: `ℝ` diagonally in `ℝ^n`.
    pub fn simplex_chart(n: usize) -> Result<Self, ConeError> {
        Self::diagonal_product(&AlgebraDescriptor::rank1_product(1), n)
    }

    /// `ℝ·e ⊂ outer`.
    pub fn scalar_line(outer: &AlgebraDescriptor) -> Result<Self, ConeError> {
        if outer.n < 2 {
            return Err(ConeError::Unsupported("scalar line needs dim V₂ ≥ 2".into()));
        }
        let e = identity(outer);
        let eta = DMatrix::from_column_slice(outer.n, 1, &e.coords);
        Ok(Self::build(AlgebraDescriptor::rank1_product(1), outer.clone(), EmbeddingKind::ScalarLine, eta))
    }

    /// True when `r₁ = r₂`.
    pub fn equal_rank(&self) -> bool {
        self.inner.r == self.outer.r
    }

    /// Number of coordinates of `v`.
    pub fn strat_dim(&self) -> usize {
        self.outer.n - self.inner.n
    }

    /// `r₁/r₂`.
    pub fn rank_ratio(&self) -> f64 {
        self.inner.r as f64 / self.outer.r as f64
    }

    /// The embedding `η`.
    pub fn embed(&self, x: &JordanElement) -> Result<JordanElement, ConeError> {
        if x.algebra != self.inner {
            return Err(JordanError::AlgebraMismatch.into());
        }
        let y = &self.eta * x.to_vector();
        Ok(JordanElement::new(&self.outer, y.iter().copied().collect())?)
    }

    /// `ξ(v) ∈ V₁^⊥` encoded by the stratification coordinates.
    pub fn complement_vector(&self, v: &[f64]) -> Result<JordanElement, ConeError> {
        if v.len() != self.strat_dim() {
            return Err(ConeError::Domain(format!("expected {} coordinates", self.strat_dim())));
        }
        let coords = match &self.kind {
            EmbeddingKind::EqualRankLorentz { n, p } => {
                let mut c = vec![0.0; *n];
                for i in 0..*p {
                    c[n - p + i] = -v[i];
                }
                c
            }
            EmbeddingKind::DiagonalProduct { p } => {
                let m = self.inner.n;
                let mut c = v.to_vec();
                let mut last = vec![0.0; m];
                for blk in 0..p - 1 {
                    for j in 0..m {
                        last[j] -= v[blk * m + j];
                    }
                }
                c.extend(last);
                c
            }
            EmbeddingKind::ScalarLine => (&self.complement * DVector::from_column_slice(v)).iter().copied().collect(),
        };
        Ok(JordanElement::new(&self.outer, coords)?)
    }

    fn decode_complement(&self, xi: &JordanElement) -> Vec<f64> {
        match &self.kind {
            EmbeddingKind::EqualRankLorentz { n, p } => xi.coords[n - p..].iter().map(|c| -c).collect(),
            EmbeddingKind::DiagonalProduct { p } => xi.coords[..(p - 1) * self.inner.n].to_vec(),
            EmbeddingKind::ScalarLine => (self.complement.transpose() * xi.to_vector()).iter().copied().collect(),
        }
    }

    /// Orthogonal basis matrix (columns) of `V₁^⊥` in outer coordinates.
    pub fn complement_basis(&self) -> DMatrix<f64> {
        let n1 = self.inner.n;
        let n2 = self.outer.n;
        let mut aug = DMatrix::zeros(n2, n1 + n2);
        aug.view_mut((0, 0), (n2, n1)).copy_from(&self.eta);
        aug.view_mut((0, n1), (n2, n2)).copy_from(&DMatrix::identity(n2, n2));
        aug.qr().q().columns(n1, n2 - n1).into_owned()
    }
}

/// `e + ξ(v) ∈ Ω₂`: membership of `v` in the stratification space.
pub fn in_strat_space(emb: &ConeEmbedding, v: &[f64]) -> bool {
    match emb.complement_vector(v) {
        Ok(xi) => {
            let e = identity(&emb.outer);
            match e.lincomb(1.0, &xi, 1.0) {
                Ok(p) => in_cone(&p),
                Err(_) => false,
            }
        }
        Err(_) => false,
    }
}

/// `ι(t, v) = (r₁/r₂) P₂(η(t)^{1/2})(e + ξ(v))`.
pub fn strat_forward(emb: &ConeEmbedding, c: &StratCoords) -> Result<JordanElement, ConeError> {
    if !in_cone(&c.t) {
        return Err(ConeError::Domain("t is not in Ω₁".into()));
    }
    if !in_strat_space(emb, &c.v) {
        return Err(ConeError::Domain("v is not in X".into()));
    }
    let root = jordan::sqrt(&emb.embed(&c.t)?)?;
    let e = identity(&emb.outer);
    let arg = e.lincomb(1.0, &emb.complement_vector(&c.v)?, 1.0)?;
    Ok(quad_rep(&root).apply(&arg)?.scaled(emb.rank_ratio()))
}

/// Inverse of [`strat_forward`]: `η(t) = (r₂/r₁)·proj_{V₁}(x)` and
/// `e + ξ(v) = (r₂/r₁) P₂(η(t)^{−1/2}) x`.
pub fn strat_inverse(emb: &ConeEmbedding, x: &JordanElement) -> Result<StratCoords, ConeError> {
    if x.algebra != emb.outer {
        return Err(JordanError::AlgebraMismatch.into());
    }
    if !in_cone(x) {
        return Err(ConeError::Domain("x is not in Ω₂".into()));
    }
    let et = emb.eta.transpose();
    let gram = &et * &emb.eta;
    let proj =
        gram.lu().solve(&(&et * x.to_vector())).ok_or_else(|| ConeError::Domain("degenerate embedding".into()))?;
    let scale = 1.0 / emb.rank_ratio();
    let t = JordanElement::new(&emb.inner, proj.iter().map(|c| c * scale).collect())?;
    let inv_root = jordan::cone_power(&emb.embed(&t)?, -0.5)?;
    let y = quad_rep(&inv_root).apply(x)?.scaled(scale);
    let xi = y.lincomb(1.0, &identity(&emb.outer), -1.0)?;
    Ok(StratCoords { t, v: emb.decode_complement(&xi) })
}

/// Closed-form `|Jac ι|` with respect to the coordinates of `t` and `v`:
/// `Δ₁(t)^{p/2}` for the Lorentz chart, `Δ(t)^{(p−1)m}/p^{(p−1)n}` for the
/// diagonal chart and `t^{n₂−1}‖e‖/r₂^{n₂}` for the scalar line.
pub fn strat_jacobian(emb: &ConeEmbedding, c: &StratCoords) -> Result<f64, ConeError> {
    let dt = jordan::det(&c.t);
    Ok(match &emb.kind {
        EmbeddingKind::EqualRankLorentz { p, .. } => dt.powf(*p as f64 / 2.0),
        EmbeddingKind::DiagonalProduct { p } => {
            let m = emb.inner.n as f64 / emb.inner.r as f64;
            let pf = *p as f64;
            dt.powf((pf - 1.0) * m) / pf.powf((pf - 1.0) * emb.inner.n as f64)
        }
        EmbeddingKind::ScalarLine => {
            let n2 = emb.outer.n as f64;
            let e = identity(&emb.outer);
            let enorm = e.coords.iter().map(|c| c * c).sum::<f64>().sqrt();
            c.t.coords[0].powf(n2 - 1.0) * enorm / (emb.outer.r as f64).powf(n2)
        }
    })
}

/// Central finite-difference Jacobian determinant of `ι` (one Richardson
/// extrapolation step), for cross-checking [`strat_jacobian`].
pub fn strat_jacobian_fd(emb: &ConeEmbedding, c: &StratCoords, h: f64) -> Result<f64, ConeError> {
    let n1 = emb.inner.n;
    let n2 = emb.outer.n;
    let mut base = c.t.coords.clone();
    base.extend(&c.v);
    let eval = |z: &[f64]| -> Result<Vec<f64>, ConeError> {
        let t = JordanElement::new(&emb.inner, z[..n1].to_vec())?;
        Ok(strat_forward(emb, &StratCoords { t, v: z[n1..].to_vec() })?.coords)
    };
    let column = |j: usize, step: f64| -> Result<Vec<f64>, ConeError> {
        let mut zp = base.clone();
        let mut zm = base.clone();
        zp[j] += step;
        zm[j] -= step;
        let (fp, fm) = (eval(&zp)?, eval(&zm)?);
        Ok(fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * step)).collect())
    };
    let mut jac = DMatrix::zeros(n2, n2);
    for j in 0..n2 {
        let d1 = column(j, h)?;
        let d2 = column(j, h / 2.0)?;
        for i in 0..n2 {
            jac[(i, j)] = (4.0 * d2[i] - d1[i]) / 3.0;
        }
    }
    Ok(jac.determinant().abs())
}

/// Both sides of `Δ₂(ι(t,v)) = (r₁/r₂)^{r₂} Δ₂(η t) Δ₂(e + ξ(v))` and of
/// `tr₂(ι(t,v)) = tr₁(t)`, returned as `(detLHS, detRHS, trLHS, trRHS)`.
pub fn strat_identities_check(emb: &ConeEmbedding, c: &StratCoords) -> Result<(f64, f64, f64, f64), ConeError> {
    let x = strat_forward(emb, c)?;
    let e = identity(&emb.outer);
    let ev = e.lincomb(1.0, &emb.complement_vector(&c.v)?, 1.0)?;
    let det_rhs = emb.rank_ratio().powi(emb.outer.r as i32) * jordan::det(&emb.embed(&c.t)?) * jordan::det(&ev);
    Ok((jordan::det(&x), det_rhs, jordan::trace(&x), jordan::trace(&c.t)))
}

/// `(∏Γ_Ω(λ_k), Γ_Ω(|Λ|)·p^{−(r|Λ|−n)}·I_Ω(Λ), I_Ω(Λ))` for the diagonal
/// embedding of `alg` into `alg^p`.
///
/// For rank one `I_Ω(Λ) = p^{|Λ|−1}∫_{D_{p−1}}(1−|w|)^{λ_p−1}∏w_i^{λ_i−1}dw`
/// is computed by simplex quadrature; otherwise the Beta chain
/// `p^{r|Λ|−n}∏_k B_Ω(λ_1+…+λ_k, λ_{k+1})` is used.
pub fn gamma_product_identity(
    lambda: &[f64],
    alg: &AlgebraDescriptor,
    npts: usize,
) -> Result<(f64, f64, f64), ConeError> {
    let p = lambda.len();
    if p < 2 {
        return Err(ConeError::Range("need at least two parameters".into()));
    }
    let lower = (alg.r as f64 - 1.0) * alg.d as f64 / 2.0;
    if lambda.iter().any(|l| *l <= lower) {
        return Err(ConeError::Range(format!("every λ must exceed {lower}")));
    }
    let total: f64 = lambda.iter().sum();
    let (r, n, pf) = (alg.r as f64, alg.n as f64, p as f64);
    let lhs = lambda.iter().try_fold(1.0, |acc, l| Ok::<_, ConeError>(acc * gamma_cone(alg, *l)?))?;
    let i_omega = if alg.r == 1 && alg.n == 1 {
        let rule = simplex_rule(p - 1, lambda, npts).map_err(|e| ConeError::Range(e.to_string()))?;
        pf.powf(total - 1.0) * rule.total_weight()
    } else {
        let mut acc = pf.powf(r * total - n);
        let mut partial = lambda[0];
        for l in &lambda[1..] {
            acc *= beta_cone(alg, partial, *l)?;
            partial += l;
        }
        acc
    };
    let rhs = gamma_cone(alg, total)? * pf.powf(-(r * total - n)) * i_omega;
    Ok((lhs, rhs, i_omega))
}

/// `V_X(λ) = ∫_X Δ₂(e+v)^{λ−m₂} dv` (trace-form measure on `V₁^⊥`) for the
/// Lorentz chart, where `Δ₂(e+v) = 1 − ‖v‖²`; it satisfies
/// `Γ_{Ω₂}(λ) = V_X(λ) Γ_{Ω₁}(λ)`.
pub fn volume_strat_space(emb: &ConeEmbedding, lambda: f64, npts: usize) -> Result<f64, ConeError> {
    match emb.kind {
        EmbeddingKind::EqualRankLorentz { n, p } => {
            let alpha = lambda - (n as f64 - 1.0) / 2.0;
            if alpha <= -0.5 {
                return Err(ConeError::Range(format!("λ = {lambda} below the convergence range")));
            }
            let rule = ball_rule(p, alpha, npts).map_err(|e| ConeError::Range(e.to_string()))?;
            Ok(2f64.powi(p as i32) * rule.total_weight())
        }
        _ => Err(ConeError::Unsupported("volume identity needs an equal-rank Lorentz chart".into())),
    }
}

/// `k_{g,t} = P((g·t)^{−1/2}) g P(t^{1/2})`, an orthogonal map fixing `e`.
pub fn k_compensator(g: &LinearMap, t: &JordanElement) -> Result<LinearMap, ConeError> {
    let gt = g.apply(t)?;
    let a = quad_rep(&jordan::cone_power(&gt, -0.5)?);
    let b = quad_rep(&jordan::sqrt(t)?);
    Ok(a.compose(g)?.compose(&b)?)
}

/// Weighted integral over `Ω₁ × X` for the Lorentz chart:
/// `∫∫ F(t, v) Δ₁(t)^{μ₁} e^{−tr t} dt · (1−‖v‖²)^{β} dv` with trace-form
/// measures on both factors.
pub fn lorentz_strat_integral<F: Fn(&[f64], &[f64]) -> f64 + Sync>(
    emb: &ConeEmbedding,
    mu1: f64,
    beta: f64,
    npts: usize,
    f: F,
) -> Result<f64, ConeError> {
    let EmbeddingKind::EqualRankLorentz { n, p } = emb.kind else {
        return Err(ConeError::Unsupported("Lorentz chart expected".into()));
    };
    let (tn, tw) = lorentz_cone_rule(n - p, mu1, npts)?;
    let ball = ball_rule(p, beta + 0.5, npts).map_err(|e| ConeError::Range(e.to_string()))?;
    let scale = 2f64.powf(p as f64);
    let mut acc = Vec::with_capacity(tn.len());
    for (t, w) in tn.iter().zip(&tw) {
        acc.push(w * scale * integrate(|v| f(t, v), &ball));
    }
    Ok(crate::quadrature::pairwise_sum(&acc))
}

/// Rule on `X_{1n}` for `(1−Σv_i)^{λ_n−1}∏(1+v_i)^{λ_i−1}dv`, obtained from
/// the simplex rule through `v_i = n·w_i − 1`.
pub fn simplex_chart_rule(lambda: &[f64], npts: usize) -> Result<QuadratureRule, ConeError> {
    let n = lambda.len();
    let base = simplex_rule(n - 1, lambda, npts).map_err(|e| ConeError::Range(e.to_string()))?;
    let nf = n as f64;
    let total: f64 = lambda.iter().sum();
    let scale = nf.powf(total - 1.0);
    Ok(QuadratureRule {
        weight: base.weight.clone(),
        nodes: base.nodes.iter().map(|w| w.iter().map(|x| nf * x - 1.0).collect()).collect(),
        weights: base.weights.iter().map(|w| w * scale).collect(),
        order: base.order,
    })
}
