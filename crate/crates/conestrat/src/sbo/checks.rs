//! Intertwining, adjointness, Bessel-identity and multiplicity checks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::binomial;
use rayon::prelude::*;

use super::{
    holo_apply, inner, lorentz_det, pullback, sbo_apply, sbo_magnitude, scaled_defect, sphere_rule, Geometry, SboError,
    SboSpec,
};
use crate::cones::lorentz_cone_rule;
use crate::operators::{
    bessel_generic, lorentz_chart_base, strat_bessel_lorentz, strat_bessel_tensor, tensor_chart_base, BesselAlgebra,
};
use crate::orthopoly::{ball_mixed_basis, harmonic_dimension, multi_indices, MixedIndex};
use crate::polyalg::{int, rat, rational_to_f64, MultiPoly, PowPolyFunction, Rational};
use crate::quadrature::{ball_rule, gauss_laguerre_rule};

/// Elements of the parabolic subgroup of the small group that act on both
/// sides of a symmetry-breaking operator.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupElement {
    /// Translation by `u` in the small Jordan algebra.
    Translation(Vec<f64>),
    /// Dilation by `a > 0`.
    Dilation(f64),
    /// Rotation in `SO(q−1)` of the coordinates `x_1, …, x_{q−1}` of the
    /// small Lorentz cone.
    Rotation(DMatrix<f64>),
    /// Rotation in `SO(p)` of the ball variable (`SO(p)` geometry only).
    SphereRotation(DMatrix<f64>),
}

fn is_rotation(r: &DMatrix<f64>, dim: usize) -> bool {
    r.nrows() == dim
        && r.ncols() == dim
        && (r.transpose() * r - DMatrix::identity(dim, dim)).amax() < 1e-12
        && (r.determinant() - 1.0).abs() < 1e-12
}

/// Defect of `Ψ∘S(g) − π(g)∘Ψ` on `f_ambient` (a function on the
/// big cone) at the given target points, relative to the larger of the
/// result and [`sbo_magnitude`] of the transformed function.
///
/// The source action is `S(u)F(y) = e^{i(u|y)}F(y)`, `S(a)F(y) = a^{s}F(ay)`
/// and `S(R)F(y) = F(Ry)` for rotations; the target action is the same with
/// the shifted parameter. Here `s` is `|Λ|/2` (tensor) or `λ` (Lorentz) and
/// the target exponent is `(|Λ|+2k)/2`, `λ+k` or `λ+l`.
pub fn verify_parabolic_intertwine<F>(
    spec: &SboSpec,
    g: &GroupElement,
    f_ambient: F,
    points: &[Vec<f64>],
    npts: usize,
) -> Result<f64, SboError>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let tensor = matches!(spec.geometry, Geometry::TensorSimplex { .. });
    let q = spec.small_dim();
    let n = spec.big_dim();
    let k = f64::from(spec.degree());
    let (s_src, s_tgt) = match &spec.geometry {
        Geometry::TensorSimplex { lambda, .. } => {
            let tot: f64 = lambda.iter().map(rational_to_f64).sum();
            (tot / 2.0, (tot + 2.0 * k) / 2.0)
        }
        Geometry::LorentzBall { lambda, .. } | Geometry::LorentzBallSOp { lambda, .. } => {
            let l = rational_to_f64(lambda);
            (l, l + k)
        }
    };
    let pair = |u: &[f64], x: &[f64]| -> f64 {
        if tensor {
            u[0] * x.iter().sum::<f64>()
        } else {
            2.0 * u.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()
        }
    };
    let rotate = |r: &DMatrix<f64>, y: &[f64], offset: usize| -> Vec<f64> {
        let mut out = y.to_vec();
        for i in 0..r.nrows() {
            out[offset + i] = (0..r.ncols()).map(|j| r[(i, j)] * y[offset + j]).sum();
        }
        out
    };
    let base = sbo_apply(spec, pullback(spec, &f_ambient), points, npts)?;
    let (lhs, rhs, mag) = match g {
        GroupElement::Translation(u) => {
            if u.len() != q {
                return Err(SboError::InvalidParameter(format!("translation needs {q} coordinates")));
            }
            let moved = |y: &[f64]| f_ambient(y) * Complex64::from_polar(1.0, pair(u, &y[..q.min(y.len())]));
            let moved_tensor = |y: &[f64]| f_ambient(y) * Complex64::from_polar(1.0, pair(u, y));
            let (lhs, mag) = if tensor {
                both(spec, pullback(spec, moved_tensor), points, npts)?
            } else {
                both(spec, pullback(spec, moved), points, npts)?
            };
            let rhs = points.iter().zip(&base).map(|(x, b)| b * Complex64::from_polar(1.0, pair(u, &x[..q]))).collect();
            (lhs, rhs, mag)
        }
        GroupElement::Dilation(a) => {
            if *a <= 0.0 {
                return Err(SboError::InvalidParameter("dilation factor must be positive".into()));
            }
            let a = *a;
            let moved = |y: &[f64]| {
                let ay: Vec<f64> = y.iter().map(|c| a * c).collect();
                f_ambient(&ay) * a.powf(s_src)
            };
            let (lhs, mag) = both(spec, pullback(spec, moved), points, npts)?;
            let scaled: Vec<Vec<f64>> = points
                .iter()
                .map(|pt| pt.iter().enumerate().map(|(i, c)| if i < q { a * c } else { *c }).collect())
                .collect();
            let rhs = sbo_apply(spec, pullback(spec, &f_ambient), &scaled, npts)?
                .into_iter()
                .map(|v| v * a.powf(s_tgt))
                .collect();
            (lhs, rhs, mag)
        }
        GroupElement::Rotation(r) => {
            if tensor {
                return Err(SboError::Unsupported("the small group of the tensor geometry has no rotations".into()));
            }
            if q < 3 || !is_rotation(r, q - 1) {
                return Err(SboError::InvalidParameter(format!("need an element of SO({})", q as i64 - 1)));
            }
            let moved = |y: &[f64]| f_ambient(&rotate(r, y, 1));
            let (lhs, mag) = both(spec, pullback(spec, moved), points, npts)?;
            let rotated: Vec<Vec<f64>> = points.iter().map(|pt| rotate(r, pt, 1)).collect();
            (lhs, sbo_apply(spec, pullback(spec, &f_ambient), &rotated, npts)?, mag)
        }
        GroupElement::SphereRotation(r) => {
            let Geometry::LorentzBallSOp { p, .. } = spec.geometry else {
                return Err(SboError::Unsupported("sphere rotations act only in the SO(p) geometry".into()));
            };
            if !is_rotation(r, p) {
                return Err(SboError::InvalidParameter(format!("need an element of SO({p})")));
            }
            let rt = r.transpose();
            let moved = |y: &[f64]| f_ambient(&rotate(&rt, y, n - p));
            let (lhs, mag) = both(spec, pullback(spec, moved), points, npts)?;
            let rotated: Vec<Vec<f64>> = points.iter().map(|pt| rotate(&rt, pt, n - p)).collect();
            (lhs, sbo_apply(spec, pullback(spec, &f_ambient), &rotated, npts)?, mag)
        }
    };
    Ok(scaled_defect(&lhs, &rhs, mag))
}

fn both<F>(spec: &SboSpec, f: F, points: &[Vec<f64>], npts: usize) -> Result<(Vec<Complex64>, f64), SboError>
where
    F: Fn(&[f64], &[f64]) -> Complex64 + Sync,
{
    let mag = sbo_magnitude(spec, &f, points, npts)?.into_iter().fold(0.0, f64::max);
    Ok((sbo_apply(spec, f, points, npts)?, mag))
}

/// Both sides of `⟨Ψf, g⟩_target = ⟨f, Φg⟩_source`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdjointPairing {
    /// `⟨Ψf, g⟩` on the small cone.
    pub lhs: Complex64,
    /// `⟨f, Φg⟩` on `Ω₁ × X`.
    pub rhs: Complex64,
    /// `|lhs − rhs| / (‖f‖·‖Φg‖)`.
    pub defect: f64,
}

struct OuterRule {
    nodes: Vec<Vec<f64>>,
    /// Quadrature weight divided by the rule's weight function at the node.
    weights: Vec<f64>,
    src_density: Vec<f64>,
    tgt_density: Vec<f64>,
}

fn outer_rule(spec: &SboSpec, npts: usize) -> Result<OuterRule, SboError> {
    let k = f64::from(spec.degree());
    match &spec.geometry {
        Geometry::TensorSimplex { lambda, .. } => {
            let tot: f64 = lambda.iter().map(rational_to_f64).sum();
            let a = tot + k - 1.0;
            let rule = gauss_laguerre_rule(npts, a).map_err(inner)?;
            let t: Vec<f64> = rule.nodes.iter().map(|v| v[0]).collect();
            Ok(OuterRule {
                weights: rule.weights.iter().zip(&t).map(|(w, t)| w / (t.powf(a) * (-t).exp())).collect(),
                src_density: t.iter().map(|t| t.powf(tot - 1.0)).collect(),
                tgt_density: t.iter().map(|t| t.powf(tot + 2.0 * k - 1.0)).collect(),
                nodes: rule.nodes,
            })
        }
        Geometry::LorentzBall { n, p, lambda, .. } | Geometry::LorentzBallSOp { n, p, lambda, .. } => {
            let q = n - p;
            let lam = rational_to_f64(lambda);
            let mu = lam + k / 2.0 - q as f64 / 2.0;
            let (nodes, w) = lorentz_cone_rule(q, mu, npts).map_err(inner)?;
            let det: Vec<f64> = nodes.iter().map(|x| lorentz_det(x)).collect();
            Ok(OuterRule {
                weights: w
                    .iter()
                    .zip(&nodes)
                    .zip(&det)
                    .map(|((w, x), d)| w / (d.powf(mu) * (-2.0 * x[0]).exp()))
                    .collect(),
                src_density: det.iter().map(|d| d.powf(lam - q as f64 / 2.0)).collect(),
                tgt_density: det.iter().map(|d| d.powf(lam + k - q as f64 / 2.0)).collect(),
                nodes,
            })
        }
    }
}

/// Evaluates both pairings by quadrature: a Laguerre rule (tensor) or a
/// Lorentz cone rule on the small cone, the stratification-space rule on `X`,
/// and in the `SO(p)` geometry a normalized sphere rule in the target
/// variable `u`. Test functions should carry a factor `e^{−tr(x)/2}`, and in
/// the `SO(p)` geometry `g(x, ·)` must be harmonic of degree `l − 2j`.
pub fn adjointness_defect<F, G>(
    spec: &SboSpec,
    f: F,
    g: G,
    npts_inner: usize,
    npts_outer: usize,
) -> Result<AdjointPairing, SboError>
where
    F: Fn(&[f64], &[f64]) -> Complex64 + Sync,
    G: Fn(&[f64]) -> Complex64 + Sync + Send,
{
    let outer = outer_rule(spec, npts_outer)?;
    let strat = spec.strat_rule(npts_inner)?;
    let sphere = match spec.geometry {
        Geometry::LorentzBallSOp { p, l, .. } => Some(sphere_rule(p, l as usize + 2)?),
        _ => None,
    };
    let holo = holo_apply(spec, &g)?;

    let lhs: Complex64 = match &sphere {
        None => {
            let psi = sbo_apply(spec, &f, &outer.nodes, npts_inner)?;
            psi.iter()
                .zip(&outer.nodes)
                .zip(outer.weights.iter().zip(&outer.tgt_density))
                .map(|((v, x), (w, d))| v * g(x).conj() * (w * d))
                .sum()
        }
        Some((un, uw)) => {
            let pts: Vec<Vec<f64>> = outer
                .nodes
                .iter()
                .flat_map(|x| un.iter().map(move |u| [x.as_slice(), u.as_slice()].concat()))
                .collect();
            let psi = sbo_apply(spec, &f, &pts, npts_inner)?;
            let m = un.len();
            psi.iter()
                .enumerate()
                .map(|(i, v)| {
                    let (o, s) = (i / m, i % m);
                    v * g(&pts[i]).conj() * (outer.weights[o] * outer.tgt_density[o] * uw[s])
                })
                .sum()
        }
    };

    let (rhs, ff, hh) = outer
        .nodes
        .par_iter()
        .enumerate()
        .map(|(o, x)| {
            let scale = outer.weights[o] * outer.src_density[o];
            let mut acc = (Complex64::new(0.0, 0.0), 0.0, 0.0);
            for (v, w) in strat.nodes.iter().zip(&strat.weights) {
                let fv = f(x, v);
                let hv = holo(x, v);
                acc.0 += fv * hv.conj() * (w * scale);
                acc.1 += fv.norm_sqr() * w * scale;
                acc.2 += hv.norm_sqr() * w * scale;
            }
            acc
        })
        .reduce(|| (Complex64::new(0.0, 0.0), 0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let denom = (ff * hh).sqrt();
    let diff = (lhs - rhs).norm();
    Ok(AdjointPairing { lhs, rhs, defect: if denom > 0.0 { diff / denom } else { diff } })
}

/// Residual of the Bessel identity `𝓑(Φ G) = Φ(B_{shifted} G)` for the
/// holographic lift `ΦG = t^k G·P` (tensor) or `Δ^{k/2} G·P` (Lorentz),
/// with `G = base^μ·g` for a polynomial `g` on the small cone. The residual
/// vanishes identically exactly when `P ∈ Pol_k`. In the `SO(p)` geometry
/// `P` is the first mixed basis element of the `(l, j)` block.
pub fn exact_bessel_residual(spec: &SboSpec, g: &MultiPoly, mu: &Rational) -> Result<Vec<PowPolyFunction>, SboError> {
    let q = spec.small_dim();
    let n = spec.big_dim();
    if g.nvars() != q {
        return Err(SboError::InvalidParameter(format!("g must have {q} variables")));
    }
    let k = int(i64::from(spec.degree()));
    match &spec.geometry {
        Geometry::TensorSimplex { lambda, poly, .. } => {
            let base = tensor_chart_base(n);
            let big_g = PowPolyFunction::new(base, mu.clone(), g.shift_vars(n, 0));
            let pk = poly.shift_vars(n, 1);
            let lhs = strat_bessel_tensor(lambda, &big_g.mul_base_pow(&k).mul_poly(&pk)).map_err(inner)?;
            let tot: Rational = lambda.iter().sum();
            let shifted =
                bessel_generic(&BesselAlgebra::Rank1Product(1), &[tot + &k * int(2)], &big_g).map_err(inner)?.remove(0);
            Ok(vec![lhs.sub(&shifted.mul_base_pow(&k).mul_poly(&pk)).map_err(inner)?])
        }
        Geometry::LorentzBall { n, p, lambda, .. } | Geometry::LorentzBallSOp { n, p, lambda, .. } => {
            let poly = match &spec.geometry {
                Geometry::LorentzBallSOp { l, j, .. } => {
                    ball_mixed_basis(*p, lambda, *n as u32, MixedIndex { l: *l, j: *j, kappa: 0 }).map_err(inner)?
                }
                _ => spec.poly()?,
            };
            let base = lorentz_chart_base(*n, *p);
            let big_g = PowPolyFunction::new(base, mu.clone(), g.shift_vars(*n, 0));
            let pk = poly.shift_vars(*n, q);
            let half_k = &k * rat(1, 2);
            let lhs =
                strat_bessel_lorentz(lambda, *n, *p, &big_g.mul_base_pow(&half_k).mul_poly(&pk)).map_err(inner)?;
            let shifted = bessel_generic(&BesselAlgebra::Lorentz(q), &vec![lambda + &k; q], &big_g).map_err(inner)?;
            lhs.iter()
                .zip(&shifted)
                .map(|(a, b)| a.sub(&b.mul_base_pow(&half_k).mul_poly(&pk)).map_err(inner))
                .collect()
        }
    }
}

/// Largest normalized Gram entry `|⟨P_a, P_b⟩| / (‖P_a‖‖P_b‖)` between mixed
/// ball basis elements of different `(l, j)` blocks, `l ≤ lmax`, for the
/// weight `(1−‖v‖²)^{λ−n/2}` on `𝔹^p`.
pub fn mixed_gram_defect(p: usize, lambda: &Rational, n: u32, lmax: u32, npts: usize) -> Result<f64, SboError> {
    let alpha = rational_to_f64(lambda) - (f64::from(n) - 1.0) / 2.0;
    let rule = ball_rule(p, alpha, npts).map_err(inner)?;
    let mut elems = Vec::new();
    for l in 0..=lmax {
        for j in 0..=l / 2 {
            for kappa in 0..harmonic_dimension(p, l - 2 * j) {
                let poly = ball_mixed_basis(p, lambda, n, MixedIndex { l, j, kappa }).map_err(inner)?.to_f64();
                let vals: Vec<f64> = rule.nodes.iter().map(|v| poly.eval(v)).collect();
                elems.push(((l, j), vals));
            }
        }
    }
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).zip(&rule.weights).map(|((x, y), w)| w * x * y).sum::<f64>();
    let norms: Vec<f64> = elems.iter().map(|(_, v)| dot(v, v).sqrt()).collect();
    let mut worst = 0.0f64;
    for a in 0..elems.len() {
        for b in a + 1..elems.len() {
            if elems[a].0 != elems[b].0 {
                worst = worst.max(dot(&elems[a].1, &elems[b].1).abs() / (norms[a] * norms[b]));
            }
        }
    }
    Ok(worst)
}

/// Geometry for [`branching_table`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchingGeometry {
    /// `n`-fold tensor product restricted to the diagonal.
    Tensor {
        /// Number of factors.
        n: usize,
    },
    /// Lorentz(n) ⊃ Lorentz(n−p).
    Ball {
        /// Codimension.
        p: usize,
    },
    /// Lorentz(n) ⊃ Lorentz(n−p) × SO(p).
    BallSOp {
        /// Codimension.
        p: usize,
    },
}

/// One degree of a branching table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingRow {
    /// Degree `k`.
    pub degree: u32,
    /// Number of basis elements of `Pol_k` produced by the basis constructors.
    pub multiplicity: usize,
    /// Closed form: `C(n+k−2, n−2)` or `C(k+p−1, p−1)`.
    pub closed_form: usize,
    /// `dim H^p_{k−2j}` for `j = 0, …, ⌊k/2⌋` (`SO(p)` geometry only).
    pub refinement: Vec<usize>,
}

/// Multiplicities of the branching for degrees `0..=cap`.
pub fn branching_table(geom: BranchingGeometry, cap: u32) -> Result<Vec<BranchingRow>, SboError> {
    let vars = match geom {
        BranchingGeometry::Tensor { n } if n >= 2 => n - 1,
        BranchingGeometry::Ball { p } if p >= 1 => p,
        BranchingGeometry::BallSOp { p } if p >= 2 => p,
        _ => return Err(SboError::InvalidParameter(format!("unsupported geometry {geom:?}"))),
    };
    Ok((0..=cap)
        .map(|k| {
            let closed_form = binomial(k as usize + vars - 1, vars - 1);
            let refinement = match geom {
                BranchingGeometry::BallSOp { p } => (0..=k / 2).map(|j| harmonic_dimension(p, k - 2 * j)).collect(),
                _ => Vec::new(),
            };
            BranchingRow { degree: k, multiplicity: multi_indices(vars, k).len(), closed_form, refinement }
        })
        .collect())
}
