//! Euclidean Jordan algebras: rank-one products `ℝ^p`, Lorentz algebras
//! `ℝ × ℝ^{n−1}`, symmetric matrices `Sym(n)` and their direct sums.
//!
//! Elements are coordinate vectors. `Sym(n)` is stored as its packed upper
//! triangle with off-diagonal entries scaled by `√2`, so that the trace form
//! `(x|y) = tr(x·y)` is the Euclidean dot product of coordinates. For the
//! Lorentz algebra the trace form is twice the dot product.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_rational::BigRational;
use rand::Rng;
use thiserror::Error;

use crate::polyalg::int;

/// Errors raised by Jordan algebra operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum JordanError {
    /// Operands belong to different algebras.
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    /// A coordinate vector has the wrong length.
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch {
        /// Dimension of the algebra.
        expected: usize,
        /// Length supplied.
        found: usize,
    },
    /// The element is not in the open symmetric cone.
    #[error("element is not in the open symmetric cone")]
    NotInCone,
    /// The element has zero determinant.
    #[error("element is not invertible")]
    Singular,
    /// The operation requires a Lorentz algebra.
    #[error("operation requires a Lorentz algebra")]
    NotLorentz,
    /// The linear map does not preserve the cone.
    #[error("linear map does not preserve the symmetric cone")]
    NotConePreserving,
    /// Invalid descriptor parameters.
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
}

/// The family an algebra belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// `ℝ^p` with the componentwise product.
    Rank1Product(usize),
    /// `ℝ × ℝ^{n−1}` with `(x,u)(y,v) = (xy + ⟨u,v⟩, xv + yu)`.
    Lorentz(usize),
    /// Real symmetric `n × n` matrices with `x∘y = (xy + yx)/2`.
    SymMatrices(usize),
    /// Orthogonal direct sum of the listed algebras.
    DirectSum(Vec<AlgebraDescriptor>),
}

/// A Euclidean Jordan algebra together with its structure numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraDescriptor {
    /// Family and size.
    pub kind: AlgebraKind,
    /// Rank.
    pub r: usize,
    /// Dimension.
    pub n: usize,
    /// Off-diagonal Peirce dimension (zero for non-simple algebras).
    pub d: usize,
    /// `n / r`.
    pub m: BigRational,
}

impl AlgebraDescriptor {
    fn build(kind: AlgebraKind, r: usize, n: usize, d: usize) -> Self {
        let m = int(n as i64) / int(r as i64);
        Self { kind, r, n, d, m }
    }

    /// `ℝ^p` with componentwise product (rank `p`).
    pub fn rank1_product(p: usize) -> Self {
        assert!(p >= 1, "Rank1Product needs p ≥ 1");
        Self::build(AlgebraKind::Rank1Product(p), p, p, 0)
    }

    /// Lorentz algebra of dimension `n ≥ 2` (rank 2, `d = n − 2`).
    pub fn lorentz(n: usize) -> Self {
        assert!(n >= 2, "Lorentz algebra needs n ≥ 2");
        Self::build(AlgebraKind::Lorentz(n), 2, n, n - 2)
    }

    /// `Sym(n)` (rank `n`, dimension `n(n+1)/2`, `d = 1`).
    pub fn sym(n: usize) -> Self {
        assert!(n >= 1, "Sym(n) needs n ≥ 1");
        Self::build(AlgebraKind::SymMatrices(n), n, n * (n + 1) / 2, 1)
    }

    /// Direct sum of the given algebras.
    pub fn direct_sum(parts: Vec<AlgebraDescriptor>) -> Self {
        assert!(!parts.is_empty(), "direct sum needs at least one summand");
        let r = parts.iter().map(|p| p.r).sum();
        let n = parts.iter().map(|p| p.n).sum();
        Self::build(AlgebraKind::DirectSum(parts), r, n, 0)
    }

    /// True for simple algebras (`ℝ`, Lorentz with `n ≥ 3`, `Sym(n)`).
    pub fn is_simple(&self) -> bool {
        match &self.kind {
            AlgebraKind::Rank1Product(p) => *p == 1,
            AlgebraKind::Lorentz(n) => *n >= 3,
            AlgebraKind::SymMatrices(_) => true,
            AlgebraKind::DirectSum(parts) => parts.len() == 1 && parts[0].is_simple(),
        }
    }

    /// Diagonal of the Gram matrix of the coordinate basis under the trace form.
    pub fn gram_diagonal(&self) -> Vec<f64> {
        match &self.kind {
            AlgebraKind::Rank1Product(p) => vec![1.0; *p],
            AlgebraKind::Lorentz(n) => vec![2.0; *n],
            AlgebraKind::SymMatrices(_) => vec![1.0; self.n],
            AlgebraKind::DirectSum(parts) => parts.iter().flat_map(|p| p.gram_diagonal()).collect(),
        }
    }
}

/// An element of a Jordan algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanElement {
    /// The algebra the element lives in.
    pub algebra: AlgebraDescriptor,
    /// Coordinates (length `algebra.n`).
    pub coords: Vec<f64>,
}

impl JordanElement {
    /// Wraps coordinates, checking their number.
    pub fn new(algebra: &AlgebraDescriptor, coords: Vec<f64>) -> Result<Self, JordanError> {
        if coords.len() != algebra.n {
            return Err(JordanError::DimensionMismatch { expected: algebra.n, found: coords.len() });
        }
        Ok(Self { algebra: algebra.clone(), coords })
    }

    fn wrap(algebra: &AlgebraDescriptor, coords: Vec<f64>) -> Self {
        Self { algebra: algebra.clone(), coords }
    }

    /// Coordinate-wise linear combination `a·self + b·other`.
    pub fn lincomb(&self, a: f64, other: &Self, b: f64) -> Result<Self, JordanError> {
        same(self, other)?;
        let c = self.coords.iter().zip(&other.coords).map(|(x, y)| a * x + b * y).collect();
        Ok(Self::wrap(&self.algebra, c))
    }

    /// Scalar multiple.
    pub fn scaled(&self, a: f64) -> Self {
        Self::wrap(&self.algebra, self.coords.iter().map(|x| a * x).collect())
    }

    /// Coordinates as an `nalgebra` vector.
    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.coords)
    }
}

/// A linear endomorphism of a Jordan algebra, as a matrix on coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    /// The algebra acted upon.
    pub algebra: AlgebraDescriptor,
    /// `n × n` matrix acting on coordinate columns.
    pub matrix: DMatrix<f64>,
}

impl LinearMap {
    /// Wraps a square matrix of the right size.
    pub fn new(algebra: &AlgebraDescriptor, matrix: DMatrix<f64>) -> Result<Self, JordanError> {
        if matrix.nrows() != algebra.n || matrix.ncols() != algebra.n {
            return Err(JordanError::DimensionMismatch { expected: algebra.n, found: matrix.nrows() });
        }
        Ok(Self { algebra: algebra.clone(), matrix })
    }

    /// The identity map.
    pub fn identity(algebra: &AlgebraDescriptor) -> Self {
        Self { algebra: algebra.clone(), matrix: DMatrix::identity(algebra.n, algebra.n) }
    }

    /// Applies the map to an element.
    pub fn apply(&self, x: &JordanElement) -> Result<JordanElement, JordanError> {
        if x.algebra != self.algebra {
            return Err(JordanError::AlgebraMismatch);
        }
        let y = &self.matrix * x.to_vector();
        Ok(JordanElement::wrap(&self.algebra, y.iter().copied().collect()))
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, JordanError> {
        if self.algebra != other.algebra {
            return Err(JordanError::AlgebraMismatch);
        }
        Ok(Self { algebra: self.algebra.clone(), matrix: &self.matrix * &other.matrix })
    }

    /// Adjoint with respect to the trace form.
    pub fn adjoint(&self) -> Self {
        let g = self.algebra.gram_diagonal();
        let mut m = self.matrix.transpose();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                m[(i, j)] *= g[j] / g[i];
            }
        }
        Self { algebra: self.algebra.clone(), matrix: m }
    }

    /// Inverse map.
    pub fn inverse(&self) -> Result<Self, JordanError> {
        let inv = self.matrix.clone().try_inverse().ok_or(JordanError::Singular)?;
        Ok(Self { algebra: self.algebra.clone(), matrix: inv })
    }

    /// Determinant of the matrix.
    pub fn det(&self) -> f64 {
        self.matrix.determinant()
    }
}

fn same(x: &JordanElement, y: &JordanElement) -> Result<(), JordanError> {
    if x.algebra != y.algebra {
        Err(JordanError::AlgebraMismatch)
    } else {
        Ok(())
    }
}

fn sym_unpack(n: usize, c: &[f64]) -> DMatrix<f64> {
    let s = std::f64::consts::SQRT_2;
    let mut m = DMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            let v = if i == j { c[k] } else { c[k] / s };
            m[(i, j)] = v;
            m[(j, i)] = v;
            k += 1;
        }
    }
    m
}

fn sym_pack(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let s = std::f64::consts::SQRT_2;
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push(if i == j { m[(i, i)] } else { s * 0.5 * (m[(i, j)] + m[(j, i)]) });
        }
    }
    out
}

/// Packs a symmetric matrix into `Sym(n)` coordinates.
pub fn sym_from_matrix(m: &DMatrix<f64>) -> JordanElement {
    JordanElement::wrap(&AlgebraDescriptor::sym(m.nrows()), sym_pack(m))
}

/// Unpacks `Sym(n)` coordinates into a symmetric matrix.
pub fn sym_to_matrix(x: &JordanElement) -> Result<DMatrix<f64>, JordanError> {
    match x.algebra.kind {
        AlgebraKind::SymMatrices(n) => Ok(sym_unpack(n, &x.coords)),
        _ => Err(JordanError::InvalidAlgebra("expected Sym(n)".into())),
    }
}

fn split<'a>(parts: &[AlgebraDescriptor], c: &'a [f64]) -> Vec<&'a [f64]> {
    let mut out = Vec::with_capacity(parts.len());
    let mut off = 0;
    for p in parts {
        out.push(&c[off..off + p.n]);
        off += p.n;
    }
    out
}

fn prod_raw(a: &AlgebraDescriptor, x: &[f64], y: &[f64]) -> Vec<f64> {
    match &a.kind {
        AlgebraKind::Rank1Product(_) => x.iter().zip(y).map(|(a, b)| a * b).collect(),
        AlgebraKind::Lorentz(n) => {
            let mut out = vec![0.0; *n];
            out[0] = x.iter().zip(y).map(|(a, b)| a * b).sum();
            for k in 1..*n {
                out[k] = x[0] * y[k] + y[0] * x[k];
            }
            out
        }
        AlgebraKind::SymMatrices(n) => {
            let xm = sym_unpack(*n, x);
            let ym = sym_unpack(*n, y);
            let p = (&xm * &ym + &ym * &xm) * 0.5;
            sym_pack(&p)
        }
        AlgebraKind::DirectSum(parts) => {
            let xs = split(parts, x);
            let ys = split(parts, y);
            parts.iter().zip(xs).zip(ys).flat_map(|((p, a), b)| prod_raw(p, a, b)).collect()
        }
    }
}

fn identity_raw(a: &AlgebraDescriptor) -> Vec<f64> {
    match &a.kind {
        AlgebraKind::Rank1Product(p) => vec![1.0; *p],
        AlgebraKind::Lorentz(n) => {
            let mut v = vec![0.0; *n];
            v[0] = 1.0;
            v
        }
        AlgebraKind::SymMatrices(n) => sym_pack(&DMatrix::identity(*n, *n)),
        AlgebraKind::DirectSum(parts) => parts.iter().flat_map(identity_raw).collect(),
    }
}

fn trace_raw(a: &AlgebraDescriptor, x: &[f64]) -> f64 {
    match &a.kind {
        AlgebraKind::Rank1Product(_) => x.iter().sum(),
        AlgebraKind::Lorentz(_) => 2.0 * x[0],
        AlgebraKind::SymMatrices(n) => sym_unpack(*n, x).trace(),
        AlgebraKind::DirectSum(parts) => parts.iter().zip(split(parts, x)).map(|(p, c)| trace_raw(p, c)).sum(),
    }
}

fn det_raw(a: &AlgebraDescriptor, x: &[f64]) -> f64 {
    match &a.kind {
        AlgebraKind::Rank1Product(_) => x.iter().product(),
        AlgebraKind::Lorentz(_) => x[0] * x[0] - x[1..].iter().map(|v| v * v).sum::<f64>(),
        AlgebraKind::SymMatrices(n) => sym_unpack(*n, x).determinant(),
        AlgebraKind::DirectSum(parts) => parts.iter().zip(split(parts, x)).map(|(p, c)| det_raw(p, c)).product(),
    }
}

fn in_cone_raw(a: &AlgebraDescriptor, x: &[f64]) -> bool {
    match &a.kind {
        AlgebraKind::Rank1Product(_) => x.iter().all(|&v| v > 0.0),
        AlgebraKind::Lorentz(_) => x[0] > 0.0 && det_raw(a, x) > 0.0,
        AlgebraKind::SymMatrices(n) => {
            let e = SymmetricEigen::new(sym_unpack(*n, x));
            e.eigenvalues.iter().all(|&l| l > 0.0)
        }
        AlgebraKind::DirectSum(parts) => parts.iter().zip(split(parts, x)).all(|(p, c)| in_cone_raw(p, c)),
    }
}

fn sym_spectral_map(n: usize, x: &[f64], f: impl Fn(f64) -> f64) -> Vec<f64> {
    let e = SymmetricEigen::new(sym_unpack(n, x));
    let d = DMatrix::from_diagonal(&e.eigenvalues.map(f));
    sym_pack(&(&e.eigenvectors * d * e.eigenvectors.transpose()))
}

fn sqrt_raw(a: &AlgebraDescriptor, x: &[f64]) -> Vec<f64> {
    match &a.kind {
        AlgebraKind::Rank1Product(_) => x.iter().map(|v| v.sqrt()).collect(),
        AlgebraKind::Lorentz(n) => {
            let q = det_raw(a, x).sqrt();
            let x1 = ((x[0] + q) / 2.0).sqrt();
            let mut out = vec![0.0; *n];
            out[0] = x1;
            for k in 1..*n {
                out[k] = x[k] / (2.0 * x1);
            }
            out
        }
        AlgebraKind::SymMatrices(n) => sym_spectral_map(*n, x, f64::sqrt),
        AlgebraKind::DirectSum(parts) => parts.iter().zip(split(parts, x)).flat_map(|(p, c)| sqrt_raw(p, c)).collect(),
    }
}

fn inverse_raw(a: &AlgebraDescriptor, x: &[f64]) -> Option<Vec<f64>> {
    match &a.kind {
        AlgebraKind::Rank1Product(_) => {
            if x.contains(&0.0) {
                None
            } else {
                Some(x.iter().map(|v| 1.0 / v).collect())
            }
        }
        AlgebraKind::Lorentz(n) => {
            let dl = det_raw(a, x);
            if dl == 0.0 {
                return None;
            }
            let mut out = vec![0.0; *n];
            out[0] = x[0] / dl;
            for k in 1..*n {
                out[k] = -x[k] / dl;
            }
            Some(out)
        }
        AlgebraKind::SymMatrices(n) => {
            let m = sym_unpack(*n, x);
            if m.determinant() == 0.0 {
                return None;
            }
            m.try_inverse().map(|inv| sym_pack(&inv))
        }
        AlgebraKind::DirectSum(parts) => {
            let mut out = Vec::with_capacity(a.n);
            for (p, c) in parts.iter().zip(split(parts, x)) {
                out.extend(inverse_raw(p, c)?);
            }
            Some(out)
        }
    }
}

/// The unit element `e`.
pub fn identity(algebra: &AlgebraDescriptor) -> JordanElement {
    JordanElement::wrap(algebra, identity_raw(algebra))
}

/// Jordan product `x·y`.
pub fn product(x: &JordanElement, y: &JordanElement) -> Result<JordanElement, JordanError> {
    same(x, y)?;
    Ok(JordanElement::wrap(&x.algebra, prod_raw(&x.algebra, &x.coords, &y.coords)))
}

/// Trace form `(x|y) = tr(x·y)`.
pub fn trace_form(x: &JordanElement, y: &JordanElement) -> Result<f64, JordanError> {
    same(x, y)?;
    let g = x.algebra.gram_diagonal();
    Ok(x.coords.iter().zip(&y.coords).zip(g).map(|((a, b), w)| a * b * w).sum())
}

/// Multiplication operator `L(x): y ↦ x·y`.
pub fn lmap(x: &JordanElement) -> LinearMap {
    let n = x.algebra.n;
    let mut m = DMatrix::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = prod_raw(&x.algebra, &x.coords, &e);
        for i in 0..n {
            m[(i, j)] = col[i];
        }
        e[j] = 0.0;
    }
    LinearMap { algebra: x.algebra.clone(), matrix: m }
}

/// Quadratic representation `P(x) = 2L(x)² − L(x²)`.
pub fn quad_rep(x: &JordanElement) -> LinearMap {
    let l = lmap(x);
    let x2 = JordanElement::wrap(&x.algebra, prod_raw(&x.algebra, &x.coords, &x.coords));
    let m = &l.matrix * &l.matrix * 2.0 - lmap(&x2).matrix;
    LinearMap { algebra: x.algebra.clone(), matrix: m }
}

/// Polarized quadratic representation `P(x,y) = L(x)L(y) + L(y)L(x) − L(xy)`.
pub fn quad_rep_polarized(x: &JordanElement, y: &JordanElement) -> Result<LinearMap, JordanError> {
    let xy = product(x, y)?;
    let (lx, ly) = (lmap(x), lmap(y));
    let m = &lx.matrix * &ly.matrix + &ly.matrix * &lx.matrix - lmap(&xy).matrix;
    Ok(LinearMap { algebra: x.algebra.clone(), matrix: m })
}

/// Box operator `x□y = L(xy) + [L(x), L(y)]`.
pub fn box_op(x: &JordanElement, y: &JordanElement) -> Result<LinearMap, JordanError> {
    let xy = product(x, y)?;
    let (lx, ly) = (lmap(x), lmap(y));
    let m = lmap(&xy).matrix + &lx.matrix * &ly.matrix - &ly.matrix * &lx.matrix;
    Ok(LinearMap { algebra: x.algebra.clone(), matrix: m })
}

/// Jordan trace.
pub fn trace(x: &JordanElement) -> f64 {
    trace_raw(&x.algebra, &x.coords)
}

/// Jordan determinant.
pub fn det(x: &JordanElement) -> f64 {
    det_raw(&x.algebra, &x.coords)
}

/// Membership in the open symmetric cone (strict inequalities).
pub fn in_cone(x: &JordanElement) -> bool {
    in_cone_raw(&x.algebra, &x.coords)
}

/// Square root inside the cone.
pub fn sqrt(x: &JordanElement) -> Result<JordanElement, JordanError> {
    if !in_cone(x) {
        return Err(JordanError::NotInCone);
    }
    Ok(JordanElement::wrap(&x.algebra, sqrt_raw(&x.algebra, &x.coords)))
}

/// Jordan inverse.
pub fn inverse(x: &JordanElement) -> Result<JordanElement, JordanError> {
    inverse_raw(&x.algebra, &x.coords).map(|c| JordanElement::wrap(&x.algebra, c)).ok_or(JordanError::Singular)
}

/// Real power `x^s` of a cone element, by spectral calculus.
pub fn cone_power(x: &JordanElement, s: f64) -> Result<JordanElement, JordanError> {
    if !in_cone(x) {
        return Err(JordanError::NotInCone);
    }
    fn go(a: &AlgebraDescriptor, x: &[f64], s: f64) -> Vec<f64> {
        match &a.kind {
            AlgebraKind::Rank1Product(_) => x.iter().map(|v| v.powf(s)).collect(),
            AlgebraKind::Lorentz(n) => {
                let nu: f64 = x[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
                let (l1, l2) = (x[0] + nu, x[0] - nu);
                let (p1, p2) = (l1.powf(s), l2.powf(s));
                let mut out = vec![0.0; *n];
                out[0] = 0.5 * (p1 + p2);
                if nu > 0.0 {
                    for k in 1..*n {
                        out[k] = 0.5 * (p1 - p2) * x[k] / nu;
                    }
                }
                out
            }
            AlgebraKind::SymMatrices(n) => sym_spectral_map(*n, x, |l| l.powf(s)),
            AlgebraKind::DirectSum(parts) => parts.iter().zip(split(parts, x)).flat_map(|(p, c)| go(p, c, s)).collect(),
        }
    }
    Ok(JordanElement::wrap(&x.algebra, go(&x.algebra, &x.coords, s)))
}

/// Spectral decomposition of a Lorentz element: `x = λ₁c₁ + λ₂c₂` with
/// `λ₁ ≥ λ₂`. For `u = 0` the frame `c_{1,2} = ½(e ± e₂)` is returned.
pub fn spectral_rank2(x: &JordanElement) -> Result<((f64, f64), JordanElement, JordanElement), JordanError> {
    let n = match x.algebra.kind {
        AlgebraKind::Lorentz(n) => n,
        _ => return Err(JordanError::NotLorentz),
    };
    let nu: f64 = x.coords[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut dir = vec![0.0; n];
    if nu > 0.0 {
        for k in 1..n {
            dir[k] = x.coords[k] / nu;
        }
    } else {
        dir[1] = 1.0;
    }
    let mut c1 = vec![0.5; 1];
    let mut c2 = vec![0.5; 1];
    c1.extend(dir[1..].iter().map(|d| 0.5 * d));
    c2.extend(dir[1..].iter().map(|d| -0.5 * d));
    Ok(((x.coords[0] + nu, x.coords[0] - nu), JordanElement::wrap(&x.algebra, c1), JordanElement::wrap(&x.algebra, c2)))
}

/// Eigendecomposition of a `Sym(n)` element: eigenvalues in decreasing
/// order and the matching Jordan frame of rank-one idempotents.
pub fn spectral_sym(x: &JordanElement) -> Result<(Vec<f64>, Vec<JordanElement>), JordanError> {
    let m = sym_to_matrix(x)?;
    let n = m.nrows();
    let e = SymmetricEigen::new(m);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| e.eigenvalues[b].total_cmp(&e.eigenvalues[a]));
    let mut vals = Vec::with_capacity(n);
    let mut frame = Vec::with_capacity(n);
    for i in idx {
        vals.push(e.eigenvalues[i]);
        let v = e.eigenvectors.column(i);
        let proj = v * v.transpose();
        frame.push(JordanElement::wrap(&x.algebra, sym_pack(&proj)));
    }
    Ok((vals, frame))
}

/// Deterministic interior probe points used to test cone preservation.
fn probe_points(a: &AlgebraDescriptor) -> Vec<Vec<f64>> {
    let e = identity_raw(a);
    let mut pts = vec![e.clone()];
    for j in 0..a.n {
        for s in [0.45, -0.45] {
            let mut p = e.clone();
            p[j] += s;
            if in_cone_raw(a, &p) {
                pts.push(p);
            }
        }
    }
    pts
}

/// Polar decomposition `g = P(x)·k` of a cone-preserving map, with
/// `x = (g·e)^{1/2} ∈ Ω` and `k = P(x)^{−1}g` orthogonal and fixing `e`.
pub fn polar_decompose(g: &LinearMap) -> Result<(JordanElement, LinearMap), JordanError> {
    let a = &g.algebra;
    for p in probe_points(a) {
        let img = &g.matrix * DVector::from_vec(p);
        if !in_cone_raw(a, img.as_slice()) {
            return Err(JordanError::NotConePreserving);
        }
    }
    let ge = g.apply(&identity(a))?;
    let x = sqrt(&ge)?;
    let pinv = quad_rep(&inverse(&x)?);
    let k = pinv.compose(g)?;
    Ok((x, k))
}

/// Draws a point of the cone with moderate condition number.
pub fn sample_in_cone<R: Rng + ?Sized>(a: &AlgebraDescriptor, rng: &mut R) -> JordanElement {
    fn go<R: Rng + ?Sized>(a: &AlgebraDescriptor, rng: &mut R) -> Vec<f64> {
        match &a.kind {
            AlgebraKind::Rank1Product(p) => (0..*p).map(|_| rng.random_range(0.2..3.0)).collect(),
            AlgebraKind::Lorentz(n) => {
                let x1: f64 = rng.random_range(0.5..3.0);
                let mut u: Vec<f64> = (1..*n).map(|_| rng.random_range(-1.0..1.0)).collect();
                let nu = u.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-12);
                let r: f64 = rng.random_range(0.0..0.9) * x1;
                for v in &mut u {
                    *v *= r / nu;
                }
                let mut out = vec![x1];
                out.extend(u);
                out
            }
            AlgebraKind::SymMatrices(n) => {
                let b = DMatrix::from_fn(*n, *n, |_, _| rng.random_range(-1.0..1.0));
                let m = &b * b.transpose() + DMatrix::identity(*n, *n) * 0.3;
                sym_pack(&m)
            }
            AlgebraKind::DirectSum(parts) => parts.iter().flat_map(|p| go(p, rng)).collect(),
        }
    }
    JordanElement::wrap(a, go(a, rng))
}

/// Draws an arbitrary element with coordinates in `(−2, 2)`.
pub fn sample_element<R: Rng + ?Sized>(a: &AlgebraDescriptor, rng: &mut R) -> JordanElement {
    JordanElement::wrap(a, (0..a.n).map(|_| rng.random_range(-2.0..2.0)).collect())
}

/// Lorentz boost of rapidity `s` in the plane of coordinates 0 and `axis`.
pub fn lorentz_boost(a: &AlgebraDescriptor, axis: usize, s: f64) -> Result<LinearMap, JordanError> {
    if !matches!(a.kind, AlgebraKind::Lorentz(_)) {
        return Err(JordanError::NotLorentz);
    }
    let mut m = DMatrix::identity(a.n, a.n);
    m[(0, 0)] = s.cosh();
    m[(axis, axis)] = s.cosh();
    m[(0, axis)] = s.sinh();
    m[(axis, 0)] = s.sinh();
    LinearMap::new(a, m)
}

/// Rotation by angle `th` in the plane of spatial coordinates `i < j` of a
/// Lorentz algebra.
pub fn lorentz_rotation(a: &AlgebraDescriptor, i: usize, j: usize, th: f64) -> Result<LinearMap, JordanError> {
    if !matches!(a.kind, AlgebraKind::Lorentz(_)) || i == 0 || j == 0 || i == j {
        return Err(JordanError::NotLorentz);
    }
    let mut m = DMatrix::identity(a.n, a.n);
    m[(i, i)] = th.cos();
    m[(j, j)] = th.cos();
    m[(i, j)] = -th.sin();
    m[(j, i)] = th.sin();
    LinearMap::new(a, m)
}

/// Congruence `X ↦ A X Aᵀ` on `Sym(n)` as a linear map on packed coordinates.
pub fn sym_congruence(a_mat: &DMatrix<f64>) -> LinearMap {
    let n = a_mat.nrows();
    let alg = AlgebraDescriptor::sym(n);
    let dim = alg.n;
    let mut m = DMatrix::zeros(dim, dim);
    let mut e = vec![0.0; dim];
    for j in 0..dim {
        e[j] = 1.0;
        let x = sym_unpack(n, &e);
        let y = a_mat * x * a_mat.transpose();
        let col = sym_pack(&y);
        for i in 0..dim {
            m[(i, j)] = col[i];
        }
        e[j] = 0.0;
    }
    LinearMap { algebra: alg, matrix: m }
}
