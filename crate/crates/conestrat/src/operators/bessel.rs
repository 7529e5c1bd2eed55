//! The Bessel operator `B_λ = P(∂/∂x)x + λ ∂/∂x` in coordinates, for the
//! algebras whose structure constants are rational.

use num_traits::{One, Zero};

use super::{pde, strat, DiffOperatorSpec, OperatorError};
use crate::polyalg::{int, MultiPoly, PolyError, PowPolyFunction, Rational};

/// Euclidean Jordan algebras with rational structure constants in the
/// coordinates used by [`crate::jordan`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselAlgebra {
    /// `ℝ^n` with the componentwise product.
    Rank1Product(usize),
    /// `ℝ × ℝ^{n−1}` with `x∘y = (⟨x,y⟩, x₀y′ + y₀x′)` and trace form `2⟨x,y⟩`.
    Lorentz(usize),
}

impl BesselAlgebra {
    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        match *self {
            BesselAlgebra::Rank1Product(n) | BesselAlgebra::Lorentz(n) => n,
        }
    }

    /// Rank `r`.
    pub fn rank(&self) -> usize {
        match *self {
            BesselAlgebra::Rank1Product(n) => n,
            BesselAlgebra::Lorentz(_) => 2,
        }
    }

    /// Diagonal of the trace-form Gram matrix.
    pub fn gram(&self) -> Rational {
        match self {
            BesselAlgebra::Rank1Product(_) => int(1),
            BesselAlgebra::Lorentz(_) => int(2),
        }
    }

    /// `n / r`.
    pub fn m(&self) -> Rational {
        Rational::new((self.dim() as i64).into(), (self.rank() as i64).into())
    }

    fn product(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        match self {
            BesselAlgebra::Rank1Product(_) => a.iter().zip(b).map(|(x, y)| x * y).collect(),
            BesselAlgebra::Lorentz(n) => {
                let mut out = vec![Rational::zero(); *n];
                out[0] = a.iter().zip(b).map(|(x, y)| x * y).sum();
                for k in 1..*n {
                    out[k] = &a[0] * &b[k] + &b[0] * &a[k];
                }
                out
            }
        }
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// The determinant polynomial `Δ` in the first `dim` of `nvars` variables.
    pub fn det_poly(&self, nvars: usize) -> MultiPoly {
        match *self {
            BesselAlgebra::Rank1Product(n) => {
                (0..n).fold(MultiPoly::one(nvars), |acc, i| &acc * &MultiPoly::var(nvars, i))
            }
            BesselAlgebra::Lorentz(n) => {
                let mut d = &MultiPoly::var(nvars, 0) * &MultiPoly::var(nvars, 0);
                for i in 1..n {
                    d = &d - &(&MultiPoly::var(nvars, i) * &MultiPoly::var(nvars, i));
                }
                d
            }
        }
    }
}

/// `[P(e_k, e_l) e_q]_m`, with `P(a,b) = L(a)L(b) + L(b)L(a) − L(a∘b)`.
pub fn structure_coefficient(alg: &BesselAlgebra, k: usize, l: usize, m: usize, q: usize) -> Rational {
    let (ek, el, eq) = (alg.unit(k), alg.unit(l), alg.unit(q));
    let a = alg.product(&ek, &alg.product(&el, &eq));
    let b = alg.product(&el, &alg.product(&ek, &eq));
    let c = alg.product(&alg.product(&ek, &el), &eq);
    &a[m] + &b[m] - &c[m]
}

/// Numerator `N` of `x^{−1} = N(x)/Δ(x)`, one polynomial per coordinate.
pub fn inverse_numerator(alg: &BesselAlgebra, nvars: usize) -> Vec<MultiPoly> {
    match *alg {
        BesselAlgebra::Rank1Product(n) => (0..n)
            .map(|i| (0..n).filter(|&j| j != i).fold(MultiPoly::one(nvars), |acc, j| &acc * &MultiPoly::var(nvars, j)))
            .collect(),
        BesselAlgebra::Lorentz(n) => {
            (0..n).map(|i| if i == 0 { MultiPoly::var(nvars, 0) } else { -&MultiPoly::var(nvars, i) }).collect()
        }
    }
}

/// Function spaces closed under partial derivatives and multiplication by
/// polynomials.
pub trait FunctionClass: Clone {
    /// Number of variables.
    fn nvars(&self) -> usize;
    /// Partial derivative.
    fn partial(&self, var: usize) -> Self;
    /// Product with a polynomial.
    fn times_poly(&self, q: &MultiPoly) -> Self;
    /// Product with a rational constant.
    fn times_scalar(&self, c: &Rational) -> Self;
    /// Sum.
    fn plus(&self, other: &Self) -> Result<Self, PolyError>;
    /// The zero element of the same space.
    fn zero_like(&self) -> Self;
}

impl FunctionClass for PowPolyFunction {
    fn nvars(&self) -> usize {
        PowPolyFunction::nvars(self)
    }
    fn partial(&self, var: usize) -> Self {
        self.derivative(var)
    }
    fn times_poly(&self, q: &MultiPoly) -> Self {
        self.mul_poly(q)
    }
    fn times_scalar(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn plus(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(other)
    }
    fn zero_like(&self) -> Self {
        PowPolyFunction::zero(self.base().clone())
    }
}

/// Components of `B_λ f` for a Bessel operator acting on the first
/// `alg.dim()` variables of `f`; `lambdas[m]` is the first-order coefficient
/// of component `m`:
/// `(B f)_m = Σ_{k,l} ∂_k∂_l f · [P(e_k,e_l)x]_m / (G_k G_l) + λ_m ∂_m f / G_m`.
pub fn bessel_generic<F: FunctionClass>(
    alg: &BesselAlgebra,
    lambdas: &[Rational],
    f: &F,
) -> Result<Vec<F>, OperatorError> {
    let n = alg.dim();
    if f.nvars() < n || lambdas.len() != n {
        return Err(OperatorError::OutsideClass(format!("need ≥ {n} variables and {n} parameters")));
    }
    let nv = f.nvars();
    let g = alg.gram();
    let g2 = &g * &g;
    let first: Vec<F> = (0..n).map(|k| f.partial(k)).collect();
    let mut second: Vec<Vec<Option<F>>> = vec![vec![None; n]; n];
    for k in 0..n {
        for l in k..n {
            second[k][l] = Some(first[k].partial(l));
        }
    }
    let mut out = Vec::with_capacity(n);
    for m in 0..n {
        let mut acc = first[m].times_scalar(&(&lambdas[m] / &g));
        for k in 0..n {
            for l in 0..n {
                let mut coef = MultiPoly::zero(nv);
                for q in 0..n {
                    let c = structure_coefficient(alg, k, l, m, q);
                    if !c.is_zero() {
                        coef = &coef + &MultiPoly::var(nv, q).scale(&c);
                    }
                }
                if coef.is_zero() {
                    continue;
                }
                let d = second[k.min(l)][k.max(l)].as_ref().expect("filled");
                acc = acc.plus(&d.times_poly(&coef.scale(&(Rational::one() / &g2))))?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Residual of `B_λ(Δ^μ f) = Δ^μ(B_{λ+2μ} f + μ(μ+λ−n/r) x^{−1} f)`, one
/// component per coordinate. `f` must use the determinant of `alg` as base.
pub fn bessel_shift_identity_check(
    alg: &BesselAlgebra,
    lambda: &Rational,
    mu: &Rational,
    f: &PowPolyFunction,
) -> Result<Vec<PowPolyFunction>, OperatorError> {
    let nv = f.nvars();
    if *f.base() != alg.det_poly(nv) {
        return Err(OperatorError::OutsideClass("base must be the algebra determinant".into()));
    }
    let n = alg.dim();
    let lhs = bessel_generic(alg, &vec![lambda.clone(); n], &f.mul_base_pow(mu))?;
    let shifted = lambda + mu * int(2);
    let b = bessel_generic(alg, &vec![shifted; n], f)?;
    let c = mu * (mu + lambda - alg.m());
    let num = inverse_numerator(alg, nv);
    let mut out = Vec::with_capacity(n);
    for m in 0..n {
        let inv_term = f.mul_poly(&num[m]).mul_base_pow(&-Rational::one()).scale(&c);
        let rhs = b[m].add(&inv_term)?.mul_base_pow(mu);
        out.push(lhs[m].sub(&rhs)?);
    }
    Ok(out)
}

/// Applies an operator family; scalar families return one component.
pub fn bessel_apply(spec: &DiffOperatorSpec, f: &PowPolyFunction) -> Result<Vec<PowPolyFunction>, OperatorError> {
    match spec {
        DiffOperatorSpec::BesselRank1(l) => bessel_generic(&BesselAlgebra::Rank1Product(1), std::slice::from_ref(l), f),
        DiffOperatorSpec::BesselLorentz(l, n) => {
            if *n < 2 {
                return Err(OperatorError::InvalidParameter("Lorentz(n) needs n ≥ 2".into()));
            }
            bessel_generic(&BesselAlgebra::Lorentz(*n), &vec![l.clone(); *n], f)
        }
        DiffOperatorSpec::BesselTensorSum(ls) => {
            let comps = bessel_generic(&BesselAlgebra::Rank1Product(ls.len()), ls, f)?;
            let mut acc = f.zero_like();
            for c in &comps {
                acc = acc.add(c)?;
            }
            Ok(vec![acc])
        }
        DiffOperatorSpec::SimplexPDE(ls) => {
            if ls.len() < 2 || f.nvars() != ls.len() - 1 {
                return Err(OperatorError::OutsideClass("simplex operator acts on n−1 variables".into()));
            }
            Ok(vec![f.map_polys(|p| pde::simplex_pde_apply(ls, p).expect("arity checked"))])
        }
        DiffOperatorSpec::BallPDE(alpha, p) => {
            if f.nvars() != *p || f.base().degree().unwrap_or(0) > 0 {
                return Err(OperatorError::OutsideClass(
                    "ball operator acts on plain polynomials in p variables".into(),
                ));
            }
            Ok(vec![f.map_polys(|q| pde::ball_pde_apply(alpha, *p, q).expect("arity checked"))])
        }
        DiffOperatorSpec::StratBesselTensor(ls) => Ok(vec![strat::strat_bessel_tensor(ls, f)?]),
        DiffOperatorSpec::StratBesselLorentz(l, n, p) => strat::strat_bessel_lorentz(l, *n, *p, f),
    }
}
