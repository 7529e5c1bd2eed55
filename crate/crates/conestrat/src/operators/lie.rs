//! The derived action of `𝔤 = 𝔫 ⊕ 𝔩 ⊕ n̄` on functions of the form
//! `e^{i(x|w)}(f_re + i f_im)` in the `L²`-model.

use num_complex::Complex64;
use num_traits::Zero;

use super::bessel::{bessel_generic, BesselAlgebra, FunctionClass};
use super::OperatorError;
use crate::polyalg::{int, rational_to_f64, MultiPoly, PolyError, PowPolyFunction, Rational};

/// `e^{i Σ_m c_m x_m} (re + i·im)`; the phase is kept as its coefficient
/// vector `c` and never expanded.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasedFunction {
    /// Coefficients of the linear phase, one per variable.
    pub phase: Vec<Rational>,
    /// Real part of the amplitude.
    pub re: PowPolyFunction,
    /// Imaginary part of the amplitude.
    pub im: PowPolyFunction,
}

impl PhasedFunction {
    /// A real amplitude without phase.
    pub fn real(f: PowPolyFunction) -> Self {
        let n = f.nvars();
        let im = PowPolyFunction::zero(f.base().clone());
        PhasedFunction { phase: vec![Rational::zero(); n], re: f, im }
    }

    /// `e^{i(x|w)} f` for the trace form of `alg`.
    pub fn with_phase(alg: &BesselAlgebra, w: &[Rational], f: PowPolyFunction) -> Result<Self, OperatorError> {
        let n = f.nvars();
        if w.len() != alg.dim() || n < alg.dim() {
            return Err(OperatorError::OutsideClass("phase vector has the wrong length".into()));
        }
        let g = alg.gram();
        let mut phase = vec![Rational::zero(); n];
        for (c, wi) in phase.iter_mut().zip(w) {
            *c = wi * &g;
        }
        let im = PowPolyFunction::zero(f.base().clone());
        Ok(PhasedFunction { phase, re: f, im })
    }

    /// Numerical value at a point.
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let arg: f64 = self.phase.iter().zip(x).map(|(c, xi)| rational_to_f64(c) * xi).sum();
        Complex64::from_polar(1.0, arg) * Complex64::new(self.re.eval_f64(x), self.im.eval_f64(x))
    }

    /// True iff the amplitude vanishes identically.
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> Self {
        PhasedFunction { phase: self.phase.clone(), re: self.im.scale(&int(-1)), im: self.re.clone() }
    }
}

impl FunctionClass for PhasedFunction {
    fn nvars(&self) -> usize {
        self.re.nvars()
    }

    fn partial(&self, var: usize) -> Self {
        let mut re = self.re.derivative(var);
        let mut im = self.im.derivative(var);
        let c = &self.phase[var];
        if !c.is_zero() {
            re = re.sub(&self.im.scale(c)).expect("same base");
            im = im.add(&self.re.scale(c)).expect("same base");
        }
        PhasedFunction { phase: self.phase.clone(), re, im }
    }

    fn times_poly(&self, q: &MultiPoly) -> Self {
        PhasedFunction { phase: self.phase.clone(), re: self.re.mul_poly(q), im: self.im.mul_poly(q) }
    }

    fn times_scalar(&self, c: &Rational) -> Self {
        PhasedFunction { phase: self.phase.clone(), re: self.re.scale(c), im: self.im.scale(c) }
    }

    fn plus(&self, other: &Self) -> Result<Self, PolyError> {
        if self.phase != other.phase {
            return Err(PolyError::PhaseMismatch);
        }
        Ok(PhasedFunction { phase: self.phase.clone(), re: self.re.add(&other.re)?, im: self.im.add(&other.im)? })
    }

    fn zero_like(&self) -> Self {
        let z = PowPolyFunction::zero(self.re.base().clone());
        PhasedFunction { phase: self.phase.clone(), re: z.clone(), im: z }
    }
}

/// An element `(u, T, v)` of one of the three summands.
#[derive(Clone, Debug, PartialEq)]
pub enum LieElement {
    /// `(u, 0, 0)`.
    N(Vec<Rational>),
    /// `(0, T, 0)` with `T` given as a row-major matrix.
    L(Vec<Vec<Rational>>),
    /// `(0, 0, v)`.
    NBar(Vec<Rational>),
}

fn in_structure_algebra(alg: &BesselAlgebra, t: &[Vec<Rational>]) -> bool {
    let n = alg.dim();
    if t.len() != n || t.iter().any(|r| r.len() != n) {
        return false;
    }
    match alg {
        BesselAlgebra::Rank1Product(_) => (0..n).all(|i| (0..n).all(|j| i == j || t[i][j].is_zero())),
        BesselAlgebra::Lorentz(_) => {
            let tr: Rational = (0..n).map(|i| t[i][i].clone()).sum::<Rational>() / int(n as i64);
            let sign = |i: usize| if i == 0 { int(1) } else { int(-1) };
            (0..n).all(|i| {
                (0..n).all(|j| {
                    let s_ij = if i == j { &t[i][j] - &tr } else { t[i][j].clone() };
                    let s_ji = if i == j { &t[j][i] - &tr } else { t[j][i].clone() };
                    (&s_ji * sign(j) + &s_ij * sign(i)).is_zero()
                })
            })
        }
    }
}

/// `dρ_λ(u,0,0)f = i(u|x)f`, `dρ_λ(0,T,0)f = (λ/2m)Tr(T*)f + D_{T*x}f` and
/// `dρ_λ(0,0,v)f = i(v|B_λ f)`, exact on [`PhasedFunction`].
pub fn lie_action(
    alg: &BesselAlgebra,
    lambda: &Rational,
    elem: &LieElement,
    f: &PhasedFunction,
) -> Result<PhasedFunction, OperatorError> {
    let n = alg.dim();
    let nv = f.nvars();
    if nv < n {
        return Err(OperatorError::OutsideClass(format!("need ≥ {n} variables")));
    }
    let g = alg.gram();
    match elem {
        LieElement::N(u) => {
            if u.len() != n {
                return Err(OperatorError::InvalidParameter("u has the wrong length".into()));
            }
            let mut q = MultiPoly::zero(nv);
            for (m, um) in u.iter().enumerate() {
                q = &q + &MultiPoly::var(nv, m).scale(&(um * &g));
            }
            Ok(f.times_poly(&q).times_i())
        }
        LieElement::L(t) => {
            if !in_structure_algebra(alg, t) {
                return Err(OperatorError::Unsupported("T is not in the structure algebra".into()));
            }
            let trace: Rational = (0..n).map(|i| t[i][i].clone()).sum();
            let mut acc = f.times_scalar(&(lambda * trace / (alg.m() * int(2))));
            for m in 0..n {
                // (T* x)_m = Σ_j T_{jm} x_j since the trace form is a multiple of the identity.
                let mut y = MultiPoly::zero(nv);
                for (j, row) in t.iter().enumerate() {
                    if !row[m].is_zero() {
                        y = &y + &MultiPoly::var(nv, j).scale(&row[m]);
                    }
                }
                if !y.is_zero() {
                    acc = acc.plus(&f.partial(m).times_poly(&y))?;
                }
            }
            Ok(acc)
        }
        LieElement::NBar(v) => {
            if v.len() != n {
                return Err(OperatorError::InvalidParameter("v has the wrong length".into()));
            }
            let comps = bessel_generic(alg, &vec![lambda.clone(); n], f)?;
            let mut acc = f.zero_like();
            for (c, vm) in comps.iter().zip(v) {
                if !vm.is_zero() {
                    acc = acc.plus(&c.times_scalar(&(vm * &g)))?;
                }
            }
            Ok(acc.times_i())
        }
    }
}
