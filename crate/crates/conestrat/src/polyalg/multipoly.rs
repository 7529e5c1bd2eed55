//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{PolyError, Rational};

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// A polynomial in `nvars` variables over the rationals.
///
/// Terms are kept in a sorted map keyed by exponent vector, so iteration
/// order (and therefore every serialized form) is deterministic. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    /// The zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    /// The constant polynomial `1`.
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    /// The single term `c · x^exps`.
    pub fn monomial(nvars: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length must equal nvars");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, iter: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in iter {
            if e.len() != nvars {
                return Err(PolyError::ArityMismatch { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn from_coeffs(coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c.clone());
        }
        p
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of stored (nonzero) terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over (exponents, coefficient) in increasing lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of `x^exps` (zero if absent).
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c · x^exps` in place.
    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.nvars);
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self { nvars: self.nvars, terms }
    }

    /// Ascending coefficient list of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Vec<Rational> {
        assert_eq!(self.nvars, 1, "univariate_coeffs requires one variable");
        let deg = self.degree().unwrap_or(0) as usize;
        (0..=deg).map(|k| self.coeff(&[k as u32])).collect()
    }

    fn check_arity(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch: {} vs {}", self.nvars, other.nvars);
    }

    /// Sum, reporting an arity mismatch as an error.
    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(self + other)
    }

    /// Product, reporting an arity mismatch as an error.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(self * other)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        Self { nvars: self.nvars, terms }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * Rational::from_integer(BigInt::from(e[var])));
        }
        out
    }

    /// Euler operator `Σ x_i ∂_i` restricted to the listed variables.
    pub fn euler(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let w: u32 = vars.iter().map(|&i| e[i]).sum();
            out.add_term(e.clone(), c * Rational::from_integer(BigInt::from(w)));
        }
        out
    }

    /// Laplacian `Σ ∂²/∂x_i²` over the listed variables.
    pub fn laplacian(&self, vars: &[usize]) -> Self {
        let signs: Vec<(usize, i32)> = vars.iter().map(|&v| (v, 1)).collect();
        self.signed_laplacian(&signs)
    }

    /// Second-order operator `Σ s_i ∂²/∂x_i²` with `s_i` given per variable
    /// (length `nvars`; zero entries skip the variable).
    pub fn signature_laplacian(&self, signs: &[i32]) -> Self {
        assert_eq!(signs.len(), self.nvars, "one sign per variable expected");
        let pairs: Vec<(usize, i32)> =
            signs.iter().enumerate().filter(|(_, s)| **s != 0).map(|(i, s)| (i, *s)).collect();
        self.signed_laplacian(&pairs)
    }

    fn signed_laplacian(&self, pairs: &[(usize, i32)]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            for &(i, s) in pairs {
                if e[i] < 2 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] -= 2;
                let f = i64::from(e[i]) * i64::from(e[i] - 1) * i64::from(s);
                out.add_term(e2, c * Rational::from_integer(BigInt::from(f)));
            }
        }
        out
    }

    /// Substitutes `x_i ↦ subs[i]`; all substitutes share one arity, which
    /// becomes the arity of the result.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<Self, PolyError> {
        if subs.len() != self.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, found: subs.len() });
        }
        let m = match subs.first() {
            Some(s) => s.nvars,
            None => return Ok(Self::constant(0, self.constant_term())),
        };
        if let Some(bad) = subs.iter().find(|s| s.nvars != m) {
            return Err(PolyError::ArityMismatch { expected: m, found: bad.nvars });
        }
        let mut cache: Vec<Vec<MultiPoly>> = subs.iter().map(|s| vec![Self::one(m), s.clone()]).collect();
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            let mut term = Self::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = &cache[i][cache[i].len() - 1] * &subs[i];
                    cache[i].push(next);
                }
                term = &term * &cache[i][k as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Affine change of variables `x ↦ A·y + b`, where `A` has `nvars` rows
    /// and the new arity equals the number of columns.
    pub fn compose_affine(&self, a: &[Vec<Rational>], b: &[Rational]) -> Result<Self, PolyError> {
        if a.len() != self.nvars || b.len() != self.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, found: a.len().min(b.len()) });
        }
        let m = a.first().map_or(0, |r| r.len());
        let mut subs = Vec::with_capacity(self.nvars);
        for (row, bi) in a.iter().zip(b) {
            if row.len() != m {
                return Err(PolyError::ArityMismatch { expected: m, found: row.len() });
            }
            let mut s = Self::constant(m, bi.clone());
            for (j, aij) in row.iter().enumerate() {
                s = &s + &Self::var(m, j).scale(aij);
            }
            subs.push(s);
        }
        self.compose(&subs)
    }

    /// Re-embeds into `new_nvars` variables, mapping variable `i` to `map[i]`.
    pub fn remap(&self, new_nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars, "one target index per variable expected");
        let mut out = Self::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_nvars];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Re-embeds into `new_nvars` variables, shifting every index by `offset`.
    pub fn shift_vars(&self, new_nvars: usize, offset: usize) -> Self {
        let map: Vec<usize> = (0..self.nvars).map(|i| i + offset).collect();
        self.remap(new_nvars, &map)
    }

    /// Splits into components by the exponent pattern on `vars`:
    /// `self = Σ_b x_vars^b · coeff_b`, with `coeff_b` free of `vars`.
    pub fn split_by(&self, vars: &[usize]) -> BTreeMap<Exponents, MultiPoly> {
        let mut out: BTreeMap<Exponents, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Exponents = vars.iter().map(|&i| e[i]).collect();
            let mut rest = e.clone();
            for &i in vars {
                rest[i] = 0;
            }
            out.entry(key).or_insert_with(|| Self::zero(self.nvars)).add_term(rest, c.clone());
        }
        out
    }

    /// Reduces modulo `x_var² = square`, leaving `var` with degree at most one.
    /// `square` must not involve `var`.
    pub fn reduce_square(&self, var: usize, square: &MultiPoly) -> Result<Self, PolyError> {
        if square.nvars != self.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, found: square.nvars });
        }
        let mut out = Self::zero(self.nvars);
        let mut powers = vec![Self::one(self.nvars)];
        for (e, c) in &self.terms {
            let half = (e[var] / 2) as usize;
            while powers.len() <= half {
                let next = &powers[powers.len() - 1] * square;
                powers.push(next);
            }
            let mut e2 = e.clone();
            e2[var] %= 2;
            let term = Self::monomial(self.nvars, e2, c.clone());
            out = &out + &(&term * &powers[half]);
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = rational_to_f64(c);
                for (x, &k) in point.iter().zip(e) {
                    if k > 0 {
                        t *= x.powi(k as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Complex evaluation.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = Complex64::new(rational_to_f64(c), 0.0);
                for (x, &k) in point.iter().zip(e) {
                    if k > 0 {
                        t *= x.powi(k as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// A floating-point copy suited to repeated evaluation.
    pub fn to_f64(&self) -> F64Poly {
        F64Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), rational_to_f64(c))).collect() }
    }

    /// Canonical JSON-ready form.
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { exps: e.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
    }

    /// Parses the canonical JSON form.
    pub fn from_json(j: &PolyJson) -> Result<Self, PolyError> {
        let mut out = Self::zero(j.nvars);
        for t in &j.terms {
            if t.exps.len() != j.nvars {
                return Err(PolyError::ArityMismatch { expected: j.nvars, found: t.exps.len() });
            }
            let num: BigInt = t.num.parse().map_err(|_| PolyError::Parse(t.num.clone()))?;
            let den: BigInt = t.den.parse().map_err(|_| PolyError::Parse(t.den.clone()))?;
            if den.is_zero() {
                return Err(PolyError::Parse("zero denominator".into()));
            }
            out.add_term(t.exps.clone(), Rational::new(num, den));
        }
        Ok(out)
    }
}

/// Converts an exact rational to the nearest `f64`.
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// A polynomial with `f64` coefficients, for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct F64Poly {
    nvars: usize,
    terms: Vec<(Exponents, f64)>,
}

impl F64Poly {
    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Evaluates at a real point.
    pub fn eval(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (x, &k) in point.iter().zip(e) {
                match k {
                    0 => {}
                    1 => t *= x,
                    2 => t *= x * x,
                    _ => t *= x.powi(k as i32),
                }
            }
            acc += t;
        }
        acc
    }
}

/// One term of the canonical JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    /// Exponent vector.
    pub exps: Vec<u32>,
    /// Numerator as a decimal string.
    pub num: String,
    /// Denominator as a decimal string.
    pub den: String,
}

/// Canonical JSON form `{nvars, terms: [{exps, num, den}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    /// Number of variables.
    pub nvars: usize,
    /// Terms in lexicographic exponent order.
    pub terms: Vec<TermJson>,
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let is_const = e.iter().all(|&k| k == 0);
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut firstv = true;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !firstv {
                    write!(f, "*")?;
                }
                firstv = false;
                if k == 1 {
                    write!(f, "x{}", i + 1)?;
                } else {
                    write!(f, "x{}^{}", i + 1, k)?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect();
        MultiPoly { nvars: self.nvars, terms }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_arity(rhs);
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
