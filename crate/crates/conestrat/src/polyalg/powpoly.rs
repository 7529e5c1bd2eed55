//! Finite sums `Σ_μ Δ^μ · p_μ` of rational powers of a fixed base polynomial
//! times polynomials.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{rational_to_f64, MultiPoly, PolyError, Rational};

/// A function `Σ_μ Δ(x)^μ · p_μ(x)` with a fixed base polynomial `Δ`.
///
/// Exponents whose difference is an integer are merged into a single term
/// carrying the smallest exponent of the class, so each stored exponent has a
/// distinct fractional part. When `Δ` is not a perfect power this makes the
/// representation of zero unique: the function vanishes iff every stored
/// polynomial does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowPolyFunction {
    base: MultiPoly,
    terms: BTreeMap<Rational, MultiPoly>,
}

fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

impl PowPolyFunction {
    /// The zero function over the given base.
    pub fn zero(base: MultiPoly) -> Self {
        Self { base, terms: BTreeMap::new() }
    }

    /// The single term `Δ^μ · p`.
    pub fn new(base: MultiPoly, mu: Rational, p: MultiPoly) -> Self {
        assert_eq!(base.nvars(), p.nvars(), "base and polynomial arity differ");
        let mut out = Self::zero(base);
        out.push(mu, p);
        out
    }

    /// A plain polynomial (exponent zero).
    pub fn from_poly(base: MultiPoly, p: MultiPoly) -> Self {
        Self::new(base, Rational::zero(), p)
    }

    /// The base polynomial `Δ`.
    pub fn base(&self) -> &MultiPoly {
        &self.base
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    /// Normalized terms `(μ, p_μ)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &MultiPoly)> {
        self.terms.iter()
    }

    /// True iff every stored polynomial vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, mu: Rational, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        let class = frac(&mu);
        let existing = self.terms.keys().find(|k| frac(k) == class).cloned();
        match existing {
            None => {
                self.terms.insert(mu, p);
            }
            Some(old_mu) => {
                let old_p = self.terms.remove(&old_mu).expect("key present");
                let (lo, merged) = if mu >= old_mu {
                    let k = (&mu - &old_mu).to_integer().to_u32().expect("exponent gap fits u32");
                    (old_mu, &old_p + &(&p * &self.base.pow(k)))
                } else {
                    let k = (&old_mu - &mu).to_integer().to_u32().expect("exponent gap fits u32");
                    (mu, &p + &(&old_p * &self.base.pow(k)))
                };
                if !merged.is_zero() {
                    self.terms.insert(lo, merged);
                }
            }
        }
    }

    fn same_base(&self, other: &Self) -> Result<(), PolyError> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(PolyError::BaseMismatch)
        }
    }

    /// Sum of two functions over the same base.
    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_base(other)?;
        let mut out = self.clone();
        for (mu, p) in &other.terms {
            out.push(mu.clone(), p.clone());
        }
        Ok(out)
    }

    /// Difference of two functions over the same base.
    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    /// Multiplies by a rational constant.
    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.base.clone());
        for (mu, p) in &self.terms {
            out.push(mu.clone(), p.scale(c));
        }
        out
    }

    /// Multiplies by a polynomial.
    pub fn mul_poly(&self, q: &MultiPoly) -> Self {
        let mut out = Self::zero(self.base.clone());
        for (mu, p) in &self.terms {
            out.push(mu.clone(), p * q);
        }
        out
    }

    /// Multiplies by `Δ^s`.
    pub fn mul_base_pow(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.base.clone());
        for (mu, p) in &self.terms {
            out.push(mu + s, p.clone());
        }
        out
    }

    /// Product of two functions over the same base.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_base(other)?;
        let mut out = Self::zero(self.base.clone());
        for (m1, p1) in &self.terms {
            for (m2, p2) in &other.terms {
                out.push(m1 + m2, p1 * p2);
            }
        }
        Ok(out)
    }

    /// Partial derivative: `∂(Δ^μ p) = Δ^{μ−1}(μ ∂Δ · p + Δ ∂p)`.
    pub fn derivative(&self, var: usize) -> Self {
        let db = self.base.derivative(var);
        let mut out = Self::zero(self.base.clone());
        for (mu, p) in &self.terms {
            let t = &(&db * p).scale(mu) + &(&self.base * &p.derivative(var));
            out.push(mu - Rational::from_integer(1.into()), t);
        }
        out
    }

    /// Applies a linear polynomial operator that commutes with multiplication
    /// by `Δ^μ` (for instance an operator in variables absent from `Δ`).
    pub fn map_polys<F: Fn(&MultiPoly) -> MultiPoly>(&self, f: F) -> Self {
        let mut out = Self::zero(self.base.clone());
        for (mu, p) in &self.terms {
            out.push(mu.clone(), f(p));
        }
        out
    }

    /// Substitutes `x_i ↦ subs[i]` in every polynomial and in the base, which
    /// must be carried exactly onto `new_base`.
    pub fn compose(&self, subs: &[MultiPoly], new_base: MultiPoly) -> Result<Self, PolyError> {
        if self.base.compose(subs)? != new_base {
            return Err(PolyError::BaseNotPreserved);
        }
        let mut out = Self::zero(new_base);
        for (mu, p) in &self.terms {
            out.push(mu.clone(), p.compose(subs)?);
        }
        Ok(out)
    }

    /// Floating-point evaluation; the base must be positive wherever a
    /// non-integer exponent occurs.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let b = self.base.eval_f64(point);
        self.terms
            .iter()
            .map(|(mu, p)| {
                let m = rational_to_f64(mu);
                let pw = if mu.is_integer() { b.powi(m as i32) } else { b.powf(m) };
                pw * p.eval_f64(point)
            })
            .sum()
    }

    /// Smallest and largest stored exponents.
    pub fn exponent_range(&self) -> Option<(Rational, Rational)> {
        let lo = self.terms.keys().next()?.clone();
        let hi = self.terms.keys().next_back()?.clone();
        Some((lo, hi))
    }

    /// Number of distinct fractional classes stored.
    pub fn num_classes(&self) -> usize {
        self.terms.len()
    }

    /// Greatest common integer shift: true iff all exponents share one
    /// fractional part (used by callers that expect a single class).
    pub fn single_class(&self) -> bool {
        self.terms.len() <= 1
    }

    /// Integer-valued exponent check helper.
    pub fn all_integer_exponents(&self) -> bool {
        self.terms.keys().all(|m| m.is_integer())
    }

    /// Lowest common denominator of the stored exponents.
    pub fn exponent_denominator(&self) -> num_bigint::BigInt {
        self.terms.keys().fold(num_bigint::BigInt::from(1), |acc, m| acc.lcm(m.denom()))
    }
}
