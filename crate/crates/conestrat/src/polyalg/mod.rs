//! Exact polynomial algebra: sparse rational polynomials and the
//! determinant-power function class `Σ Δ^μ · p` on which the differential
//! operators of [`crate::operators`] act in closed form.

pub mod linalg;
mod multipoly;
mod powpoly;

pub use multipoly::{rational_to_f64, Exponents, F64Poly, MultiPoly, PolyJson, TermJson};
pub use powpoly::PowPolyFunction;

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational number used for every exact coefficient.
pub type Rational = num_rational::BigRational;

/// Errors raised by polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// Two operands (or an operand and a point/substitution) disagree on arity.
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch {
        /// Arity required by the receiver.
        expected: usize,
        /// Arity actually supplied.
        found: usize,
    },
    /// Operands of a determinant-power function use different base polynomials.
    #[error("determinant-power functions have different base polynomials")]
    BaseMismatch,
    /// A substitution did not map the base polynomial onto the declared new base.
    #[error("substitution does not carry the base polynomial onto the new base")]
    BaseNotPreserved,
    /// Phased functions with different phases were combined.
    #[error("phased functions have different phases")]
    PhaseMismatch,
    /// A coefficient string could not be parsed.
    #[error("cannot parse rational component `{0}`")]
    Parse(String),
}

/// The rational `n/d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact rational value of a finite `f64`.
///
/// # Panics
/// Panics on NaN or infinity.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float required")
}

/// Parses `"p/q"`, `"p"` or a decimal literal such as `"2.5"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().map_err(|_| PolyError::Parse(s.to_string()))?;
        let d: BigInt = b.trim().parse().map_err(|_| PolyError::Parse(s.to_string()))?;
        if d == BigInt::from(0) {
            return Err(PolyError::Parse(s.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n: BigInt = digits.parse().map_err(|_| PolyError::Parse(s.to_string()))?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let q = Rational::new(n, d);
        return Ok(if neg { -q } else { q });
    }
    let n: BigInt = s.parse().map_err(|_| PolyError::Parse(s.to_string()))?;
    Ok(Rational::from_integer(n))
}

/// Rising factorial `(a)_n = a(a+1)…(a+n−1)` over the rationals.
pub fn pochhammer_q(a: &Rational, n: u32) -> Rational {
    let mut acc = int(1);
    for i in 0..n {
        acc *= a + int(i64::from(i));
    }
    acc
}

/// `n!` as a rational.
pub fn factorial_q(n: u32) -> Rational {
    pochhammer_q(&int(1), n)
}

/// Generalized binomial coefficient `C(a, k)` for rational `a`.
pub fn binomial_q(a: &Rational, k: u32) -> Rational {
    let mut acc = int(1);
    for i in 0..k {
        acc *= a - int(i64::from(i));
    }
    acc / factorial_q(k)
}
