//! Computational toolkit for symmetric cones and their stratifications.
//!
//! The crate covers Euclidean Jordan algebra arithmetic ([`jordan`]),
//! Gamma/Beta functions and stratification charts of symmetric cones
//! ([`cones`]), exact rational polynomial algebra ([`polyalg`]), classical
//! and multivariate orthogonal polynomials with hypergeometric evaluators
//! ([`orthopoly`]), Gauss-type quadrature on the interval, simplex and ball
//! ([`quadrature`]), Bessel operators applied exactly on determinant-power
//! function classes ([`operators`]), symmetry-breaking and holographic
//! transforms ([`sbo`]) and a verification harness ([`verify`]).

#![allow(clippy::needless_range_loop)]

pub mod cones;
pub mod jordan;
pub mod operators;
pub mod orthopoly;
pub mod polyalg;
pub mod quadrature;
pub mod sbo;
pub mod verify;
