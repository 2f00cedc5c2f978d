//! Exact computer algebra for pairs of bivariate polynomials: Newton polygon
//! data, Puiseux expansions at infinity, π-root refinement trees,
//! intersection numbers and lower-side corner certificates.

pub mod error;
pub(crate) mod bivariate;
pub mod field;
pub mod corners;
pub mod corpus;
pub mod intersection;
pub mod laurent;
pub mod par;
pub mod piroot;
pub mod puiseux;
pub mod report;
pub mod selftest;
pub mod text;

pub use error::{Error, Result};

/// Exponents of `x`: rationals with small denominators.
pub type Exp = num_rational::Rational64;
