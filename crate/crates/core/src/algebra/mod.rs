//! Exact algebra: rationals, cumulant polynomials and Laurent series in one
//! and two variables.

pub mod bivariate;
pub mod monomial;
pub mod poly;
pub mod series;

/// Exact arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

pub use bivariate::{BivariateLaurent, Var};
pub use monomial::KappaMonomial;
pub use poly::KappaPolynomial;
pub use series::{dx_derivative, DxOperator, LaurentSeries};
