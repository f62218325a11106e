//! Exact arithmetic: rationals, sparse multivariate polynomials, rational
//! functions and truncated power series.

pub mod linalg;
mod parse;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;

pub use poly::{Exponent, MultiPoly};
pub use ratfunc::RationalFunction;
pub use rational::Rational;
pub use series::{Elementary, TruncatedSeries, DEFAULT_SERIES_ORDER};
