//! Exact arithmetic: rationals, dense matrices, polynomials and rational
//! functions in `m`, Laurent series in `1/m`, finite differences.

pub mod diff;
pub mod indep;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod sample;
pub mod series;

pub use diff::{
    binomial_coefficients, binomial_coefficients_window, forward_difference, from_binomial_basis, ValueWindow,
};
pub use indep::IndependenceOracle;
pub use matrix::{Echelon, MatrixQ, PivotStrategy};
pub use poly::PolyM;
pub use ratfunc::RatFuncM;
pub use rational::{int, parse_rational, rat, Rational};
pub use sample::RationalSampler;
pub use series::{series_ratio, InvMSeries};
