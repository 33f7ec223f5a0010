//! Exact scalars, sparse bivariate polynomials in `x` and `y`, and truncated
//! power series in a formal variable whose coefficients are such polynomials.

mod poly;
mod rational;
mod series;
pub mod wire;

pub use poly::{BivarPoly, Term};
pub use rational::{
    binomial, factorial, format_rational, int, parse_rational, pretty_rational, rat, BigInt,
    BigRational,
};
pub use series::LambdaSeries;
