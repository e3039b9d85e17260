//! Exact arithmetic: rationals and Laurent polynomials in named variables.

mod laurent;
mod rational;

pub use laurent::{LaurentError, LaurentPoly};
pub use rational::{big_gcd, binomial, ParseRationalError, Rational};
