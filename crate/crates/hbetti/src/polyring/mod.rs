//! Graded polynomial rings over ℚ (all variables of degree 2), free modules,
//! module Gröbner bases, syzygies and lifting.
//!
//! Monomials are ordered by graded reverse lexicographic order; module terms
//! by position over term, earlier positions being greater.

mod free;
mod groebner;
mod monomial;
mod ops;
mod poly;
mod ring;

pub use free::{GradedFreeModule, HomMatrix, ModuleVector, Term};
pub use groebner::GbEngine;
pub use monomial::{Monomial, MAX_VARS};
pub use ops::{
    buchberger, kernel_gens, lift_through, minimal_generators, normal_form, s_vector, sort_by_lead,
    syzygy_basis, ImageGb,
};
pub use poly::Polynomial;
pub use ring::{GradedRing, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("input is not a Gröbner basis: {0}")]
    NotGroebner(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

#[cfg(test)]
mod tests;
