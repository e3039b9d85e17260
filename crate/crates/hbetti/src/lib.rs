//! Exact computation of four-index Betti numbers of the middle HOMFLYPT
//! homology of positive closed braids.
//!
//! The pipeline runs bottom-up through the modules below: exact arithmetic,
//! graded polynomial rings with module Gröbner bases, presented graded
//! modules, minimal free resolutions, braid closures, the Khovanov–Rozansky
//! double complex, and finally Betti tables, Poincaré polynomials and the
//! split obstruction. An independent HOMFLYPT oracle built on the Hecke
//! algebra is used for cross-validation.

pub mod braid;
pub mod exactalg;
pub mod grmodule;
pub mod heckeoracle;
pub mod krcomplex;
pub mod linkbetti;
pub mod par;
pub mod polyring;
pub mod resolve;
