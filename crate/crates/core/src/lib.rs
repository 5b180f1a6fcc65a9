//! Exact computations with the bimodules `A_n(M)`, the algebras `A_n(V)` and
//! `A_{t,s}(V)`, and fusion rules of Virasoro vertex operator algebras.
//!
//! Everything is generic over a [`scalar::Field`]; the aliases below fix the
//! field to arbitrary-precision rationals.

pub mod bimodule;
pub mod error;
pub mod fusion;
pub mod linalg;
pub mod parallel;
pub mod report;
pub mod scalar;
pub mod voa;

pub use error::{Error, Result};
pub use scalar::{BigRational, Field};

pub type Scalar = BigRational;
pub type Vector = voa::GradedVector<Scalar>;
pub type Space = voa::Space<Scalar>;
pub type Model = voa::Model<Scalar>;
pub type ModelSpec = voa::ModelSpec<Scalar>;
pub type Subspace = linalg::SubspaceBasis<Scalar>;
