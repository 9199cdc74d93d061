//! Exact symbolic verification and construction of SKT, HKT and SU(n)
//! structures on coframe algebras given by structure equations.
//!
//! Everything is computed over the field of multivariate rational functions
//! with exact arithmetic; verdicts come with exact obstruction forms.

pub mod cohomology;
pub mod connections;
pub mod constructions;
pub mod form;
pub mod frame;
pub mod hkt;
pub mod linalg;
pub mod model;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod structures;
pub mod testkit;

pub use form::Form;
pub use frame::{CoframeAlgebra, Endo, VectorField};
pub use linalg::Matrix;
pub use report::{Check, Report};
pub use scalar::{Scalar, SymbolDecl, SymbolTable};
