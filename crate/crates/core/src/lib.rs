//! Exact computations for finite-dimensional nonnegatively graded basic
//! algebras: projective-injective modules, endomorphism algebras of their
//! sums, and symmetrizing trace forms.

pub mod algcore;
pub mod cartan;
pub mod error;
pub mod exactlin;
pub mod field;
pub mod format;
pub mod gmod;
pub mod homs;
pub mod laurent;
pub mod quiver;
pub mod report;
pub mod symform;

pub use algcore::{validate, AlgebraBuilder, GradedAlgebra, ValidationReport};
pub use error::{Error, Result};
pub use exactlin::Matrix;
pub use field::{Field, Scalar};
pub use laurent::LaurentPoly;
pub use report::{analyze, render_text, AnalysisOptions, AnalysisReport};
pub use symform::{decide_symmetric, Decision, OracleConfig};
