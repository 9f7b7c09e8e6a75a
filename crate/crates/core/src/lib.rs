//! Exact Einstein-nilradical decisions for nilpotent Lie algebras.
//!
//! An algebra is given by structure constants in a fixed basis. The pipeline
//! computes its pre-Einstein derivation, the root set of nonzero structure
//! constants and its Gram matrix `U`, and decides whether `U v = [1]` has a
//! solution with all coordinates positive, returning either a positive
//! witness or a checkable infeasibility certificate. A floating-point
//! nilsoliton flow cross-checks the positive verdicts.

pub mod catalog;
pub mod derivations;
pub mod error;
pub mod exact_math;
pub mod lie;
pub mod nikolayevsky;
pub mod report;
pub mod soliton;

pub use catalog::{CatalogEntry, ExpectedVerdict};
pub use derivations::{pre_einstein, DerivationSpace, EigenvalueType, PreEinsteinResult};
pub use error::{Error, Result};
pub use exact_math::{PolyQ, QMatrix, Rational, SolutionFamily};
pub use lie::{BaseChange, JacobiResidual, LieAlgebra};
pub use nikolayevsky::{en_test, Certificate, EnReport, Status, Verdict};
pub use soliton::{MetricState, SolitonReport};
