//! Exact-arithmetic engine for Hodge-de Rham numbers, Frolicher-type
//! spectral sequences, and derived invariants of left-invariant almost
//! complex structures on 4-dimensional nilmanifolds.
//!
//! Every computation runs over the Gaussian rationals; every reported number
//! is an exact kernel or quotient dimension. The pipeline is: validate a Lie
//! algebra presentation, build its Chevalley-Eilenberg complex, bigrade it
//! through an almost complex structure, filter, run the spectral sequence to
//! stabilization, and derive the invariant suite with every identity checked
//! as an exact integer statement.

// Index loops mirror the matrix and basis indexing throughout.
#![allow(clippy::needless_range_loop)]

pub mod acs;
pub mod analyze;
pub mod cdga;
pub mod check;
pub mod corpus;
pub mod exterior;
pub mod harmonic;
pub mod input;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod spectral;

pub use analyze::{analyze, scan, EngineError};
pub use input::{parse_input, serialize_input, AnalysisInput, InputDocument, ScanInput};
pub use report::{ReportDocument, ScanReportDocument};
pub use scalar::{GaussianRational, Rational};
