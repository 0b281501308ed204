//! Exact arithmetic for `x^p - y^q = 1`: valuations and primality, the
//! lifting-the-exponent formulas, Gaussian integers, Pell equations, the
//! infinite descent on `a^4 + 9a^2b^2 + 27b^4 = c^2`, and a case engine
//! that emits self-verifying certificates.
//!
//! Bulk sweeps run on rayon when the `parallel` feature is on (the
//! default) and fall back to plain iteration otherwise.

pub mod descent;
pub mod engine;
pub mod gaussian;
pub mod lte;
pub mod numtheory;
pub mod par;
pub mod pell;
pub mod selfcheck;

pub use engine::{apply_rule, classify, CaseId, Certificate, EngineError, SearchBounds};
pub use numtheory::{normalize_tuple, CatalanTuple, Integer};
pub use par::Execution;
