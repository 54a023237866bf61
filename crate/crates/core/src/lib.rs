//! Exact power sums `S_k(n)`, generalized Stirling numbers of the second
//! kind, Bernoulli polynomials, and a harness that checks every closed form
//! for `S_k(n)` against brute-force summation.

pub mod bernoulli;
pub mod calculus;
pub mod error;
pub mod exact;
pub mod poly;
pub mod powersum;
pub mod stirling;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{ExactInt, ExactRat};
pub use poly::Polynomial;
pub use powersum::FormulaId;

pub use verify::{run_suites, Suite, SuiteConfig, SuiteReport};
