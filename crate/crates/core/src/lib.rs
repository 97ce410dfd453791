//! Exact symbolic engine for quantum exterior calculus on Poisson model spaces.

pub mod calculus;
pub mod chern_weil;
pub mod cohomology;
pub mod complex;
pub mod equivariant;
pub mod error;
pub mod exec;
pub mod exterior;
pub mod json;
pub mod lefschetz;
pub mod linalg;
pub mod quantum;
pub mod random;
pub mod report;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
