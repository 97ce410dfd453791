//! Differential operators on forms over affine and torus model spaces.

mod frame;
mod integral;
mod model;

pub use frame::{from_complex_frame, to_complex_frame, ComplexCoeff, Frame, IOTA_NEGATED};
pub use integral::{qintegral, stokes_check, StokesReport};
pub use model::{
    bivector_from_entries, jacobi_check, jacobi_residual, so3_bivector, AffineModel, PoissonModel, Space, TorusModel,
};

#[cfg(test)]
mod tests;
