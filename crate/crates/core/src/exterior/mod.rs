//! The classical exterior algebra over a based space.

mod blade;
mod form;
mod symplectic;

pub use blade::{Blade, MAX_DIM};
pub use form::Form;
pub use symplectic::{exterior_power_pairing, Symplectic};
