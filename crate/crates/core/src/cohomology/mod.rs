//! Quantum de Rham and Dolbeault cohomology of tori via finite subcomplexes.

mod complex;
mod dolbeault;
mod modes;
mod ring;

pub use complex::{complex_homology, CohomologyTable, Component, FiniteComplex, Generator, HRing, HomologyRow};
pub use dolbeault::{bigraded_basis, quantum_dolbeault_table, torus_hodge_number, DolbeaultTable};
pub use modes::{
    field_homology_dims, graded_basis, graded_field_dims, invariant_subcomplex, mode_box, mode_subcomplex,
    quantum_derham_table, DerhamTable,
};
pub use ring::{ring_table, ClassGenerator, RingTable};

#[cfg(test)]
mod tests;
