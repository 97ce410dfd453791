//! Dense exact linear algebra.

mod charpoly;
mod matrix;
mod snf;

pub use charpoly::{charpoly, det_shifted, eval_at_matrix, factor_rational, radical, squarefree_decomposition, Factor};
pub use matrix::Matrix;
pub use snf::{smith_normal_form, solve_pid, Snf};
