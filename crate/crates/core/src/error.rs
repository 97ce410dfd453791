use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("negative h-exponent {0} in polynomial mode")]
    NegativeHPower(i64),

    #[error("symplectic matrix is singular, not antisymmetric, or of odd size")]
    BadSymplectic,

    #[error("model precondition failed: {0}")]
    Precondition(String),

    #[error("complex structure does not preserve the bivector")]
    ComplexStructureMismatch,

    #[error("bivector fails the Jacobi identity at ({i}, {j}, {k}): residual {residual}")]
    JacobiFailure { i: usize, j: usize, k: usize, residual: String },

    #[error("d^2 != 0 in finite complex at degree {0}")]
    NotAComplex(i64),

    #[error("cohomology reduction inconsistent: {0}")]
    Reduction(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(..) => "dimension_mismatch",
            Error::AxisOutOfRange { .. } => "axis_out_of_range",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NegativeHPower(_) => "negative_h_power",
            Error::BadSymplectic => "bad_symplectic",
            Error::Precondition(_) => "precondition",
            Error::ComplexStructureMismatch => "complex_structure_mismatch",
            Error::JacobiFailure { .. } => "jacobi_failure",
            Error::NotAComplex(_) => "not_a_complex",
            Error::Reduction(_) => "reduction",
            Error::Shape(_) => "shape",
            Error::Parse(_) => "parse",
        }
    }
}
