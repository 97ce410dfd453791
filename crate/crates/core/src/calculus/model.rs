use std::fmt;

use super::frame::{ComplexCoeff, Frame};
use crate::complex;
use crate::error::{Error, Result};
use crate::exterior::{Form, Symplectic};
use crate::linalg::Matrix;
use crate::quantum::qwedge;
use crate::scalar::{CoeffRing, FourierCoeff, PolyCoeff, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Affine,
    Torus,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Affine => "affine",
            Space::Torus => "torus",
        })
    }
}

/// Affine space or torus carrying a Poisson bivector, optionally a constant
/// symplectic form and the standard complex structure.
#[derive(Clone, Debug)]
pub struct PoissonModel<C> {
    pub space: Space,
    w: Matrix<C>,
    symplectic: Option<Symplectic>,
    complex: bool,
}

pub type TorusModel = PoissonModel<FourierCoeff>;
pub type AffineModel = PoissonModel<PolyCoeff>;

fn check_antisymmetric<C: Ring>(w: &Matrix<C>) -> Result<()> {
    if !w.is_square() {
        return Err(Error::Shape("bivector matrix must be square".into()));
    }
    let m = w.nrows();
    for i in 0..m {
        for j in 0..m {
            if w[(i, j)] != w[(j, i)].neg_ref() {
                return Err(Error::Precondition(format!("bivector not antisymmetric at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// `Σ_l (w^{il} ∂_l w^{jk} + w^{jl} ∂_l w^{ki} + w^{kl} ∂_l w^{ij})`.
pub fn jacobi_residual<C: CoeffRing>(w: &Matrix<C>, i: usize, j: usize, k: usize) -> C {
    let m = w.nrows();
    let mut r = C::zero();
    for l in 0..m {
        r += &w[(i, l)].mul_ref(&w[(j, k)].partial(l));
        r += &w[(j, l)].mul_ref(&w[(k, i)].partial(l));
        r += &w[(k, l)].mul_ref(&w[(i, j)].partial(l));
    }
    r
}

/// First triple `i < j < k` (0-based) with a nonzero Jacobi residual.
pub fn jacobi_check<C: CoeffRing>(w: &Matrix<C>) -> Option<(usize, usize, usize, C)> {
    let m = w.nrows();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let r = jacobi_residual(w, i, j, k);
                if !r.is_zero() {
                    return Some((i, j, k, r));
                }
            }
        }
    }
    None
}

impl<C: CoeffRing + fmt::Display> PoissonModel<C> {
    /// Validates antisymmetry, the Jacobi identity, the symplectic calibration
    /// and, when requested, preservation of `w` by the standard `J`.
    pub fn new(space: Space, w: Matrix<C>, symplectic: Option<Symplectic>, complex: bool) -> Result<Self> {
        let model = Self::deferred(space, w, symplectic, complex)?;
        if let Some((i, j, k, r)) = jacobi_check(&model.w) {
            return Err(Error::JacobiFailure { i: i + 1, j: j + 1, k: k + 1, residual: r.to_string() });
        }
        Ok(model)
    }

    /// As `new` without the Jacobi check.
    pub fn deferred(space: Space, w: Matrix<C>, symplectic: Option<Symplectic>, complex: bool) -> Result<Self> {
        check_antisymmetric(&w)?;
        if let Some(s) = &symplectic {
            if s.dim() != w.nrows() {
                return Err(Error::DimensionMismatch(s.dim(), w.nrows()));
            }
            if w != s.calibrated_bivector() {
                return Err(Error::Precondition("bivector is not the calibrated dual of the symplectic form".into()));
            }
        }
        if complex {
            complex::check_preserves(&w)?;
        }
        Ok(PoissonModel { space, w, symplectic, complex })
    }

    /// Model whose bivector is the calibrated dual `Ω⁻¹` of `Ω`.
    pub fn symplectic(space: Space, omega: Symplectic, complex: bool) -> Result<Self> {
        let w = omega.calibrated_bivector();
        Self::new(space, w, Some(omega), complex)
    }
}

impl<C: CoeffRing> PoissonModel<C> {
    pub fn dim(&self) -> usize {
        self.w.nrows()
    }

    pub fn bivector(&self) -> &Matrix<C> {
        &self.w
    }

    pub fn symplectic_structure(&self) -> Option<&Symplectic> {
        self.symplectic.as_ref()
    }

    pub fn has_complex_structure(&self) -> bool {
        self.complex
    }

    pub fn is_constant(&self) -> bool {
        let m = self.dim();
        (0..m).all(|i| (0..m).all(|j| self.w[(i, j)].is_constant()))
    }

    pub fn frame(&self) -> Frame<C> {
        Frame::coordinate(self.w.clone())
    }

    pub fn d(&self, alpha: &Form<C>) -> Form<C> {
        self.frame().d(alpha)
    }

    pub fn delta(&self, alpha: &Form<C>) -> Form<C> {
        self.frame().delta(alpha)
    }

    pub fn dh(&self, alpha: &Form<C>) -> Form<C> {
        self.frame().dh(alpha)
    }

    pub fn iota(&self, alpha: &Form<C>) -> Form<C> {
        self.frame().iota(alpha)
    }

    pub fn qwedge(&self, a: &Form<C>, b: &Form<C>) -> Form<C> {
        qwedge(a, b, &self.w)
    }

    /// `Σ_i e^i ∧_h ∂_i α`, defined for constant `w`.
    pub fn frame_formula_d(&self, alpha: &Form<C>) -> Result<Form<C>> {
        if !self.is_constant() {
            return Err(Error::Precondition("frame formula needs a constant bivector".into()));
        }
        let m = self.dim();
        let mut out = Form::zero(m);
        for i in 0..m {
            let di = alpha.map_coeffs(|c| c.partial(i));
            if di.is_zero() {
                continue;
            }
            let ei = Form::basis(m, &[i]);
            out += &qwedge(&ei, &di, &self.w);
        }
        Ok(out)
    }

    pub fn require_torus(&self) -> Result<()> {
        match self.space {
            Space::Torus => Ok(()),
            Space::Affine => Err(Error::Precondition("operation needs a torus model".into())),
        }
    }

    pub fn require_constant(&self) -> Result<()> {
        if self.is_constant() {
            Ok(())
        } else {
            Err(Error::Precondition("operation needs a constant bivector".into()))
        }
    }

    pub fn require_symplectic(&self) -> Result<&Symplectic> {
        self.symplectic.as_ref().ok_or_else(|| Error::Precondition("model has no symplectic structure".into()))
    }
}

impl<C: ComplexCoeff> PoissonModel<C> {
    pub fn complex_frame(&self) -> Result<Frame<C>> {
        if !self.complex {
            return Err(Error::Precondition("model has no complex structure".into()));
        }
        Ok(Frame::complex(&self.w))
    }
}

/// `w = ∂_1 ∧ ∂_2 ∧ …` style constructor: entries `(i, j, c)` with 0-based
/// `i < j`, antisymmetrized.
pub fn bivector_from_entries<C: Ring>(dim: usize, entries: &[(usize, usize, C)]) -> Matrix<C> {
    let mut w = Matrix::zeros(dim, dim);
    for (i, j, c) in entries {
        w[(*i, *j)] += c;
        w[(*j, *i)] -= c;
    }
    w
}

/// The linear Poisson structure of `so(3)`: `w^{12} = x_3`, `w^{13} = -x_2`, `w^{23} = x_1`.
pub fn so3_bivector() -> Matrix<PolyCoeff> {
    bivector_from_entries(3, &[(0, 1, PolyCoeff::var(2)), (0, 2, -PolyCoeff::var(1)), (1, 2, PolyCoeff::var(0))])
}
