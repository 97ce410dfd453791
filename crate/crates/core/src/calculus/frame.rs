use crate::complex;
use crate::exterior::{Blade, Form};
use crate::linalg::Matrix;
use crate::scalar::{CoeffRing, GRat, Ring};

/// Sign convention for `ι_w`: `ι_w α = -Σ_{a<b} w^{ab} α(e_a, e_b, …)`.
///
/// With the product normalized by `e^i ∧_w e^j = e^i ∧ e^j + w^{ij}`, this is
/// the sign for which `d_h = d - hδ` is a derivation of `∧_h` and agrees with
/// `Σ e^i ∧_h ∂_i`.
pub const IOTA_NEGATED: bool = true;

/// Coefficient rings that contain the Gaussian rationals as constants.
pub trait ComplexCoeff: CoeffRing {
    fn from_grat(c: &GRat) -> Self;
}

impl ComplexCoeff for GRat {
    fn from_grat(c: &GRat) -> Self {
        c.clone()
    }
}

impl ComplexCoeff for crate::scalar::FourierCoeff {
    fn from_grat(c: &GRat) -> Self {
        crate::scalar::FourierCoeff::constant(c.clone())
    }
}

/// A global coframe `f^1, …, f^m` with constant transition to the coordinate
/// coframe: the dual derivations are `D_a = Σ_i c_{a,i} ∂_i`, and `w` is
/// expressed in this frame.
#[derive(Clone, Debug)]
pub struct Frame<C> {
    dim: usize,
    w: Matrix<C>,
    derivations: Vec<Vec<(usize, C)>>,
    iota_negated: bool,
    complex: bool,
}

impl<C: CoeffRing> Frame<C> {
    /// The coordinate coframe `dx^1, …, dx^m`.
    pub fn coordinate(w: Matrix<C>) -> Self {
        let dim = w.nrows();
        let derivations = (0..dim).map(|i| vec![(i, C::one())]).collect();
        Frame { dim, w, derivations, iota_negated: IOTA_NEGATED, complex: false }
    }

    /// Same frame with the opposite `ι_w` sign; only used to exhibit that the
    /// other convention breaks the Leibniz rule.
    pub fn with_flipped_iota(mut self) -> Self {
        self.iota_negated = !self.iota_negated;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bivector(&self) -> &Matrix<C> {
        &self.w
    }

    pub fn is_complex(&self) -> bool {
        self.complex
    }

    pub fn derivative(&self, a: usize, alpha: &Form<C>) -> Form<C> {
        let mut out = Form::zero(self.dim);
        for (j, b, c) in alpha.terms() {
            let mut dc = C::zero();
            for (axis, k) in &self.derivations[a] {
                dc += &k.mul_ref(&c.partial(*axis));
            }
            out.add_term(j, b, &dc);
        }
        out
    }

    fn d_over(&self, alpha: &Form<C>, keep: impl Fn(usize) -> bool) -> Form<C> {
        let mut out = Form::zero(self.dim);
        for a in (0..self.dim).filter(|&a| keep(a)) {
            let da = self.derivative(a, alpha);
            let fa = Blade::single(a);
            for (j, b, c) in da.terms() {
                if let Some((neg, u)) = fa.wedge(b) {
                    out.add_term(j, u, &if neg { c.neg_ref() } else { c.clone() });
                }
            }
        }
        out
    }

    /// Exterior derivative `Σ_a f^a ∧ D_a α`.
    pub fn d(&self, alpha: &Form<C>) -> Form<C> {
        self.d_over(alpha, |_| true)
    }

    pub fn iota(&self, alpha: &Form<C>) -> Form<C> {
        let x = alpha.bivector_contract(&self.w);
        if self.iota_negated {
            -x
        } else {
            x
        }
    }

    /// Koszul differential `δ = ι_w d - d ι_w`.
    pub fn delta(&self, alpha: &Form<C>) -> Form<C> {
        self.iota(&self.d(alpha)) - self.d(&self.iota(alpha))
    }

    /// `d_h = d - hδ`.
    pub fn dh(&self, alpha: &Form<C>) -> Form<C> {
        self.d(alpha) - self.delta(alpha).shift_h(1)
    }

    fn require_complex(&self) {
        assert!(self.complex, "Dolbeault operators need the complex coframe");
    }

    pub fn del(&self, alpha: &Form<C>) -> Form<C> {
        self.require_complex();
        self.d_over(alpha, complex::is_holomorphic)
    }

    pub fn del_bar(&self, alpha: &Form<C>) -> Form<C> {
        self.require_complex();
        self.d_over(alpha, |a| !complex::is_holomorphic(a))
    }

    /// `δ^{0,-1} = ι_w ∂ - ∂ ι_w`.
    pub fn delta_01(&self, alpha: &Form<C>) -> Form<C> {
        self.iota(&self.del(alpha)) - self.del(&self.iota(alpha))
    }

    /// `δ^{-1,0} = ι_w ∂̄ - ∂̄ ι_w`.
    pub fn delta_10(&self, alpha: &Form<C>) -> Form<C> {
        self.iota(&self.del_bar(alpha)) - self.del_bar(&self.iota(alpha))
    }

    pub fn del_h(&self, alpha: &Form<C>) -> Form<C> {
        self.del(alpha) - self.delta_01(alpha).shift_h(1)
    }

    pub fn del_bar_h(&self, alpha: &Form<C>) -> Form<C> {
        self.del_bar(alpha) - self.delta_10(alpha).shift_h(1)
    }
}

impl<C: ComplexCoeff> Frame<C> {
    /// The coframe `(dz^1, dz̄^1, …)`; `w_real` is given in coordinates and is
    /// rewritten as `A W Aᵀ`.
    pub fn complex(w_real: &Matrix<C>) -> Self {
        let dim = w_real.nrows();
        let a = complex::frame_matrix(dim).map(C::from_grat);
        let a_inv = complex::frame_matrix_inverse(dim);
        let w = a.mul(w_real).mul(&a.transpose());
        let derivations = (0..dim)
            .map(|col| {
                (0..dim).filter(|&i| !a_inv[(i, col)].is_zero()).map(|i| (i, C::from_grat(&a_inv[(i, col)]))).collect()
            })
            .collect();
        Frame { dim, w, derivations, iota_negated: IOTA_NEGATED, complex: true }
    }
}

/// Rewrites a form from the coordinate coframe into `(dz, dz̄)`.
pub fn to_complex_frame<C: ComplexCoeff>(alpha: &Form<C>) -> Form<C> {
    alpha.transform(&complex::frame_matrix_inverse(alpha.dim()).transpose().map(C::from_grat))
}

/// Rewrites a form from `(dz, dz̄)` back into the coordinate coframe.
pub fn from_complex_frame<C: ComplexCoeff>(alpha: &Form<C>) -> Form<C> {
    alpha.transform(&complex::frame_matrix(alpha.dim()).transpose().map(C::from_grat))
}
