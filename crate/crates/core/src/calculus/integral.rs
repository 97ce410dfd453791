use super::model::TorusModel;
use crate::error::Result;
use crate::exterior::{Blade, Form};
use crate::scalar::{FourierCoeff, GRat, HLaurent, Rat, Ring};

/// Quantum integral `∫_h α = Σ_k ∫ α_{2n-2k} ∧ ω^k/k!`, odd components
/// integrating to zero and `h` passing through. Torus volume is 1.
pub fn qintegral(model: &TorusModel, alpha: &Form<FourierCoeff>) -> Result<HLaurent<GRat>> {
    model.require_torus()?;
    let omega = model.require_symplectic()?;
    let m = model.dim();
    let n = omega.n();
    let om = omega.omega_form::<FourierCoeff>();
    let top = Blade::top(m);
    let mut out = HLaurent::zero();
    let mut power = Form::one(m);
    for k in 0..=n {
        if k > 0 {
            power = power.wedge(&om).scale(&FourierCoeff::from_rat(&Rat::new(1, k as i64)));
        }
        let part = alpha.exterior_part(m - 2 * k);
        for (j, b, c) in part.wedge(&power).terms() {
            if b == top {
                out += &HLaurent::monomial(c.total_integral(), j);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StokesReport {
    pub d: HLaurent<GRat>,
    pub h_delta: HLaurent<GRat>,
    pub d_h: HLaurent<GRat>,
}

impl StokesReport {
    pub fn passed(&self) -> bool {
        self.d.is_zero() && self.h_delta.is_zero() && self.d_h.is_zero()
    }
}

/// Evaluates `∫_h dα`, `∫_h hδα` and `∫_h d_hα`.
pub fn stokes_check(model: &TorusModel, alpha: &Form<FourierCoeff>) -> Result<StokesReport> {
    let frame = model.frame();
    Ok(StokesReport {
        d: qintegral(model, &frame.d(alpha))?,
        h_delta: qintegral(model, &frame.delta(alpha).shift_h(1))?,
        d_h: qintegral(model, &frame.dh(alpha))?,
    })
}
