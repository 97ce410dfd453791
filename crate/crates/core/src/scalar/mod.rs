//! Exact coefficient rings.

mod coeff;
mod grat;
mod hpoly;
mod rat;
mod ring;

pub use coeff::{FourierCoeff, PolyCoeff};
pub use grat::GRat;
pub use hpoly::{HLaurent, HPoly};
pub use rat::{denominator_lcm, Rat};
pub use ring::{CoeffRing, EuclideanRing, Field, Ring};

/// Complex scalars usable as the base field of h-polynomials built from forms.
pub trait BaseField: Field + std::fmt::Display + From<Rat> {
    fn to_grat(&self) -> GRat;
}

impl BaseField for Rat {
    fn to_grat(&self) -> GRat {
        GRat::real(self.clone())
    }
}

impl BaseField for GRat {
    fn to_grat(&self) -> GRat {
        self.clone()
    }
}
