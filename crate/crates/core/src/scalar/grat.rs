use std::fmt;

use super::{CoeffRing, EuclideanRing, Field, Rat, Ring};

/// Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GRat {
    pub re: Rat,
    pub im: Rat,
}

impl GRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        GRat { re, im: Rat::zero() }
    }

    pub fn i() -> Self {
        GRat::new(Rat::zero(), Rat::one())
    }

    pub fn conj(&self) -> Self {
        GRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> Rat {
        self.re.mul_ref(&self.re) + self.im.mul_ref(&self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GRat::new(self.re.mul_ref(r), self.im.mul_ref(r))
    }
}

impl From<Rat> for GRat {
    fn from(r: Rat) -> Self {
        GRat::real(r)
    }
}

impl From<i64> for GRat {
    fn from(n: i64) -> Self {
        GRat::real(Rat::from(n))
    }
}

impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({} - {}i)", self.re, self.im.abs())
                } else {
                    write!(f, "({} + {}i)", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ring for GRat {
    fn zero() -> Self {
        GRat::default_zero()
    }
    fn one() -> Self {
        GRat::real(Rat::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        GRat::new(self.re.add_ref(&rhs.re), self.im.add_ref(&rhs.im))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        GRat::new(self.re.sub_ref(&rhs.re), self.im.sub_ref(&rhs.im))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GRat::real(self.re.mul_ref(&rhs.re));
        }
        GRat::new(
            self.re.mul_ref(&rhs.re) - self.im.mul_ref(&rhs.im),
            self.re.mul_ref(&rhs.im) + self.im.mul_ref(&rhs.re),
        )
    }
    fn neg_ref(&self) -> Self {
        GRat::new(self.re.neg_ref(), self.im.neg_ref())
    }
    fn from_rat(r: &Rat) -> Self {
        GRat::real(r.clone())
    }
}

impl GRat {
    fn default_zero() -> Self {
        GRat::new(Rat::zero(), Rat::zero())
    }
}

crate::ring_ops!(GRat);

impl Field for GRat {
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sq();
        let n_inv = n.inv()?;
        Some(self.conj().scale(&n_inv))
    }
}

impl EuclideanRing for GRat {
    fn norm(&self) -> Option<u64> {
        if self.is_zero() {
            None
        } else {
            Some(0)
        }
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let inv = d.inv().expect("division by zero");
        (self.mul_ref(&inv), GRat::zero())
    }
    fn normalizing_unit(&self) -> Self {
        self.inv().unwrap_or_else(GRat::one)
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv()
    }
}

impl CoeffRing for GRat {
    fn partial(&self, _axis: usize) -> Self {
        GRat::zero()
    }
    fn is_constant(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(GRat::i() * GRat::i(), GRat::from(-1));
    }

    #[test]
    fn conj_is_involution_and_multiplicative() {
        let a = GRat::new(Rat::new(1, 2), Rat::new(-3, 5));
        let b = GRat::new(Rat::new(7, 3), Rat::new(2, 1));
        assert_eq!(a.conj().conj(), a);
        assert_eq!((a.clone() * &b).conj(), a.conj() * b.conj());
    }

    #[test]
    fn inverse() {
        let a = GRat::new(Rat::new(1, 2), Rat::new(-3, 5));
        assert_eq!(a.clone() * a.inv().unwrap(), GRat::one());
    }
}
