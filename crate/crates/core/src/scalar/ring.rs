use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::Rat;

/// Commutative ring with unit. All coefficient types of the engine implement this.
///
/// The `*_ref` methods are the primitives; the operator impls are sugar on top
/// of them (see `ring_ops!`).
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// Image of a rational number under the structure map `Q -> R`.
    fn from_rat(r: &Rat) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + std::fmt::Display {
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }
}

/// Euclidean domain, the setting of Smith normal form.
pub trait EuclideanRing: Ring {
    /// Euclidean size; `None` for zero. Units have size 0.
    fn norm(&self) -> Option<u64>;

    /// `(q, r)` with `self = q*d + r` and `r = 0` or `norm(r) < norm(d)`.
    fn div_rem(&self, d: &Self) -> (Self, Self);

    /// A unit `u` such that `u*self` is the canonical associate of `self`.
    fn normalizing_unit(&self) -> Self;

    fn is_unit(&self) -> bool {
        self.norm() == Some(0)
    }

    /// Inverse of a unit.
    fn unit_inverse(&self) -> Option<Self>;

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Exact quotient; panics when `d` does not divide `self`.
    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "exact_div: {:?} does not divide {:?}", d, self);
        q
    }

    fn normalized(&self) -> Self {
        self.normalizing_unit().mul_ref(self)
    }
}

/// Coefficient algebras for differential forms: rings with commuting derivations
/// `∂_axis`. Constant rings return zero for every partial derivative.
pub trait CoeffRing: Ring {
    fn partial(&self, axis: usize) -> Self;
    fn is_constant(&self) -> bool;
}

/// Generates the operator impls of a type from its `Ring` primitives.
#[macro_export]
#[doc(hidden)]
macro_rules! ring_ops {
    ([$($g:tt)*] $t:ty) => {
        impl<$($g)*> ::std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t { $crate::scalar::Ring::add_ref(&self, &rhs) }
        }
        impl<'a, $($g)*> ::std::ops::Add<&'a $t> for $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t { $crate::scalar::Ring::add_ref(&self, rhs) }
        }
        impl<$($g)*> ::std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t { $crate::scalar::Ring::sub_ref(&self, &rhs) }
        }
        impl<'a, $($g)*> ::std::ops::Sub<&'a $t> for $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t { $crate::scalar::Ring::sub_ref(&self, rhs) }
        }
        impl<$($g)*> ::std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t { $crate::scalar::Ring::mul_ref(&self, &rhs) }
        }
        impl<'a, $($g)*> ::std::ops::Mul<&'a $t> for $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t { $crate::scalar::Ring::mul_ref(&self, rhs) }
        }
        impl<$($g)*> ::std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t { $crate::scalar::Ring::neg_ref(&self) }
        }
        impl<'a, $($g)*> ::std::ops::AddAssign<&'a $t> for $t {
            fn add_assign(&mut self, rhs: &'a $t) { *self = $crate::scalar::Ring::add_ref(&*self, rhs); }
        }
        impl<'a, $($g)*> ::std::ops::SubAssign<&'a $t> for $t {
            fn sub_assign(&mut self, rhs: &'a $t) { *self = $crate::scalar::Ring::sub_ref(&*self, rhs); }
        }
    };
    ($t:ty) => { $crate::ring_ops!([] $t); };
}
