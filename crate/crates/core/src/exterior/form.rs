use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use super::Blade;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Ring;

/// Element of `Λ(V*)[h, h⁻¹] ⊗ C`: a finite sum of `c · h^j e^I`.
///
/// Classical forms are the ones with every `j = 0`. Polynomial mode is not a
/// separate type; `is_polynomial` reports whether all exponents are `≥ 0`.
#[derive(Clone, PartialEq)]
pub struct Form<C> {
    dim: usize,
    terms: BTreeMap<(i64, Blade), C>,
}

impl<C: Ring> Form<C> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= super::MAX_DIM, "dimension {dim} too large");
        Form { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, C::one())
    }

    pub fn scalar(dim: usize, c: C) -> Self {
        Self::monomial(dim, 0, Blade::EMPTY, c)
    }

    /// `c · h^j e^I`.
    pub fn monomial(dim: usize, j: i64, blade: Blade, c: C) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(j, blade, &c);
        f
    }

    /// `e^I` from 0-based indices in the given order (so the sign of the
    /// permutation is applied).
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut f = Self::one(dim);
        for &i in idx {
            assert!(i < dim, "index {i} out of range for dimension {dim}");
            f = f.wedge(&Self::monomial(dim, 0, Blade::single(i), C::one()));
        }
        f
    }

    /// `h^j` as a form.
    pub fn h_power(dim: usize, j: i64) -> Self {
        Self::monomial(dim, j, Blade::EMPTY, C::one())
    }

    pub fn from_terms(dim: usize, it: impl IntoIterator<Item = (i64, Blade, C)>) -> Self {
        let mut f = Self::zero(dim);
        for (j, b, c) in it {
            f.add_term(j, b, &c);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, Blade, &C)> {
        self.terms.iter().map(|(&(j, b), c)| (j, b, c))
    }

    pub fn coeff(&self, j: i64, blade: Blade) -> C {
        self.terms.get(&(j, blade)).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, j: i64, blade: Blade, c: &C) {
        debug_assert!(blade.max_index().is_none_or(|i| i < self.dim));
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((j, blade)) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn add_signed(&mut self, j: i64, blade: Blade, c: &C, negative: bool) {
        if negative {
            self.add_term(j, blade, &c.neg_ref());
        } else {
            self.add_term(j, blade, c);
        }
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, dim: self.dim })
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.dim);
        for (j, b, x) in self.terms() {
            out.add_term(j, b, &x.mul_ref(c));
        }
        out
    }

    /// Multiplication by `h^k`.
    pub fn shift_h(&self, k: i64) -> Self {
        Form { dim: self.dim, terms: self.terms.iter().map(|(&(j, b), c)| ((j + k, b), c.clone())).collect() }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Form<D> {
        let mut out = Form::zero(self.dim);
        for (j, b, c) in self.terms() {
            out.add_term(j, b, &f(c));
        }
        out
    }

    /// Same terms viewed in a larger or equal dimension.
    pub fn embed(&self, dim: usize) -> Self {
        assert!(dim >= self.dim);
        Form { dim, terms: self.terms.clone() }
    }

    /// Classical wedge, extended `h`-bilinearly. Panics on dimension mismatch.
    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("wedge")
    }

    pub fn try_wedge(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (j1, b1, c1) in self.terms() {
            for (j2, b2, c2) in other.terms() {
                if let Some((neg, b)) = b1.wedge(b2) {
                    out.add_signed(j1 + j2, b, &c1.mul_ref(c2), neg);
                }
            }
        }
        Ok(out)
    }

    /// `e_i ⊢ α` (0-based `i`).
    pub fn contract_front(&self, i: usize) -> Self {
        self.try_contract_front(i).expect("contract_front")
    }

    pub fn try_contract_front(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let mut out = Self::zero(self.dim);
        for (j, b, c) in self.terms() {
            if b.contains(i) {
                out.add_signed(j, b.without(i), c, b.count_below(i) % 2 == 1);
            }
        }
        Ok(out)
    }

    /// `α ⊣ e_i` (0-based `i`).
    pub fn contract_back(&self, i: usize) -> Self {
        self.try_contract_back(i).expect("contract_back")
    }

    pub fn try_contract_back(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let mut out = Self::zero(self.dim);
        for (j, b, c) in self.terms() {
            if b.contains(i) {
                out.add_signed(j, b.without(i), c, b.count_above(i) % 2 == 1);
            }
        }
        Ok(out)
    }

    /// `Σ_{a<b} w^{ab} α(e_a, e_b, …)`, the contraction `ι_w α`.
    pub fn bivector_contract(&self, w: &Matrix<C>) -> Self {
        self.try_bivector_contract(w).expect("bivector_contract")
    }

    pub fn try_bivector_contract(&self, w: &Matrix<C>) -> Result<Self> {
        if w.nrows() != self.dim || w.ncols() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, w.nrows()));
        }
        let mut out = Self::zero(self.dim);
        for (j, blade, c) in self.terms() {
            if blade.grade() < 2 {
                continue;
            }
            for a in blade.indices() {
                for b in blade.indices().filter(|&b| b > a) {
                    let wab = &w[(a, b)];
                    if wab.is_zero() {
                        continue;
                    }
                    // α(e_a, e_b, …) = e_b ⊢ (e_a ⊢ α); a < b so e_a is found first
                    let rest = blade.without(a).without(b);
                    let neg = (blade.count_below(a) + blade.without(a).count_below(b)) % 2 == 1;
                    out.add_signed(j, rest, &c.mul_ref(wab), neg);
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of the top monomial `e^{1…m}` in the classical (`j = 0`) part.
    pub fn berezin(&self) -> C {
        self.coeff(0, Blade::top(self.dim))
    }

    /// The top-degree component as an `h`-series: `Σ_j c_j h^j`.
    pub fn berezin_h(&self) -> BTreeMap<i64, C> {
        let top = Blade::top(self.dim);
        self.terms().filter(|t| t.1 == top).map(|(j, _, c)| (j, c.clone())).collect()
    }

    /// `|I| + 2j` if all terms agree.
    pub fn graded_degree(&self) -> Option<i64> {
        let mut degs = self.terms().map(|(j, b, _)| b.grade() as i64 + 2 * j);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Exterior degree if all terms agree.
    pub fn exterior_degree(&self) -> Option<usize> {
        let mut degs = self.terms().map(|(_, b, _)| b.grade());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn graded_part(&self, n: i64) -> Self {
        self.filter(|j, b| b.grade() as i64 + 2 * j == n)
    }

    pub fn exterior_part(&self, k: usize) -> Self {
        self.filter(|_, b| b.grade() == k)
    }

    pub fn graded_degrees(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.terms().map(|(j, b, _)| b.grade() as i64 + 2 * j).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn filter(&self, keep: impl Fn(i64, Blade) -> bool) -> Self {
        Form {
            dim: self.dim,
            terms: self.terms.iter().filter(|(&(j, b), _)| keep(j, b)).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    pub fn min_h(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_h(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_h().is_none_or(|j| j >= 0)
    }

    pub fn require_polynomial(&self) -> Result<()> {
        match self.min_h() {
            Some(j) if j < 0 => Err(Error::NegativeHPower(j)),
            _ => Ok(()),
        }
    }

    pub fn is_classical(&self) -> bool {
        self.terms.keys().all(|k| k.0 == 0)
    }

    /// Specialization `h = 0` (negative powers are not allowed).
    pub fn at_h_zero(&self) -> Self {
        assert!(self.is_polynomial(), "h = 0 on a Laurent form");
        self.filter(|j, _| j == 0)
    }

    /// Specialization `h = 1`: the classical form `Σ_j α_j`.
    pub fn at_h_one(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (_, b, c) in self.terms() {
            out.add_term(0, b, c);
        }
        out
    }

    /// Rescales `h ↦ t·h` with `t` in the coefficient ring (nonnegative powers only).
    pub fn rescale_h(&self, t: &C) -> Self {
        let mut out = Self::zero(self.dim);
        for (j, b, c) in self.terms() {
            assert!(j >= 0, "rescale_h on a Laurent form");
            out.add_term(j, b, &c.mul_ref(&t.pow(j as u32)));
        }
        out
    }

    /// Multiplies every coefficient by `f` on the left.
    pub fn mul_coeff(&self, f: &C) -> Self {
        let mut out = Self::zero(self.dim);
        for (j, b, c) in self.terms() {
            out.add_term(j, b, &f.mul_ref(c));
        }
        out
    }

    /// Image under the algebra map sending `e^i ↦ Σ_a map[a][i] e^a`.
    pub fn transform(&self, map: &Matrix<C>) -> Self {
        assert_eq!(map.shape(), (self.dim, self.dim));
        let images: Vec<Self> = (0..self.dim)
            .map(|i| Self::from_terms(self.dim, (0..self.dim).map(|a| (0, Blade::single(a), map[(a, i)].clone()))))
            .collect();
        let mut out = Self::zero(self.dim);
        for (j, b, c) in self.terms() {
            let mut img = Self::scalar(self.dim, c.clone());
            for i in b.indices() {
                img = img.wedge(&images[i]);
            }
            out += &img.shift_h(j);
        }
        out
    }
}

impl<C: Ring> Add for Form<C> {
    type Output = Form<C>;
    fn add(mut self, rhs: Form<C>) -> Form<C> {
        self += &rhs;
        self
    }
}

impl<C: Ring> Add<&Form<C>> for &Form<C> {
    type Output = Form<C>;
    fn add(self, rhs: &Form<C>) -> Form<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Ring> Sub for Form<C> {
    type Output = Form<C>;
    fn sub(mut self, rhs: Form<C>) -> Form<C> {
        self -= &rhs;
        self
    }
}

impl<C: Ring> Sub<&Form<C>> for &Form<C> {
    type Output = Form<C>;
    fn sub(self, rhs: &Form<C>) -> Form<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Ring> Neg for Form<C> {
    type Output = Form<C>;
    fn neg(self) -> Form<C> {
        Form { dim: self.dim, terms: self.terms.into_iter().map(|(k, c)| (k, c.neg_ref())).collect() }
    }
}

impl<C: Ring> Neg for &Form<C> {
    type Output = Form<C>;
    fn neg(self) -> Form<C> {
        -self.clone()
    }
}

impl<C: Ring> AddAssign<&Form<C>> for Form<C> {
    fn add_assign(&mut self, rhs: &Form<C>) {
        assert_eq!(self.dim, rhs.dim, "form dimension mismatch");
        for (j, b, c) in rhs.terms() {
            self.add_term(j, b, c);
        }
    }
}

impl<C: Ring> SubAssign<&Form<C>> for Form<C> {
    fn sub_assign(&mut self, rhs: &Form<C>) {
        assert_eq!(self.dim, rhs.dim, "form dimension mismatch");
        for (j, b, c) in rhs.terms() {
            self.add_term(j, b, &c.neg_ref());
        }
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, b, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match j {
                0 => {}
                1 => write!(f, "·h")?,
                _ => write!(f, "·h^{j}")?,
            }
            if b != Blade::EMPTY {
                write!(f, "·{b:?}")?;
            }
        }
        Ok(())
    }
}

impl<C: Ring + fmt::Display> fmt::Debug for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}]({})", self.dim, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    type F = Form<Rat>;

    fn e(m: usize, idx: &[usize]) -> F {
        F::basis(m, idx)
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(3, &[0]).wedge(&e(3, &[1])), e(3, &[0, 1]));
        assert!(e(3, &[0]).wedge(&e(3, &[0])).is_zero());
        assert_eq!(e(3, &[1]).wedge(&e(3, &[0, 2])), -e(3, &[0, 1, 2]));
    }

    #[test]
    fn contraction_examples() {
        let e12 = e(3, &[0, 1]);
        assert_eq!(e12.contract_front(0), e(3, &[1]));
        assert_eq!(e12.contract_front(1), -e(3, &[0]));
        assert!(e12.contract_front(2).is_zero());
        assert_eq!(e12.contract_back(1), e(3, &[0]));
        assert_eq!(e12.contract_back(0), -e(3, &[1]));
        assert!(F::one(3).contract_back(0).is_zero());
        assert!(matches!(e12.try_contract_front(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn bivector_contraction_examples() {
        let mut w = Matrix::<Rat>::zeros(3, 3);
        w[(0, 1)] = Rat::from(1);
        w[(1, 0)] = Rat::from(-1);
        assert_eq!(e(3, &[0, 1]).bivector_contract(&w), F::one(3));
        assert!(e(3, &[0, 2]).bivector_contract(&w).is_zero());
        assert_eq!(e(3, &[0, 1, 2]).bivector_contract(&w), e(3, &[2]));
    }

    #[test]
    fn berezin_and_degrees() {
        let f = e(2, &[0, 1]).scale(&Rat::from(5)) + e(2, &[0]);
        assert_eq!(f.berezin(), Rat::from(5));
        assert_eq!(e(2, &[0]).berezin(), Rat::from(0));
        assert_eq!(e(2, &[0]).shift_h(1).graded_degree(), Some(3));
        assert_eq!((e(2, &[0, 1]) + F::h_power(2, 1)).graded_degree(), Some(2));
        assert_eq!((e(2, &[0]) + F::h_power(2, 1)).graded_degree(), None);
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(e(2, &[0]).try_wedge(&e(3, &[0])), Err(Error::DimensionMismatch(2, 3)));
    }
}
