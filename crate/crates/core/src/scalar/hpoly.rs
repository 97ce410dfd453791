//! Univariate polynomials and Laurent polynomials in the deformation parameter `h`.
//!
//! `h` carries grading weight 2 everywhere in the engine; these types only know
//! about h-exponents, the weight is applied by the form layer.

use std::fmt;

use super::{EuclideanRing, Field, Rat, Ring};

/// Polynomial in `h` over a field, dense, no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> HPoly<F> {
    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HPoly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: F, j: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); j + 1];
        coeffs[j] = c;
        HPoly { coeffs }
    }

    /// The indeterminate `h`.
    pub fn h() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, j: usize) -> F {
        self.coeffs.get(j).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &F)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// True when the polynomial is `c·h^j` for a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms().count() == 1
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.terms().next().map(|(j, _)| j)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(j, c)| c.mul_ref(&F::from_int(j as i64))).collect(),
        )
    }

    /// `p(h + a)`, by Horner's scheme.
    pub fn shift(&self, a: &F) -> Self {
        let lin = Self::from_coeffs(vec![a.clone(), F::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(&lin).add_ref(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<F: Field> Ring for HPoly<F> {
    fn zero() -> Self {
        HPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|j| self.coeff(j).add_ref(&rhs.coeff(j))).collect())
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|j| self.coeff(j).sub_ref(&rhs.coeff(j))).collect())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &a.mul_ref(b);
                }
            }
        }
        Self::from_coeffs(out)
    }
    fn neg_ref(&self) -> Self {
        HPoly { coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }
    fn from_rat(r: &Rat) -> Self {
        Self::constant(F::from_rat(r))
    }
}

crate::ring_ops!([F: Field] HPoly<F>);

impl<F: Field> EuclideanRing for HPoly<F> {
    fn norm(&self) -> Option<u64> {
        self.degree().map(|d| d as u64)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul_ref(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c.mul_ref(b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    fn normalizing_unit(&self) -> Self {
        match self.leading() {
            Some(l) => Self::constant(l.inv().unwrap()),
            None => Self::one(),
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.degree() == Some(0) {
            Some(Self::constant(self.coeffs[0].inv()?))
        } else {
            None
        }
    }
}

/// Laurent polynomial in `h`: `h^val · (c_0 + c_1 h + …)` with `c_0 ≠ 0` and
/// nonzero top coefficient. Units are exactly `c·h^j`, `c ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HLaurent<F> {
    val: i64,
    coeffs: Vec<F>,
}

impl<F: Field> HLaurent<F> {
    pub fn new(val: i64, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return HLaurent { val: 0, coeffs: Vec::new() };
        }
        coeffs.drain(..lead_zeros);
        HLaurent { val: val + lead_zeros as i64, coeffs }
    }

    pub fn monomial(c: F, j: i64) -> Self {
        Self::new(j, vec![c])
    }

    pub fn h() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn h_inv() -> Self {
        Self::monomial(F::one(), -1)
    }

    pub fn from_poly(p: &HPoly<F>) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    /// Lowest exponent present, `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.valuation().map(|v| v + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, j: i64) -> F {
        let k = j - self.val;
        if k < 0 {
            return F::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        let v = self.val;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (v + k as i64, c))
    }

    /// `h^{-val}·self`, a polynomial with nonzero constant term.
    pub fn polynomial_part(&self) -> HPoly<F> {
        HPoly::from_coeffs(self.coeffs.clone())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms().count() == 1
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.val, self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Multiplication by `h^j`.
    pub fn shift_h(&self, j: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        HLaurent { val: self.val + j, coeffs: self.coeffs.clone() }
    }
}

impl<F: Field> Ring for HLaurent<F> {
    fn zero() -> Self {
        HLaurent { val: 0, coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::monomial(F::one(), 0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.val.min(rhs.val);
        let hi = self.max_exponent().unwrap().max(rhs.max_exponent().unwrap());
        Self::new(lo, (lo..=hi).map(|j| self.coeff(j).add_ref(&rhs.coeff(j))).collect())
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let p = self.polynomial_part().mul_ref(&rhs.polynomial_part());
        Self::new(self.val + rhs.val, p.coeffs().to_vec())
    }
    fn neg_ref(&self) -> Self {
        HLaurent { val: self.val, coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }
    fn from_rat(r: &Rat) -> Self {
        Self::monomial(F::from_rat(r), 0)
    }
}

crate::ring_ops!([F: Field] HLaurent<F>);

impl<F: Field> EuclideanRing for HLaurent<F> {
    fn norm(&self) -> Option<u64> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() as u64 - 1)
        }
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let (q, r) = self.polynomial_part().div_rem(&d.polynomial_part());
        let q = Self::from_poly(&q).shift_h(self.val - d.val);
        let r = Self::from_poly(&r).shift_h(self.val);
        (q, r)
    }

    fn normalizing_unit(&self) -> Self {
        if self.is_zero() {
            return Self::one();
        }
        let lead = self.coeffs.last().unwrap().inv().unwrap();
        Self::monomial(lead, -self.val)
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            Some(Self::monomial(self.coeffs[0].inv()?, -self.val))
        } else {
            None
        }
    }
}

fn fmt_terms<F: fmt::Display>(f: &mut fmt::Formatter<'_>, terms: Vec<(i64, &F)>) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (n, (j, c)) in terms.iter().rev().enumerate() {
        let cs = c.to_string();
        let (neg, body) = match cs.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, cs),
        };
        if n == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        let unit = body == "1";
        match (*j, unit) {
            (0, _) => write!(f, "{body}")?,
            (1, true) => write!(f, "h")?,
            (1, false) => write!(f, "{body}h")?,
            (_, true) => write!(f, "h^{j}")?,
            (_, false) => write!(f, "{body}h^{j}")?,
        }
    }
    Ok(())
}

impl<F: Field + fmt::Display> fmt::Display for HPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms().map(|(j, c)| (j as i64, c)).collect())
    }
}

impl<F: Field + fmt::Display> fmt::Debug for HPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field + fmt::Display> fmt::Display for HLaurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms().collect())
    }
}

impl<F: Field + fmt::Display> fmt::Debug for HLaurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = HPoly<Rat>;
    type L = HLaurent<Rat>;

    fn p(cs: &[i64]) -> P {
        P::from_coeffs(cs.iter().map(|&c| Rat::from(c)).collect())
    }

    #[test]
    fn long_division() {
        // h^3 - 1 = (h - 1)(h^2 + h + 1)
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[0, 2]));
        assert_eq!(q, P::from_coeffs(vec![Rat::zero(), Rat::new(1, 2)]));
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 0, 1]).to_string(), "h^3 - 2h + 1");
        assert_eq!(p(&[0, 0, 1]).to_string(), "h^2");
        assert_eq!(L::monomial(Rat::from(3), -2).to_string(), "3h^-2");
    }

    #[test]
    fn laurent_units_and_normalization() {
        let u = L::monomial(Rat::new(-2, 3), -4);
        assert!(u.is_unit());
        assert_eq!(u.clone() * u.unit_inverse().unwrap(), L::one());
        // h^-1 (3h^2 + 6h) normalizes to h + 2
        let x = L::new(-1, vec![Rat::zero(), Rat::from(6), Rat::from(3)]);
        assert_eq!(x.normalized(), L::new(0, vec![Rat::from(2), Rat::from(1)]));
    }

    #[test]
    fn laurent_division_identity() {
        let a = L::new(-3, vec![Rat::from(1), Rat::from(2), Rat::from(0), Rat::from(5)]);
        let d = L::new(2, vec![Rat::from(1), Rat::from(1)]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q * &d + r.clone(), a);
        assert!(r.is_zero() || r.norm() < d.norm());
    }

    #[test]
    fn shift_and_gcd() {
        // (h+1)^2 evaluated as p(h+1) where p = h^2
        assert_eq!(p(&[0, 0, 1]).shift(&Rat::one()), p(&[1, 2, 1]));
        let g = (p(&[1, 1]) * p(&[2, 1])).gcd(&(p(&[1, 1]) * p(&[3, 1])));
        assert_eq!(g, p(&[1, 1]));
    }
}
