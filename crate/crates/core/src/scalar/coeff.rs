//! Function-valued coefficients: polynomial functions on affine space and
//! finite Fourier sums on the torus.
//!
//! Exponent and frequency vectors are stored with trailing zeros trimmed, so a
//! value does not need to know the ambient dimension.

use std::collections::BTreeMap;
use std::fmt;

use super::{CoeffRing, GRat, Rat, Ring};
use crate::error::{Error, Result};

fn trim<T: Default + PartialEq>(mut v: Vec<T>) -> Vec<T> {
    while v.last().is_some_and(|x| *x == T::default()) {
        v.pop();
    }
    v
}

/// Polynomial in `x_1, …, x_m` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PolyCoeff {
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl PolyCoeff {
    pub fn constant(c: Rat) -> Self {
        Self::term(c, vec![])
    }

    pub fn term(c: Rat, exps: Vec<u32>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exps), c);
        }
        PolyCoeff { terms }
    }

    /// The coordinate function `x_{axis+1}` (axis is 0-based).
    pub fn var(axis: usize) -> Self {
        let mut e = vec![0; axis + 1];
        e[axis] = 1;
        Self::term(Rat::one(), e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut out = PolyCoeff::default();
        for (e, c) in it {
            out.add_term(trim(e), &c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    /// Number of variables actually used.
    pub fn support_dim(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Checked partial derivative in an `m`-dimensional space.
    pub fn partial_checked(&self, axis: usize, dim: usize) -> Result<Self> {
        if axis >= dim {
            return Err(Error::AxisOutOfRange { axis, dim });
        }
        Ok(self.partial(axis))
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &p) in e.iter().enumerate() {
                t = t * point.get(k).cloned().unwrap_or_else(Rat::zero).pow(p);
            }
            acc += &t;
        }
        acc
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }
}

impl Ring for PolyCoeff {
    fn zero() -> Self {
        PolyCoeff::default()
    }
    fn one() -> Self {
        PolyCoeff::constant(Rat::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &c.neg_ref());
        }
        out
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let n = ea.len().max(eb.len());
                let e: Vec<u32> =
                    (0..n).map(|k| ea.get(k).copied().unwrap_or(0) + eb.get(k).copied().unwrap_or(0)).collect();
                *acc.entry(e).or_insert_with(Rat::zero) += &ca.mul_ref(cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        PolyCoeff { terms: acc }
    }
    fn neg_ref(&self) -> Self {
        PolyCoeff { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg_ref())).collect() }
    }
    fn from_rat(r: &Rat) -> Self {
        PolyCoeff::constant(r.clone())
    }
}

crate::ring_ops!(PolyCoeff);

impl CoeffRing for PolyCoeff {
    fn partial(&self, axis: usize) -> Self {
        let mut out = PolyCoeff::default();
        for (e, c) in &self.terms {
            let p = e.get(axis).copied().unwrap_or(0);
            if p == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[axis] -= 1;
            out.add_term(trim(e2), &c.mul_ref(&Rat::from(p as i64)));
        }
        out
    }

    fn is_constant(&self) -> bool {
        self.terms.keys().all(Vec::is_empty)
    }
}

impl fmt::Display for PolyCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(k, &p)| if p == 1 { format!("x{}", k + 1) } else { format!("x{}^{}", k + 1, p) })
                    .collect();
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => mono.join("*"),
                    (false, false) => format!("{}*{}", c, mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PolyCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Finite Fourier sum `Σ c_k exp(i k·θ)` on the torus, `c_k ∈ Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FourierCoeff {
    modes: BTreeMap<Vec<i64>, GRat>,
}

impl FourierCoeff {
    pub fn constant(c: GRat) -> Self {
        Self::mode(c, vec![])
    }

    /// `c · exp(i k·θ)`.
    pub fn mode(c: GRat, k: Vec<i64>) -> Self {
        let mut modes = BTreeMap::new();
        if !c.is_zero() {
            modes.insert(trim(k), c);
        }
        FourierCoeff { modes }
    }

    pub fn from_modes(it: impl IntoIterator<Item = (Vec<i64>, GRat)>) -> Self {
        let mut out = FourierCoeff::default();
        for (k, c) in it {
            out.add_mode(trim(k), &c);
        }
        out
    }

    fn add_mode(&mut self, k: Vec<i64>, c: &GRat) {
        if c.is_zero() {
            return;
        }
        match self.modes.get_mut(&k) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.modes.remove(&k);
                }
            }
            None => {
                self.modes.insert(k, c.clone());
            }
        }
    }

    pub fn modes(&self) -> impl Iterator<Item = (&Vec<i64>, &GRat)> {
        self.modes.iter()
    }

    /// Coefficient of the frequency `k` (trailing zeros irrelevant).
    pub fn coeff(&self, k: &[i64]) -> GRat {
        let k = trim(k.to_vec());
        self.modes.get(&k).cloned().unwrap_or_else(GRat::zero)
    }

    /// Frequency vector padded to length `dim`.
    pub fn padded(k: &[i64], dim: usize) -> Vec<i64> {
        let mut v = k.to_vec();
        v.resize(dim.max(v.len()), 0);
        v
    }

    /// Integral over the torus with volume normalized to 1: the zero mode.
    pub fn total_integral(&self) -> GRat {
        self.coeff(&[])
    }

    pub fn partial_checked(&self, axis: usize, dim: usize) -> Result<Self> {
        if axis >= dim {
            return Err(Error::AxisOutOfRange { axis, dim });
        }
        Ok(self.partial(axis))
    }

    /// Real-valued iff `c_{-k} = conj(c_k)` for every `k`.
    pub fn is_real_valued(&self) -> bool {
        self.modes.iter().all(|(k, c)| {
            let neg: Vec<i64> = k.iter().map(|x| -x).collect();
            self.coeff(&neg) == c.conj()
        })
    }

    pub fn scale(&self, c: &GRat) -> Self {
        Self::from_modes(self.modes.iter().map(|(k, v)| (k.clone(), v.mul_ref(c))))
    }

    /// Restriction to a single frequency.
    pub fn project(&self, k: &[i64]) -> Self {
        Self::mode(self.coeff(k), k.to_vec())
    }

    pub fn as_constant(&self) -> Option<GRat> {
        if self.modes.keys().all(Vec::is_empty) {
            Some(self.coeff(&[]))
        } else {
            None
        }
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.modes.keys()
    }
}

impl Ring for FourierCoeff {
    fn zero() -> Self {
        FourierCoeff::default()
    }
    fn one() -> Self {
        FourierCoeff::constant(GRat::one())
    }
    fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.modes {
            out.add_mode(k.clone(), c);
        }
        out
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.modes {
            out.add_mode(k.clone(), &c.neg_ref());
        }
        out
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = FourierCoeff::default();
        for (ka, ca) in &self.modes {
            for (kb, cb) in &rhs.modes {
                let n = ka.len().max(kb.len());
                let k: Vec<i64> =
                    (0..n).map(|t| ka.get(t).copied().unwrap_or(0) + kb.get(t).copied().unwrap_or(0)).collect();
                out.add_mode(trim(k), &ca.mul_ref(cb));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        FourierCoeff { modes: self.modes.iter().map(|(k, c)| (k.clone(), c.neg_ref())).collect() }
    }
    fn from_rat(r: &Rat) -> Self {
        FourierCoeff::constant(GRat::real(r.clone()))
    }
}

crate::ring_ops!(FourierCoeff);

impl CoeffRing for FourierCoeff {
    fn partial(&self, axis: usize) -> Self {
        FourierCoeff::from_modes(self.modes.iter().filter_map(|(k, c)| {
            let ka = k.get(axis).copied().unwrap_or(0);
            if ka == 0 {
                None
            } else {
                Some((k.clone(), c.mul_ref(&GRat::new(Rat::zero(), Rat::from(ka)))))
            }
        }))
    }

    fn is_constant(&self) -> bool {
        self.modes.keys().all(Vec::is_empty)
    }
}

impl fmt::Display for FourierCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modes.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .modes
            .iter()
            .map(|(k, c)| if k.is_empty() { c.to_string() } else { format!("{}*e^{{i{:?}}}", c, k) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FourierCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
