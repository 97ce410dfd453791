//! Seeded generators of random test inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Blade, Form};
use crate::linalg::Matrix;
use crate::scalar::{FourierCoeff, GRat, PolyCoeff, Rat, Ring};

/// Name and version of the generator, recorded in reports.
pub const PRNG_NAME: &str = "ChaCha8Rng/rand_chacha-0.9";

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in `[-3, 3]` and denominator in `[1, 3]`.
pub fn small_rat(rng: &mut TestRng) -> Rat {
    Rat::new(rng.random_range(-3..=3), rng.random_range(1..=3))
}

pub fn nonzero_rat(rng: &mut TestRng) -> Rat {
    loop {
        let r = small_rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn small_grat(rng: &mut TestRng) -> GRat {
    GRat::new(small_rat(rng), small_rat(rng))
}

pub fn antisymmetric(rng: &mut TestRng, m: usize) -> Matrix<Rat> {
    let mut w = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let c = small_rat(rng);
            w[(j, i)] = c.neg_ref();
            w[(i, j)] = c;
        }
    }
    w
}

/// Random invertible antisymmetric matrix (even `m`).
pub fn symplectic_matrix(rng: &mut TestRng, m: usize) -> Matrix<Rat> {
    loop {
        let w = antisymmetric(rng, m);
        if !w.det().is_zero() {
            return w;
        }
    }
}

pub fn invertible(rng: &mut TestRng, m: usize) -> Matrix<Rat> {
    loop {
        let a = Matrix::from_fn(m, m, |_, _| small_rat(rng));
        if !a.det().is_zero() {
            return a;
        }
    }
}

pub fn blade(rng: &mut TestRng, m: usize, grade: usize) -> Blade {
    let mut idx: Vec<usize> = (0..m).collect();
    for i in 0..grade {
        let k = rng.random_range(i..m);
        idx.swap(i, k);
    }
    Blade::from_indices(&idx[..grade]).unwrap()
}

/// Polynomial in `m` variables with up to `terms` terms of degree `≤ max_deg`.
pub fn poly(rng: &mut TestRng, m: usize, terms: usize, max_deg: u32) -> PolyCoeff {
    PolyCoeff::from_terms((0..terms).map(|_| {
        let e: Vec<u32> = (0..m).map(|_| rng.random_range(0..=max_deg)).collect();
        (e, small_rat(rng))
    }))
}

/// Fourier sum with up to `terms` modes of frequencies in `[-max_freq, max_freq]`.
pub fn fourier(rng: &mut TestRng, m: usize, terms: usize, max_freq: i64) -> FourierCoeff {
    FourierCoeff::from_modes((0..terms).map(|_| {
        let k: Vec<i64> = (0..m).map(|_| rng.random_range(-max_freq..=max_freq)).collect();
        (k, small_grat(rng))
    }))
}

/// Form with `terms` random terms; each term draws its exterior degree from
/// `0..=m` and its `h`-exponent from `h_range`.
pub fn form<C: Ring>(
    rng: &mut TestRng,
    m: usize,
    terms: usize,
    h_range: std::ops::RangeInclusive<i64>,
    mut coeff: impl FnMut(&mut TestRng) -> C,
) -> Form<C> {
    let mut f = Form::zero(m);
    for _ in 0..terms {
        let k = rng.random_range(0..=m);
        let b = blade(rng, m, k);
        let j = rng.random_range(h_range.clone());
        f.add_term(j, b, &coeff(rng));
    }
    f
}

/// Form of exterior degree `k` (all `h`-exponents zero).
pub fn form_of_degree<C: Ring>(
    rng: &mut TestRng,
    m: usize,
    k: usize,
    terms: usize,
    mut coeff: impl FnMut(&mut TestRng) -> C,
) -> Form<C> {
    let mut f = Form::zero(m);
    for _ in 0..terms {
        let b = blade(rng, m, k);
        f.add_term(0, b, &coeff(rng));
    }
    f
}

/// Homogeneous form of graded degree `n` with `h`-exponents `≥ min_h`.
pub fn homogeneous<C: Ring>(
    rng: &mut TestRng,
    m: usize,
    n: i64,
    min_h: i64,
    terms: usize,
    mut coeff: impl FnMut(&mut TestRng) -> C,
) -> Form<C> {
    let choices: Vec<(i64, usize)> = (0..=m)
        .filter(|&k| (n - k as i64) % 2 == 0 && (n - k as i64) / 2 >= min_h)
        .map(|k| ((n - k as i64) / 2, k))
        .collect();
    let mut f = Form::zero(m);
    if choices.is_empty() {
        return f;
    }
    for _ in 0..terms {
        let (j, k) = choices[rng.random_range(0..choices.len())];
        let b = blade(rng, m, k);
        f.add_term(j, b, &coeff(rng));
    }
    f
}

/// `w = f (u ∧ v)` for constant vectors `u`, `v`; Poisson for every `f`.
pub fn rank_two_bivector<C: Ring>(rng: &mut TestRng, m: usize, f: &C) -> Matrix<C> {
    let u: Vec<Rat> = (0..m).map(|_| small_rat(rng)).collect();
    let v: Vec<Rat> = (0..m).map(|_| small_rat(rng)).collect();
    Matrix::from_fn(m, m, |i, j| {
        let c = u[i].mul_ref(&v[j]) - v[i].mul_ref(&u[j]);
        f.mul_ref(&C::from_rat(&c))
    })
}
