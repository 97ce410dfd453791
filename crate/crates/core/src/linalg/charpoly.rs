//! Exact characteristic polynomials and their factorization over `Q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Matrix;
use crate::scalar::{denominator_lcm, EuclideanRing, Field, HPoly, Rat, Ring};

/// `det(λI - M)` via similarity reduction to upper Hessenberg form.
pub fn charpoly<F: Field>(m: &Matrix<F>) -> HPoly<F> {
    assert!(m.is_square(), "charpoly of a non-square matrix");
    let n = m.nrows();
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else { continue };
        if p != j + 1 {
            h.swap_rows(p, j + 1);
            h.swap_cols(p, j + 1);
        }
        let piv_inv = h[(j + 1, j)].inv().unwrap();
        for k in j + 2..n {
            if h[(k, j)].is_zero() {
                continue;
            }
            let u = h[(k, j)].mul_ref(&piv_inv);
            h.add_row_multiple(k, j + 1, &u.neg_ref());
            h.add_col_multiple(j + 1, k, &u);
        }
    }
    let lambda = HPoly::<F>::h();
    let mut p: Vec<HPoly<F>> = vec![HPoly::one()];
    for k in 0..n {
        let mut pk = (lambda.clone() - HPoly::constant(h[(k, k)].clone())).mul_ref(&p[k]);
        let mut prod = F::one();
        for i in (0..k).rev() {
            prod = prod.mul_ref(&h[(i + 1, i)]);
            if prod.is_zero() {
                break;
            }
            let c = prod.mul_ref(&h[(i, k)]);
            if !c.is_zero() {
                pk = pk - p[i].scale(&c);
            }
        }
        p.push(pk);
    }
    p.pop().unwrap()
}

/// `det(M + λI)` computed directly by fraction-free elimination over `Q[λ]`.
pub fn det_shifted<F: Field>(m: &Matrix<F>) -> HPoly<F> {
    let n = m.nrows();
    let pm = Matrix::from_fn(n, n, |i, j| {
        let c = HPoly::constant(m[(i, j)].clone());
        if i == j {
            c + HPoly::h()
        } else {
            c
        }
    });
    pm.det()
}

/// Evaluates a polynomial at a square matrix (Horner).
pub fn eval_at_matrix<F: Field>(p: &HPoly<F>, m: &Matrix<F>) -> Matrix<F> {
    let n = m.nrows();
    let mut acc = Matrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m).add(&Matrix::identity(n).scale(c));
    }
    acc
}

/// Squarefree decomposition (Yun): `p = Π f_i^i`, returned as `(f_i, i)`.
pub fn squarefree_decomposition<F: Field>(p: &HPoly<F>) -> Vec<(HPoly<F>, usize)> {
    let p = p.monic();
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let dp = p.derivative();
    let a = p.gcd(&dp);
    let mut b = p.div_rem(&a).0;
    let mut c = dp.div_rem(&a).0;
    let mut d = c - b.derivative();
    let mut i = 1;
    loop {
        let g = b.gcd(&d);
        if g.degree() != Some(0) {
            out.push((g.clone(), i));
        }
        b = b.div_rem(&g).0;
        if b.degree() == Some(0) {
            break;
        }
        c = d.div_rem(&g).0;
        d = c - b.derivative();
        i += 1;
    }
    out
}

/// Radical of `p`: the product of its distinct monic irreducible factors.
pub fn radical<F: Field>(p: &HPoly<F>) -> HPoly<F> {
    let g = p.gcd(&p.derivative());
    p.div_rem(&g).0.monic()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    // The matrices handled here have small characteristic coefficients.
    let limit = n.sqrt();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while d <= limit {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

/// One factor of a rational polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    /// `λ - root`
    Linear(Rat),
    /// Monic irreducible quadratic `λ² + bλ + c` with discriminant `b² - 4c`.
    Quadratic { b: Rat, c: Rat, discriminant: Rat },
    /// Irreducible over `Q` as far as the rational root search can tell.
    Other(HPoly<Rat>),
}

impl Factor {
    pub fn poly(&self) -> HPoly<Rat> {
        match self {
            Factor::Linear(r) => HPoly::from_coeffs(vec![r.neg_ref(), Rat::one()]),
            Factor::Quadratic { b, c, .. } => HPoly::from_coeffs(vec![c.clone(), b.clone(), Rat::one()]),
            Factor::Other(p) => p.clone(),
        }
    }

    /// Human-readable root description.
    pub fn roots_string(&self) -> String {
        match self {
            Factor::Linear(r) => r.to_string(),
            Factor::Quadratic { b, discriminant, .. } => {
                let center = b.neg_ref() * Rat::new(1, 2);
                let quarter = discriminant.clone() * Rat::new(1, 4);
                if discriminant.is_negative() {
                    format!("{} ± i·sqrt({})", center, quarter.neg_ref())
                } else {
                    format!("{} ± sqrt({})", center, quarter)
                }
            }
            Factor::Other(p) => format!("roots of {}", p),
        }
    }
}

fn rational_roots(p: &HPoly<Rat>) -> Vec<Rat> {
    if p.is_zero() {
        return vec![];
    }
    let mut roots = Vec::new();
    if p.coeff(0).is_zero() {
        roots.push(Rat::zero());
    }
    let v = p.valuation().unwrap();
    let trimmed = HPoly::from_coeffs(p.coeffs()[v..].to_vec());
    let l = denominator_lcm(trimmed.coeffs());
    let ints: Vec<BigInt> = trimmed.coeffs().iter().map(|c| c.numer() * &l / c.denom()).collect();
    let a0 = ints.first().unwrap();
    let an = ints.last().unwrap();
    if a0.bits() > 64 || an.bits() > 64 {
        return roots;
    }
    for pn in divisors(a0) {
        for qd in divisors(an) {
            for s in [1i64, -1] {
                let cand = Rat::from_big(&pn * s, qd.clone());
                if !roots.contains(&cand) && trimmed.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Factorization of `p` over `Q` into linear, quadratic and residual factors
/// with multiplicities.
pub fn factor_rational(p: &HPoly<Rat>) -> Vec<(Factor, usize)> {
    let mut out = Vec::new();
    for (f, mult) in squarefree_decomposition(p) {
        let mut rest = f;
        for r in rational_roots(&rest) {
            let lin = HPoly::from_coeffs(vec![r.neg_ref(), Rat::one()]);
            rest = rest.div_rem(&lin).0;
            out.push((Factor::Linear(r), mult));
        }
        match rest.degree() {
            Some(0) | None => {}
            Some(2) => {
                let rest = rest.monic();
                let b = rest.coeff(1);
                let c = rest.coeff(0);
                let discriminant = b.mul_ref(&b) - Rat::from(4) * &c;
                out.push((Factor::Quadratic { b, c, discriminant }, mult));
            }
            Some(_) => out.push((Factor::Other(rest.monic()), mult)),
        }
    }
    out
}
