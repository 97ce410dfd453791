//! The quantum exterior product `∧_{h,w}` and the Fröbenius pairing.
//!
//! The `n`-th term of the defining series sums over ordered index tuples and
//! divides by `n!`. Both contraction strings are antisymmetric in their
//! indices, so the sum collapses to subsets `S ⊆ I`, `T ⊆ J` weighted by the
//! minor `det W[S, T]`:
//!
//! `e^I ∧_h e^J = Σ_{|S|=|T|=n} h^n det W[S,T] (e^I ⊣ e_{s_1} ⊣ … ⊣ e_{s_n}) ∧ (e_{t_n} ⊢ … ⊢ e_{t_1} ⊢ e^J)`
//!
//! with `s`, `t` increasing.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{Blade, Form};
use crate::linalg::Matrix;
use crate::scalar::Ring;

/// `e^I ⊣ e_{s_1} ⊣ … ⊣ e_{s_n}` for increasing `s`: returns `(negative, I \ S)`.
fn back_contract_string(i: Blade, s: Blade) -> (bool, Blade) {
    let mut cur = i;
    let mut neg = false;
    for x in s.indices() {
        neg ^= cur.count_above(x) % 2 == 1;
        cur = cur.without(x);
    }
    (neg, cur)
}

/// `e_{t_n} ⊢ … ⊢ e_{t_1} ⊢ e^J` for increasing `t`.
fn front_contract_string(j: Blade, t: Blade) -> (bool, Blade) {
    let mut cur = j;
    let mut neg = false;
    for x in t.indices() {
        neg ^= cur.count_below(x) % 2 == 1;
        cur = cur.without(x);
    }
    (neg, cur)
}

struct Minors<'a, C> {
    w: &'a Matrix<C>,
    cache: HashMap<(Blade, Blade), C>,
}

impl<C: Ring> Minors<'_, C> {
    fn get(&mut self, s: Blade, t: Blade) -> C {
        if let Some(c) = self.cache.get(&(s, t)) {
            return c.clone();
        }
        let rows: Vec<usize> = s.indices().collect();
        let cols: Vec<usize> = t.indices().collect();
        let d = self.w.submatrix(&rows, &cols).det_expansion();
        self.cache.insert((s, t), d.clone());
        d
    }
}

fn check_bivector<C: Ring>(dim: usize, w: &Matrix<C>) -> Result<()> {
    if w.shape() != (dim, dim) {
        return Err(Error::DimensionMismatch(dim, w.nrows()));
    }
    Ok(())
}

fn qwedge_term<C: Ring>(
    out: &mut Form<C>,
    minors: &mut Minors<'_, C>,
    (j1, bi, c1): (i64, Blade, &C),
    (j2, bj, c2): (i64, Blade, &C),
) {
    let c = c1.mul_ref(c2);
    for n in 0..=bi.grade().min(bj.grade()) {
        for s in bi.subsets_of_grade(n) {
            let (neg_s, rest_i) = back_contract_string(bi, s);
            for t in bj.subsets_of_grade(n) {
                let (neg_t, rest_j) = front_contract_string(bj, t);
                let Some((neg_w, b)) = rest_i.wedge(rest_j) else { continue };
                let det = if n == 0 { C::one() } else { minors.get(s, t) };
                if det.is_zero() {
                    continue;
                }
                let mut coeff = c.mul_ref(&det);
                if neg_s ^ neg_t ^ neg_w {
                    coeff = coeff.neg_ref();
                }
                out.add_term(j1 + j2 + n as i64, b, &coeff);
            }
        }
    }
}

/// `α ∧_{h,w} β`. Panics on dimension mismatch.
pub fn qwedge<C: Ring>(alpha: &Form<C>, beta: &Form<C>, w: &Matrix<C>) -> Form<C> {
    try_qwedge(alpha, beta, w).expect("qwedge")
}

pub fn try_qwedge<C: Ring>(alpha: &Form<C>, beta: &Form<C>, w: &Matrix<C>) -> Result<Form<C>> {
    qwedge_with(Exec::Sequential, alpha, beta, w)
}

/// `qwedge` with the outer sum over the terms of `α` distributed by `exec`.
pub fn qwedge_with<C: Ring>(exec: Exec, alpha: &Form<C>, beta: &Form<C>, w: &Matrix<C>) -> Result<Form<C>> {
    alpha.check_dim(beta)?;
    let dim = alpha.dim();
    check_bivector(dim, w)?;
    let a_terms: Vec<(i64, Blade, C)> = alpha.terms().map(|(j, b, c)| (j, b, c.clone())).collect();
    let partials = exec.map(&a_terms, |(j1, bi, c1)| {
        let mut minors = Minors { w, cache: HashMap::new() };
        let mut out = Form::zero(dim);
        for tb in beta.terms() {
            qwedge_term(&mut out, &mut minors, (*j1, *bi, c1), tb);
        }
        out
    });
    let mut out = Form::zero(dim);
    for p in &partials {
        out += p;
    }
    Ok(out)
}

/// Quantum product at `h = 1`, the product `∧_w` on `Λ(V*)`.
pub fn wedge_w<C: Ring>(alpha: &Form<C>, beta: &Form<C>, w: &Matrix<C>) -> Form<C> {
    qwedge(alpha, beta, w).at_h_one()
}

/// `<α, β> = ∫ α ∧_w β` (Berezin integral of the `h = 1` product).
pub fn frobenius_pairing<C: Ring>(alpha: &Form<C>, beta: &Form<C>, w: &Matrix<C>) -> Result<C> {
    Ok(try_qwedge(alpha, beta, w)?.at_h_one().berezin())
}

/// Gram matrix of the Fröbenius pairing on the monomial basis, ordered as `Blade::all`.
pub fn gram_matrix<C: Ring>(dim: usize, w: &Matrix<C>) -> Result<Matrix<C>> {
    let basis: Vec<Form<C>> = Blade::all(dim).into_iter().map(|b| Form::monomial(dim, 0, b, C::one())).collect();
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (r, a) in basis.iter().enumerate() {
        for (c, b) in basis.iter().enumerate() {
            m[(r, c)] = frobenius_pairing(a, b, w)?;
        }
    }
    Ok(m)
}

/// Matrix product with entries multiplied by `∧_h`.
pub fn qwedge_matrix<C: Ring>(a: &[Vec<Form<C>>], b: &[Vec<Form<C>>], w: &Matrix<C>) -> Vec<Vec<Form<C>>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "matrix shape mismatch");
            (0..cols)
                .map(|c| {
                    let dim = row.first().map_or(0, Form::dim);
                    let mut acc = Form::zero(dim);
                    for (k, x) in row.iter().enumerate() {
                        acc += &qwedge(x, &b[k][c], w);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    type F = Form<Rat>;

    fn w2(a: i64) -> Matrix<Rat> {
        Matrix::from_rows(vec![vec![Rat::from(0), Rat::from(a)], vec![Rat::from(-a), Rat::from(0)]])
    }

    #[test]
    fn normalization() {
        let w = w2(1);
        let p = qwedge(&F::basis(2, &[0]), &F::basis(2, &[1]), &w);
        assert_eq!(p, F::basis(2, &[0, 1]) + F::h_power(2, 1));
    }

    #[test]
    fn top_square() {
        // e^{12} ∧_h e^{12} = -2a h e^{12} - a² h²
        let a = 3;
        let e12 = F::basis(2, &[0, 1]);
        let p = qwedge(&e12, &e12, &w2(a));
        let expected = e12.shift_h(1).scale(&Rat::from(-2 * a)) + F::h_power(2, 2).scale(&Rat::from(-a * a));
        assert_eq!(p, expected);
    }

    #[test]
    fn unit_and_pairing() {
        let w = w2(1);
        let e1 = F::basis(2, &[0]);
        assert_eq!(qwedge(&e1, &F::one(2), &w), e1);
        assert_eq!(frobenius_pairing(&e1, &F::basis(2, &[1]), &w2(0)).unwrap(), Rat::from(1));
        assert_eq!(frobenius_pairing(&e1, &F::basis(2, &[1]), &w).unwrap(), Rat::from(1));
        assert_eq!(frobenius_pairing(&F::one(2), &F::basis(2, &[0, 1]), &w).unwrap(), Rat::from(1));
    }
}
