//! Smith normal form over a Euclidean ring.
//!
//! Pivots are chosen by minimal Euclidean norm (first in row-major order on
//! ties) and normalized by the ring's canonical unit, so invariant factors are
//! monic in `Q[h]` and monic with nonzero constant term in `Q[h, h⁻¹]`.
//! For graded input whose entries are monomials in `h` every elementary
//! operation performed is homogeneous, so the transforms stay graded.

use super::Matrix;
use crate::scalar::EuclideanRing;

#[derive(Clone, Debug)]
pub struct Snf<R> {
    /// `u · a · v`, diagonal with `d_1 | d_2 | …`.
    pub d: Matrix<R>,
    pub u: Matrix<R>,
    pub u_inv: Matrix<R>,
    pub v: Matrix<R>,
    pub v_inv: Matrix<R>,
    pub rank: usize,
}

impl<R: EuclideanRing> Snf<R> {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<R> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Calc<R> {
    d: Matrix<R>,
    u: Matrix<R>,
    u_inv: Matrix<R>,
    v: Matrix<R>,
    v_inv: Matrix<R>,
}

impl<R: EuclideanRing> Calc<R> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[t] += c row[s]
    fn add_row(&mut self, t: usize, s: usize, c: &R) {
        self.d.add_row_multiple(t, s, c);
        self.u.add_row_multiple(t, s, c);
        self.u_inv.add_col_multiple(s, t, &c.neg_ref());
    }

    /// col[t] += c col[s]
    fn add_col(&mut self, t: usize, s: usize, c: &R) {
        self.d.add_col_multiple(t, s, c);
        self.v.add_col_multiple(t, s, c);
        self.v_inv.add_row_multiple(s, t, &c.neg_ref());
    }

    fn scale_row(&mut self, i: usize, unit: &R) {
        let inv = unit.unit_inverse().expect("row scaling by a non-unit");
        self.d.scale_row(i, unit);
        self.u.scale_row(i, unit);
        self.u_inv.scale_col(i, &inv);
    }

    fn min_norm_entry(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.d.shape();
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if let Some(nm) = self.d[(i, j)].norm() {
                    if best.is_none_or(|(b, _, _)| nm < b) {
                        best = Some((nm, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) -> usize {
        let (m, n) = self.d.shape();
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.min_norm_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..m {
                    if self.d[(i, t)].is_zero() {
                        continue;
                    }
                    let (q, _) = self.d[(i, t)].div_rem(&self.d[(t, t)]);
                    self.add_row(i, t, &q.neg_ref());
                    if !self.d[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if self.d[(t, j)].is_zero() {
                        continue;
                    }
                    let (q, _) = self.d[(t, j)].div_rem(&self.d[(t, t)]);
                    self.add_col(j, t, &q.neg_ref());
                    if !self.d[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // a remainder of smaller norm survived; bring it to the pivot
                    let (pi, pj) = self.min_norm_entry(t).unwrap();
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                let piv = self.d[(t, t)].clone();
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !piv.divides(&self.d[(i, j)]));
                match bad {
                    Some((i, _)) => {
                        let one = R::one();
                        self.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            let unit = self.d[(t, t)].normalizing_unit();
            if !unit.is_one() {
                self.scale_row(t, &unit);
            }
            t += 1;
        }
        t
    }
}

/// Computes `(D, U, V)` with `U·A·V = D` and the rank of `A`.
pub fn smith_normal_form<R: EuclideanRing>(a: &Matrix<R>) -> Snf<R> {
    let (m, n) = a.shape();
    let mut calc = Calc {
        d: a.clone(),
        u: Matrix::identity(m),
        u_inv: Matrix::identity(m),
        v: Matrix::identity(n),
        v_inv: Matrix::identity(n),
    };
    let rank = calc.run();
    Snf { d: calc.d, u: calc.u, u_inv: calc.u_inv, v: calc.v, v_inv: calc.v_inv, rank }
}

/// A solution of `A x = b` over the ring, if one exists.
pub fn solve_pid<R: EuclideanRing>(a: &Matrix<R>, b: &[R]) -> Option<Vec<R>> {
    assert_eq!(a.nrows(), b.len());
    let s = smith_normal_form(a);
    let ub = s.u.mul_vec(b);
    let mut y = vec![R::zero(); a.ncols()];
    for (i, c) in ub.iter().enumerate() {
        if i < s.rank {
            let d = &s.d[(i, i)];
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{HLaurent, HPoly, Rat, Ring};

    type P = HPoly<Rat>;

    fn check<R: EuclideanRing>(a: &Matrix<R>) -> Snf<R> {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(a.nrows()));
        assert_eq!(s.v.mul(&s.v_inv), Matrix::identity(a.ncols()));
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        assert!(s.u.det().is_unit());
        assert!(s.v.det().is_unit());
        s
    }

    #[test]
    fn identity() {
        let s = check(&Matrix::<P>::identity(2));
        assert_eq!(s.invariant_factors(), vec![P::one(), P::one()]);
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn h_one_zero_h() {
        // [[h, 1], [0, h]] -> diag(1, h^2)
        let h = P::h();
        let a = Matrix::from_rows(vec![vec![h.clone(), P::one()], vec![P::zero(), h.clone()]]);
        let s = check(&a);
        assert_eq!(s.invariant_factors(), vec![P::one(), h.clone() * h]);
        assert_eq!(s.rank, a.rank_fraction_field());
    }

    #[test]
    fn pid_solve() {
        let h = P::h();
        let a = Matrix::from_rows(vec![vec![h.clone(), P::zero()], vec![P::zero(), h.clone() * h.clone()]]);
        let x = solve_pid(&a, &[h.clone(), h.clone() * h.clone() * h.clone()]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![h.clone(), h.clone() * h.clone() * h.clone()]);
        assert!(solve_pid(&a, &[P::one(), P::zero()]).is_none());
    }

    #[test]
    fn zero_matrix() {
        let s = check(&Matrix::<P>::zeros(2, 3));
        assert_eq!(s.rank, 0);
        assert!(s.d.is_zero());
    }

    #[test]
    fn laurent_normalization() {
        type L = HLaurent<Rat>;
        let a = Matrix::from_rows(vec![
            vec![L::h(), L::h_inv()],
            vec![L::monomial(Rat::from(2), 3), L::new(-2, vec![Rat::from(1), Rat::from(1)])],
        ]);
        let s = check(&a);
        for f in s.invariant_factors() {
            assert_eq!(f.valuation(), Some(0));
            assert_eq!(f, f.normalized());
        }
    }
}
