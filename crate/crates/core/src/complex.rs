//! Standard complex structure on `R^{2n}` / `T^{2n}` and the complex coframe
//! `dz^k = e^{2k-1} + i e^{2k}`, `dz̄^k = e^{2k-1} - i e^{2k}`.
//!
//! In the coframe, index `2k` (0-based) is `dz^{k+1}` and `2k+1` is `dz̄^{k+1}`.

use crate::error::{Error, Result};
use crate::exterior::{Blade, Form};
use crate::linalg::Matrix;
use crate::scalar::{GRat, Rat, Ring};

/// `J e_{2k-1} = e_{2k}`, `J e_{2k} = -e_{2k-1}` on tangent vectors.
pub fn standard_j(m: usize) -> Matrix<Rat> {
    assert!(m.is_multiple_of(2), "complex structure needs even dimension");
    let mut j = Matrix::zeros(m, m);
    for k in 0..m / 2 {
        j[(2 * k + 1, 2 * k)] = Rat::from(1);
        j[(2 * k, 2 * k + 1)] = Rat::from(-1);
    }
    j
}

/// Checks `Λ²J(w) = w`, i.e. `J W Jᵀ = W`.
pub fn check_preserves<C: Ring>(w: &Matrix<C>) -> Result<()> {
    let m = w.nrows();
    if !m.is_multiple_of(2) {
        return Err(Error::Precondition("complex structure needs even dimension".into()));
    }
    let j = standard_j(m).map(C::from_rat);
    if j.mul(w).mul(&j.transpose()) == *w {
        Ok(())
    } else {
        Err(Error::ComplexStructureMismatch)
    }
}

/// Rows give the coframe in terms of the real coframe: `f^a = Σ_i A[a][i] e^i`.
pub fn frame_matrix(m: usize) -> Matrix<GRat> {
    assert!(m.is_multiple_of(2), "complex coframe needs even dimension");
    let mut a = Matrix::zeros(m, m);
    for k in 0..m / 2 {
        a[(2 * k, 2 * k)] = GRat::one();
        a[(2 * k, 2 * k + 1)] = GRat::i();
        a[(2 * k + 1, 2 * k)] = GRat::one();
        a[(2 * k + 1, 2 * k + 1)] = GRat::i().neg_ref();
    }
    a
}

pub fn frame_matrix_inverse(m: usize) -> Matrix<GRat> {
    frame_matrix(m).inverse().expect("coframe matrix is invertible")
}

pub fn is_holomorphic(a: usize) -> bool {
    a.is_multiple_of(2)
}

/// Bidegree `(a + j, b + j)` of `h^j f^I`.
pub fn term_bidegree(j: i64, blade: Blade) -> (i64, i64) {
    let hol = blade.indices().filter(|&a| is_holomorphic(a)).count() as i64;
    let anti = blade.grade() as i64 - hol;
    (hol + j, anti + j)
}

/// Bidegree of a form written in the complex coframe, if homogeneous.
pub fn bidegree<C: Ring>(x: &Form<C>) -> Option<(i64, i64)> {
    let mut it = x.terms().map(|(j, b, _)| term_bidegree(j, b));
    let first = it.next()?;
    it.all(|d| d == first).then_some(first)
}

/// Bidegree with the complex-structure precondition on `w` checked.
pub fn complex_bidegree<C: Ring>(x: &Form<C>, w_real: &Matrix<C>) -> Result<Option<(i64, i64)>> {
    check_preserves(w_real)?;
    Ok(bidegree(x))
}

pub fn bidegree_part<C: Ring>(x: &Form<C>, p: i64, q: i64) -> Form<C> {
    x.filter(|j, b| term_bidegree(j, b) == (p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Symplectic;

    #[test]
    fn darboux_bivector_is_preserved() {
        let w: Matrix<Rat> = Symplectic::darboux(2).calibrated_bivector();
        assert!(check_preserves(&w).is_ok());
        let mut bad = Matrix::<Rat>::zeros(4, 4);
        bad[(0, 2)] = Rat::from(1);
        bad[(2, 0)] = Rat::from(-1);
        assert_eq!(check_preserves(&bad), Err(Error::ComplexStructureMismatch));
    }

    #[test]
    fn bidegrees() {
        type F = Form<GRat>;
        assert_eq!(bidegree(&F::basis(2, &[0])), Some((1, 0)));
        assert_eq!(bidegree(&F::h_power(2, 1)), Some((1, 1)));
        let x = crate::quantum::qwedge(&F::basis(2, &[0, 1]), &F::h_power(2, 1), &Matrix::zeros(2, 2));
        assert_eq!(bidegree(&x), Some((2, 2)));
    }
}
