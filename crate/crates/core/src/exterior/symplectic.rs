use super::{Blade, Form};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Rat, Ring};

/// Constant symplectic structure `ω = Σ_{i<j} Ω_ij e^i ∧ e^j` on a `2n`-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct Symplectic {
    omega: Matrix<Rat>,
    inverse: Matrix<Rat>,
}

impl Symplectic {
    pub fn new(omega: Matrix<Rat>) -> Result<Self> {
        let (r, c) = omega.shape();
        if r != c || r % 2 != 0 || r == 0 {
            return Err(Error::BadSymplectic);
        }
        for i in 0..r {
            for j in 0..r {
                if omega[(i, j)] != omega[(j, i)].neg_ref() {
                    return Err(Error::BadSymplectic);
                }
            }
        }
        let inverse = omega.inverse().ok_or(Error::BadSymplectic)?;
        Ok(Symplectic { omega, inverse })
    }

    /// Block sum of `[[0, 1], [-1, 0]]`, so `ω = Σ_k e^{2k-1} ∧ e^{2k}`.
    pub fn darboux(n: usize) -> Self {
        let mut m = Matrix::zeros(2 * n, 2 * n);
        for k in 0..n {
            m[(2 * k, 2 * k + 1)] = Rat::from(1);
            m[(2 * k + 1, 2 * k)] = Rat::from(-1);
        }
        Self::new(m).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.omega.nrows()
    }

    pub fn n(&self) -> usize {
        self.dim() / 2
    }

    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.omega
    }

    pub fn omega_form<C: Ring>(&self) -> Form<C> {
        let m = self.dim();
        let mut f = Form::zero(m);
        for i in 0..m {
            for j in i + 1..m {
                f.add_term(0, Blade::single(i).union(Blade::single(j)), &C::from_rat(&self.omega[(i, j)]));
            }
        }
        f
    }

    /// `ω^n / n!`.
    pub fn volume<C: Ring>(&self) -> Form<C> {
        let om = self.omega_form::<C>();
        let mut v = Form::one(self.dim());
        for k in 1..=self.n() {
            v = v.wedge(&om).scale(&C::from_rat(&Rat::new(1, k as i64)));
        }
        v
    }

    /// Dual bivector `W = Ω⁻¹` used by the quantum product. For the Darboux
    /// structure this has `w^{12} = -1`, which makes `h⁻¹L_h` act as `+n` on
    /// degree one.
    pub fn calibrated_bivector<C: Ring>(&self) -> Matrix<C> {
        self.inverse.map(C::from_rat)
    }

    /// Bivector entering the star pairing, `-Ω⁻¹` (equal to `Ω` in Darboux form).
    pub fn star_bivector(&self) -> Matrix<Rat> {
        self.inverse.scale(&Rat::from(-1))
    }

    /// The symplectic star, determined by `β ∧ *α = Λ^k(w)(β, α) ω^n/n!`, with
    /// `*h = h⁻¹`.
    pub fn star<C: Ring>(&self, alpha: &Form<C>) -> Form<C> {
        let m = self.dim();
        assert_eq!(alpha.dim(), m, "star: dimension mismatch");
        let w = self.star_bivector();
        let top = Blade::top(m);
        let vol = self.volume::<Rat>().coeff(0, top);
        let mut out = Form::zero(m);
        for (j, bj, c) in alpha.terms() {
            let jdx: Vec<usize> = bj.indices().collect();
            for bi in Blade::all_of_grade(m, bj.grade()) {
                let idx: Vec<usize> = bi.indices().collect();
                let pairing = w.submatrix(&idx, &jdx).det();
                if pairing.is_zero() {
                    continue;
                }
                let comp = bi.complement(m);
                let (neg, _) = bi.wedge(comp).unwrap();
                let mut k = pairing * &vol;
                if neg {
                    k = -k;
                }
                out.add_term(-j, comp, &c.mul_ref(&C::from_rat(&k)));
            }
        }
        out
    }
}

/// Pairing `Λ^k(w)(e^I, e^J) = det[w^{i_r j_s}]` for a field-valued bivector.
pub fn exterior_power_pairing<F: Field + crate::scalar::EuclideanRing>(w: &Matrix<F>, bi: Blade, bj: Blade) -> F {
    if bi.grade() != bj.grade() {
        return F::zero();
    }
    let idx: Vec<usize> = bi.indices().collect();
    let jdx: Vec<usize> = bj.indices().collect();
    w.submatrix(&idx, &jdx).det()
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = Form<Rat>;

    #[test]
    fn star_examples() {
        let s = Symplectic::darboux(1);
        assert_eq!(s.star(&F::one(2)), F::basis(2, &[0, 1]));
        assert_eq!(s.star(&F::basis(2, &[0])), F::basis(2, &[0]));
        assert_eq!(s.star(&F::h_power(2, 1)), F::basis(2, &[0, 1]).shift_h(-1));
        assert_eq!(s.calibrated_bivector::<Rat>()[(0, 1)], Rat::from(-1));
    }

    #[test]
    fn star_pairing_relation() {
        let s = Symplectic::darboux(2);
        let w = s.star_bivector();
        let vol = s.volume::<Rat>();
        for k in 0..=4 {
            for bj in Blade::all_of_grade(4, k) {
                let star = s.star(&F::monomial(4, 0, bj, Rat::from(1)));
                for bi in Blade::all_of_grade(4, k) {
                    let lhs = F::monomial(4, 0, bi, Rat::from(1)).wedge(&star);
                    let rhs = vol.scale(&exterior_power_pairing(&w, bi, bj));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(Symplectic::new(Matrix::zeros(2, 2)), Err(Error::BadSymplectic));
        assert_eq!(Symplectic::new(Matrix::zeros(3, 3)), Err(Error::BadSymplectic));
    }
}
