//! Quantum Lefschetz operators on `Λ_{h,h⁻¹}(V*)` for a constant symplectic form.

use crate::cohomology::graded_basis;
use crate::exterior::{Form, Symplectic};
use crate::linalg::{charpoly, det_shifted, eval_at_matrix, factor_rational, radical, Factor, Matrix};
use crate::quantum::qwedge;
use crate::scalar::{HPoly, Rat, Ring};

#[derive(Clone, Debug)]
pub struct Lefschetz {
    symplectic: Symplectic,
    w: Matrix<Rat>,
    star_sign_flipped: bool,
}

impl Lefschetz {
    pub fn new(symplectic: Symplectic) -> Self {
        let w = symplectic.calibrated_bivector();
        Lefschetz { symplectic, w, star_sign_flipped: false }
    }

    pub fn darboux(n: usize) -> Self {
        Self::new(Symplectic::darboux(n))
    }

    /// Replaces the product bivector; `w = 0` gives the classical operators.
    pub fn with_bivector(mut self, w: Matrix<Rat>) -> Self {
        self.w = w;
        self
    }

    /// Uses `*h = -h⁻¹` inside `L_h*` (negative control).
    pub fn with_star_sign_flipped(mut self) -> Self {
        self.star_sign_flipped = true;
        self
    }

    pub fn n(&self) -> usize {
        self.symplectic.n()
    }

    pub fn dim(&self) -> usize {
        self.symplectic.dim()
    }

    pub fn symplectic(&self) -> &Symplectic {
        &self.symplectic
    }

    pub fn bivector(&self) -> &Matrix<Rat> {
        &self.w
    }

    /// `L_h(α) = ω ∧_h α`.
    pub fn l_h<C: Ring>(&self, x: &Form<C>) -> Form<C> {
        qwedge(&self.symplectic.omega_form(), x, &self.w.map(C::from_rat))
    }

    /// `L_h* = -*L_h*`.
    pub fn l_h_star<C: Ring>(&self, x: &Form<C>) -> Form<C> {
        let s = &self.symplectic;
        let star = |x: &Form<C>| {
            let y = s.star(x);
            if self.star_sign_flipped {
                y.filter(|j, _| j % 2 == 0) - y.filter(|j, _| j % 2 != 0)
            } else {
                y
            }
        };
        -star(&self.l_h(&star(x)))
    }

    /// `A_h(α) = (n - k) α` on graded degree `k`.
    pub fn a_h<C: Ring>(&self, x: &Form<C>) -> Form<C> {
        let mut out = Form::zero(x.dim());
        for k in x.graded_degrees() {
            out += &x.graded_part(k).scale(&C::from_int(self.n() as i64 - k));
        }
        out
    }

    pub fn m_h<C: Ring>(&self, x: &Form<C>) -> Form<C> {
        self.l_h(x).shift_h(-1)
    }

    pub fn m_h_star<C: Ring>(&self, x: &Form<C>) -> Form<C> {
        self.l_h_star(x).shift_h(1)
    }

    /// Matrix of a degree-preserving operator on `Λ^{[k]}_{h,h⁻¹}` in the basis
    /// `{h^j e^I}` ordered as `graded_basis`.
    pub fn piece_matrix(&self, k: i64, op: impl Fn(&Form<Rat>) -> Form<Rat>) -> Matrix<Rat> {
        let basis = graded_basis(self.dim(), k, true);
        let mut m = Matrix::zeros(basis.len(), basis.len());
        for (col, &(j, b)) in basis.iter().enumerate() {
            let y = op(&Form::monomial(self.dim(), j, b, Rat::one()));
            for (jj, bb, c) in y.terms() {
                let row = basis.iter().position(|x| *x == (jj, bb)).expect("operator leaves the piece");
                m[(row, col)] = c.clone();
            }
        }
        m
    }

    pub fn mh_matrix(&self, k: i64) -> Matrix<Rat> {
        self.piece_matrix(k, |x| self.m_h(x))
    }

    pub fn mh_star_matrix(&self, k: i64) -> Matrix<Rat> {
        self.piece_matrix(k, |x| self.m_h_star(x))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    /// Informational entries are reported but do not count toward `all_pass`.
    pub informational: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorReport {
    pub n: usize,
    pub degrees: Vec<i64>,
    pub checks: Vec<IdentityCheck>,
}

impl CommutatorReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().filter(|c| !c.informational).all(|c| c.holds)
    }
}

/// Verifies the commutator identities on every basis element of the pieces
/// `Λ^{[k]}`, `|k| ≤ window`.
pub fn commutator_check(lf: &Lefschetz, window: i64) -> CommutatorReport {
    let dim = lf.dim();
    let degrees: Vec<i64> = (-window..=window).collect();
    let h = |x: &Form<Rat>| x.shift_h(1);
    let hinv = |x: &Form<Rat>| x.shift_h(-1);
    type Op<'a> = Box<dyn Fn(&Form<Rat>) -> Form<Rat> + 'a>;
    let identities: Vec<(&'static str, bool, Op, Op)> = vec![
        (
            "[L_h, L_h*] = 0",
            false,
            Box::new(|x| lf.l_h(&lf.l_h_star(x)) - lf.l_h_star(&lf.l_h(x))),
            Box::new(|x| Form::zero(x.dim())),
        ),
        (
            "[L_h, A_h] = 2 L_h",
            false,
            Box::new(|x| lf.l_h(&lf.a_h(x)) - lf.a_h(&lf.l_h(x))),
            Box::new(|x| lf.l_h(x).scale(&Rat::from(2))),
        ),
        (
            "[L_h*, A_h] = -2 L_h*",
            false,
            Box::new(|x| lf.l_h_star(&lf.a_h(x)) - lf.a_h(&lf.l_h_star(x))),
            Box::new(|x| lf.l_h_star(x).scale(&Rat::from(-2))),
        ),
        ("[h, A_h] = 2 h", false, Box::new(|x| h(&lf.a_h(x)) - lf.a_h(&h(x))), Box::new(|x| h(x).scale(&Rat::from(2)))),
        (
            "[h^-1, A_h] = -2 h^-1",
            false,
            Box::new(|x| hinv(&lf.a_h(x)) - lf.a_h(&hinv(x))),
            Box::new(|x| hinv(x).scale(&Rat::from(-2))),
        ),
        (
            "[A_h, h] = 2 h (as printed)",
            true,
            Box::new(|x| lf.a_h(&h(x)) - h(&lf.a_h(x))),
            Box::new(|x| h(x).scale(&Rat::from(2))),
        ),
        (
            "[A_h, h^-1] = -2 h^-1 (as printed)",
            true,
            Box::new(|x| lf.a_h(&hinv(x)) - hinv(&lf.a_h(x))),
            Box::new(|x| hinv(x).scale(&Rat::from(-2))),
        ),
        (
            "[M_h, M_h*] = 0",
            false,
            Box::new(|x| lf.m_h(&lf.m_h_star(x)) - lf.m_h_star(&lf.m_h(x))),
            Box::new(|x| Form::zero(x.dim())),
        ),
        (
            "[M_h, A_h] = 0",
            false,
            Box::new(|x| lf.m_h(&lf.a_h(x)) - lf.a_h(&lf.m_h(x))),
            Box::new(|x| Form::zero(x.dim())),
        ),
        (
            "[M_h*, A_h] = 0",
            false,
            Box::new(|x| lf.m_h_star(&lf.a_h(x)) - lf.a_h(&lf.m_h_star(x))),
            Box::new(|x| Form::zero(x.dim())),
        ),
    ];
    let mut checks = Vec::new();
    for (name, informational, lhs, rhs) in &identities {
        let holds = degrees.iter().all(|&k| {
            graded_basis(dim, k, true).into_iter().all(|(j, b)| {
                let x = Form::monomial(dim, j, b, Rat::one());
                lhs(&x) == rhs(&x)
            })
        });
        checks.push(IdentityCheck { name, holds, informational: *informational });
    }
    CommutatorReport { n: lf.n(), degrees, checks }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub charpoly: HPoly<Rat>,
    pub factors: Vec<(Factor, usize)>,
    pub diagonalizable: bool,
    pub det: Rat,
}

/// Exact characteristic polynomial `det(λI - M)`, its factorization over `Q`
/// and the diagonalizability verdict (radical of the characteristic
/// polynomial annihilates `M`).
pub fn char_spectrum(m: &Matrix<Rat>) -> Spectrum {
    let cp = charpoly(m);
    let factors = factor_rational(&cp);
    let diagonalizable = eval_at_matrix(&radical(&cp), m).is_zero();
    Spectrum { charpoly: cp, factors, diagonalizable, det: m.det() }
}

/// Whether the spectrum is the claimed one: eigenvalues within
/// `{c, c ± √5/2}` (`c = n` for `M_h`, `-n` for `M_h*`), diagonalizable.
pub fn conforms_to_claim(s: &Spectrum, center: i64) -> bool {
    let c = Rat::from(center);
    let allowed = |f: &Factor| match f {
        Factor::Linear(r) => *r == c,
        Factor::Quadratic { b, c: c0, .. } => *b == Rat::from(-2 * center) && *c0 == c.mul_ref(&c) - Rat::new(5, 4),
        Factor::Other(_) => false,
    };
    s.diagonalizable && s.factors.iter().all(|(f, _)| allowed(f))
}

/// `[[M, -I], [I, M + 2I]]`.
pub fn recursion_step(m: &Matrix<Rat>) -> Matrix<Rat> {
    let k = m.nrows();
    let id = Matrix::<Rat>::identity(k);
    Matrix::block(m, &id.scale(&Rat::from(-1)), &id, &m.add(&id.scale(&Rat::from(2))))
}

/// Checks `det(M' + λI) = det(M + (λ+1)I)²` as polynomials.
pub fn recursion_verify(m: &Matrix<Rat>) -> bool {
    let lhs = det_shifted(&recursion_step(m));
    let p = det_shifted(m).shift(&Rat::one());
    lhs == p.mul_ref(&p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PieceInvertibility {
    pub degree: i64,
    pub size: usize,
    pub det_mh: Rat,
    pub det_mh_star: Rat,
}

/// Determinants of `M_h` and `M_h*` on each piece in the window. For a torus
/// with constant symplectic form the quantum cohomology is the invariant
/// algebra `Λ_{h,h⁻¹}(V*)`, so these are the pieces of cohomology.
pub fn hard_lefschetz_check(lf: &Lefschetz, window: i64) -> Vec<PieceInvertibility> {
    (-window..=window)
        .map(|k| {
            let m = lf.mh_matrix(k);
            let ms = lf.mh_star_matrix(k);
            PieceInvertibility { degree: k, size: m.nrows(), det_mh: m.det(), det_mh_star: ms.det() }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Blade;

    fn q(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::from(x)).collect()).collect())
    }

    #[test]
    fn operator_examples() {
        let lf = Lefschetz::darboux(1);
        let e1 = Form::<Rat>::basis(2, &[0]);
        assert!(lf.a_h(&e1).is_zero());
        assert_eq!(lf.l_h(&Form::<Rat>::one(2)), Form::basis(2, &[0, 1]));
        // L_h(e¹) = -a h e¹ with a = w^{12} = -1
        assert_eq!(lf.l_h(&e1), e1.shift_h(1));
    }

    #[test]
    fn mh_matrices_n1() {
        let lf = Lefschetz::darboux(1);
        assert_eq!(graded_basis(2, 0, true), vec![(0, Blade::EMPTY), (-1, Blade(0b11))]);
        assert_eq!(lf.mh_matrix(0), q(&[&[0, -1], &[1, 2]]));
        assert_eq!(lf.mh_matrix(1), q(&[&[1, 0], &[0, 1]]));
        assert_eq!(graded_basis(2, 2, true), vec![(1, Blade::EMPTY), (0, Blade(0b11))]);
        // basis (h, e^{12}) here; the (e^{12}, h) ordering gives [[2, 1], [-1, 0]]
        assert_eq!(lf.mh_matrix(2), q(&[&[0, -1], &[1, 2]]));
    }

    #[test]
    fn jordan_block_spectrum() {
        let s = char_spectrum(&q(&[&[0, -1], &[1, 2]]));
        assert_eq!(s.factors, vec![(Factor::Linear(Rat::from(1)), 2)]);
        assert!(!s.diagonalizable);
        assert_eq!(s.det, Rat::from(1));
        assert!(!conforms_to_claim(&s, 1));
        let d = char_spectrum(&Matrix::identity(2));
        assert!(d.diagonalizable);
        assert!(conforms_to_claim(&d, 1));
    }

    #[test]
    fn commutators_n1() {
        let r = commutator_check(&Lefschetz::darboux(1), 4);
        assert!(r.all_pass(), "{:?}", r.checks);
        let printed: Vec<bool> = r.checks.iter().filter(|c| c.informational).map(|c| c.holds).collect();
        assert_eq!(printed, vec![false, false]);
        let bad = commutator_check(&Lefschetz::darboux(1).with_star_sign_flipped(), 4);
        assert!(!bad.all_pass());
    }

    #[test]
    fn recursion_base() {
        let m0 = q(&[&[0]]);
        let p = det_shifted(&recursion_step(&m0));
        assert_eq!(p, HPoly::from_coeffs(vec![Rat::from(1), Rat::from(2), Rat::from(1)]));
        assert!(recursion_verify(&m0));
    }

    #[test]
    fn classical_lefschetz_is_not_invertible() {
        let lf = Lefschetz::darboux(1).with_bivector(Matrix::zeros(2, 2));
        assert!(hard_lefschetz_check(&lf, 2).iter().all(|p| p.det_mh.is_zero()));
        let q = hard_lefschetz_check(&Lefschetz::darboux(1), 2);
        assert!(q.iter().all(|p| !p.det_mh.is_zero() && !p.det_mh_star.is_zero()));
    }
}
