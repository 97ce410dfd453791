//! Quantum covariant derivative, curvature and characteristic forms on
//! trivial bundles over model spaces.

use std::collections::BTreeSet;

use crate::calculus::{PoissonModel, TorusModel};
use crate::cohomology::mode_subcomplex;
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::linalg::{solve_pid, Matrix};
use crate::quantum::{qwedge, qwedge_matrix};
use crate::scalar::{CoeffRing, FourierCoeff, GRat, HPoly, Rat, Ring};

pub type FormMatrix<C> = Vec<Vec<Form<C>>>;

/// Connection 1-form matrix `θ` on the trivial rank-`r` bundle.
#[derive(Clone, PartialEq)]
pub struct QConnection<C> {
    pub theta: FormMatrix<C>,
}

impl<C: Ring + std::fmt::Display> std::fmt::Debug for QConnection<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QConnection").field("theta", &self.theta).finish()
    }
}

impl<C: CoeffRing> QConnection<C> {
    pub fn new(theta: FormMatrix<C>) -> Result<Self> {
        let r = theta.len();
        for row in &theta {
            if row.len() != r {
                return Err(Error::Shape("connection matrix must be square".into()));
            }
            for f in row {
                if !f.is_zero() && (f.exterior_degree() != Some(1) || !f.is_classical()) {
                    return Err(Error::Precondition("connection entries must be 1-forms without h".into()));
                }
            }
        }
        Ok(QConnection { theta })
    }

    pub fn zero(rank: usize, dim: usize) -> Self {
        QConnection { theta: vec![vec![Form::zero(dim); rank]; rank] }
    }

    pub fn rank(&self) -> usize {
        self.theta.len()
    }
}

/// `(d_h^∇ Φ)^k = θ^k_j ∧_h φ^j + d_h φ^k`.
pub fn covariant_d<C: CoeffRing>(
    model: &PoissonModel<C>,
    conn: &QConnection<C>,
    phi: &[Form<C>],
) -> Result<Vec<Form<C>>> {
    if phi.len() != conn.theta.len() {
        return Err(Error::Shape(format!("section of length {} for rank {}", phi.len(), conn.theta.len())));
    }
    let w = model.bivector();
    let frame = model.frame();
    Ok((0..phi.len())
        .map(|k| {
            let mut acc = frame.dh(&phi[k]);
            for (j, p) in phi.iter().enumerate() {
                acc += &qwedge(&conn.theta[k][j], p, w);
            }
            acc
        })
        .collect())
}

/// `F_h = d_h θ + θ ∧_h θ`.
pub fn curvature<C: CoeffRing>(model: &PoissonModel<C>, conn: &QConnection<C>) -> FormMatrix<C> {
    let frame = model.frame();
    let sq = qwedge_matrix(&conn.theta, &conn.theta, model.bivector());
    conn.theta
        .iter()
        .zip(sq)
        .map(|(row, sqrow)| row.iter().zip(sqrow).map(|(t, s)| frame.dh(t) + s).collect())
        .collect()
}

/// `Σ_j F^k_j ∧_h φ^j`.
pub fn curvature_times_section<C: CoeffRing>(
    model: &PoissonModel<C>,
    f: &FormMatrix<C>,
    phi: &[Form<C>],
) -> Vec<Form<C>> {
    let w = model.bivector();
    (0..phi.len())
        .map(|k| {
            let mut acc = Form::zero(model.dim());
            for (j, p) in phi.iter().enumerate() {
                acc += &qwedge(&f[k][j], p, w);
            }
            acc
        })
        .collect()
}

/// `Σ_j φ^j ∧_h F^k_j`, the right action of the curvature on a section.
pub fn section_times_curvature<C: CoeffRing>(
    model: &PoissonModel<C>,
    phi: &[Form<C>],
    f: &FormMatrix<C>,
) -> Vec<Form<C>> {
    let w = model.bivector();
    (0..phi.len())
        .map(|k| {
            let mut acc = Form::zero(model.dim());
            for (j, p) in phi.iter().enumerate() {
                acc += &qwedge(p, &f[k][j], w);
            }
            acc
        })
        .collect()
}

/// `tr(F^{∧_h k})`.
pub fn char_form<C: CoeffRing>(model: &PoissonModel<C>, f: &FormMatrix<C>, k: usize) -> Form<C> {
    assert!(k >= 1, "characteristic form power must be positive");
    let dim = model.dim();
    let mut p = f.clone();
    for _ in 1..k {
        p = qwedge_matrix(&p, f, model.bivector());
    }
    let mut tr = Form::zero(dim);
    for (i, row) in p.iter().enumerate() {
        tr += &row[i];
    }
    tr
}

/// Elementary symmetric forms `e_1, …, e_kmax` from the trace powers by
/// Newton's identities `k e_k = Σ_{i=1}^k (-1)^{i-1} e_{k-i} ∧_h p_i`.
pub fn chern_forms<C: CoeffRing>(model: &PoissonModel<C>, f: &FormMatrix<C>, kmax: usize) -> Vec<Form<C>> {
    let dim = model.dim();
    let p: Vec<Form<C>> = (1..=kmax).map(|k| char_form(model, f, k)).collect();
    let mut e = vec![Form::one(dim)];
    for k in 1..=kmax {
        let mut acc = Form::zero(dim);
        for i in 1..=k {
            let t = qwedge(&e[k - i], &p[i - 1], model.bivector());
            if i % 2 == 1 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        e.push(acc.scale(&C::from_rat(&Rat::new(1, k as i64))));
    }
    e.remove(0);
    e
}

/// `θ ↦ G⁻¹ θ G` for a constant invertible `G` (so `G⁻¹dG = 0`).
pub fn constant_gauge<C: CoeffRing>(conn: &QConnection<C>, g: &Matrix<Rat>) -> Result<QConnection<C>> {
    let g_inv = g.inverse().ok_or_else(|| Error::Precondition("gauge matrix is singular".into()))?;
    let r = conn.rank();
    if g.shape() != (r, r) {
        return Err(Error::Shape("gauge matrix size".into()));
    }
    let conj = |m: &FormMatrix<C>| -> FormMatrix<C> {
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let dim = m[0][0].dim();
                        let mut acc = Form::zero(dim);
                        for a in 0..r {
                            for b in 0..r {
                                let c = g_inv[(i, a)].mul_ref(&g[(b, j)]);
                                if !c.is_zero() {
                                    acc += &m[a][b].scale(&C::from_rat(&c));
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    Ok(QConnection { theta: conj(&conn.theta) })
}

/// Gauge change by a function-valued `G` with given inverse:
/// `θ' = G⁻¹ θ G + G⁻¹ dG`.
pub fn general_gauge<C: CoeffRing>(
    model: &PoissonModel<C>,
    conn: &QConnection<C>,
    g: &Matrix<C>,
    g_inv: &Matrix<C>,
) -> Result<QConnection<C>> {
    let r = conn.rank();
    let dim = model.dim();
    if g.shape() != (r, r) || g_inv.shape() != (r, r) || !g.mul(g_inv).sub(&Matrix::identity(r)).is_zero() {
        return Err(Error::Precondition("gauge matrix and inverse do not match".into()));
    }
    let as_forms = |m: &Matrix<C>| -> FormMatrix<C> {
        (0..r).map(|i| (0..r).map(|j| Form::scalar(dim, m[(i, j)].clone())).collect()).collect()
    };
    let frame = model.frame();
    let dg: FormMatrix<C> =
        (0..r).map(|i| (0..r).map(|j| frame.d(&Form::scalar(dim, g[(i, j)].clone()))).collect()).collect();
    let gi = as_forms(g_inv);
    let w = model.bivector();
    let a = qwedge_matrix(&qwedge_matrix(&gi, &conn.theta, w), &as_forms(g), w);
    let b = qwedge_matrix(&gi, &dg, w);
    let theta = a.into_iter().zip(b).map(|(ra, rb)| ra.into_iter().zip(rb).map(|(x, y)| x + y).collect()).collect();
    Ok(QConnection { theta })
}

/// Diagnostic for a non-constant gauge change: whether `F' = G⁻¹ F G`.
pub fn gauge_covariance_holds<C: CoeffRing>(
    model: &PoissonModel<C>,
    conn: &QConnection<C>,
    g: &Matrix<C>,
    g_inv: &Matrix<C>,
) -> Result<bool> {
    let r = conn.rank();
    let dim = model.dim();
    let transformed = general_gauge(model, conn, g, g_inv)?;
    let f1 = curvature(model, &transformed);
    let f = curvature(model, conn);
    let w = model.bivector();
    let as_forms = |m: &Matrix<C>| -> FormMatrix<C> {
        (0..r).map(|i| (0..r).map(|j| Form::scalar(dim, m[(i, j)].clone())).collect()).collect()
    };
    let conj = qwedge_matrix(&qwedge_matrix(&as_forms(g_inv), &f, w), &as_forms(g), w);
    Ok(conj == f1)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Transgression {
    /// `d_h η = char_form(F_1, k) − char_form(F_0, k)`.
    Exact(Form<FourierCoeff>),
    /// No solution in this Fourier mode.
    Obstructed { mode: Vec<i64> },
}

/// Solves `d_h η = tr(F_1^k) − tr(F_0^k)` mode by mode over `Q(i)[h]`.
pub fn transgression_check(
    model: &TorusModel,
    conn0: &QConnection<FourierCoeff>,
    conn1: &QConnection<FourierCoeff>,
    k: usize,
) -> Result<Transgression> {
    model.require_torus()?;
    model.require_constant()?;
    let dim = model.dim();
    let target = char_form(model, &curvature(model, conn1), k) - char_form(model, &curvature(model, conn0), k);
    let modes: BTreeSet<Vec<i64>> = target
        .terms()
        .flat_map(|(_, _, c)| c.support().map(|m| FourierCoeff::padded(m, dim)).collect::<Vec<_>>())
        .collect();
    let mut eta = Form::zero(dim);
    for mode in modes {
        let c = mode_subcomplex::<HPoly<GRat>>(model, &mode)?;
        let part = target.map_coeffs(|x| x.project(&mode));
        let even = part.filter(|_, b| b.grade() % 2 == 0);
        let odd = part.filter(|_, b| b.grade() % 2 == 1);
        for (comp, piece) in [(0usize, even), (1, odd)] {
            if piece.is_zero() {
                continue;
            }
            let b =
                c.coordinates(comp, &piece).ok_or_else(|| Error::Reduction("target outside mode complex".into()))?;
            let d = &c.diffs[1 - comp];
            match solve_pid(d, &b) {
                Some(x) => eta += &c.to_form(1 - comp, &x),
                None => return Ok(Transgression::Obstructed { mode }),
            }
        }
    }
    if model.dh(&eta) != target {
        return Err(Error::Reduction("transgression solution does not verify".into()));
    }
    Ok(Transgression::Exact(eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Space;
    use crate::exterior::Symplectic;
    use crate::scalar::GRat;

    type FF = Form<FourierCoeff>;

    fn torus() -> TorusModel {
        PoissonModel::symplectic(Space::Torus, Symplectic::darboux(1), false).unwrap()
    }

    fn mode(k: &[i64]) -> FourierCoeff {
        FourierCoeff::mode(GRat::one(), k.to_vec())
    }

    #[test]
    fn flat_and_unit_section() {
        let m = torus();
        let zero = QConnection::<FourierCoeff>::zero(1, 2);
        let phi = vec![FF::basis(2, &[0]).mul_coeff(&mode(&[0, 1]))];
        assert_eq!(covariant_d(&m, &zero, &phi).unwrap(), vec![m.dh(&phi[0])]);
        let theta = FF::basis(2, &[0]).mul_coeff(&mode(&[1, 0]));
        let conn = QConnection::new(vec![vec![theta.clone()]]).unwrap();
        assert_eq!(covariant_d(&m, &conn, &[FF::one(2)]).unwrap(), vec![theta]);
        assert!(curvature(&m, &zero)[0][0].is_zero());
    }

    #[test]
    fn rank_one_curvature_is_dh_theta() {
        let m = torus();
        let theta = FF::basis(2, &[0]).mul_coeff(&mode(&[0, 1]));
        let conn = QConnection::new(vec![vec![theta.clone()]]).unwrap();
        let f = curvature(&m, &conn);
        assert_eq!(f[0][0], m.dh(&theta));
        assert!(m.dh(&char_form(&m, &f, 1)).is_zero());
    }

    #[test]
    fn transgression_rank_one() {
        let m = torus();
        let t0 = FF::basis(2, &[0]).mul_coeff(&mode(&[0, 1]));
        let beta = FF::basis(2, &[1]).mul_coeff(&mode(&[1, 1]));
        let c0 = QConnection::new(vec![vec![t0.clone()]]).unwrap();
        let c1 = QConnection::new(vec![vec![t0 + beta.clone()]]).unwrap();
        assert_eq!(transgression_check(&m, &c0, &c0, 1).unwrap(), Transgression::Exact(FF::zero(2)));
        match transgression_check(&m, &c0, &c1, 1).unwrap() {
            Transgression::Exact(eta) => assert_eq!(m.dh(&eta), m.dh(&beta)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn covariant_square_is_curvature() {
        let m = PoissonModel::symplectic(Space::Torus, Symplectic::darboux(2), false).unwrap();
        let mut rng = crate::random::rng(11);
        for _ in 0..3 {
            let theta: FormMatrix<FourierCoeff> = (0..2)
                .map(|_| {
                    (0..2)
                        .map(|_| {
                            crate::random::form_of_degree(&mut rng, 4, 1, 2, |r| crate::random::fourier(r, 4, 1, 1))
                        })
                        .collect()
                })
                .collect();
            let conn = QConnection::new(theta).unwrap();
            let f = curvature(&m, &conn);
            let phi: Vec<FF> = (0..2)
                .map(|_| crate::random::form(&mut rng, 4, 3, 0..=1, |r| crate::random::fourier(r, 4, 1, 1)))
                .collect();
            let dd = covariant_d(&m, &conn, &covariant_d(&m, &conn, &phi).unwrap()).unwrap();
            assert_eq!(dd, curvature_times_section(&m, &f, &phi));
            assert_eq!(dd, section_times_curvature(&m, &phi, &f));
        }
    }

    #[test]
    fn constant_gauge_conjugates_curvature_and_keeps_chern_forms() {
        let m = torus();
        let mut rng = crate::random::rng(5);
        let theta: FormMatrix<FourierCoeff> = (0..2)
            .map(|_| {
                (0..2)
                    .map(|_| crate::random::form_of_degree(&mut rng, 2, 1, 2, |r| crate::random::fourier(r, 2, 1, 1)))
                    .collect()
            })
            .collect();
        let conn = QConnection::new(theta).unwrap();
        let g = Matrix::from_rows(vec![vec![Rat::from(2), Rat::from(1)], vec![Rat::from(1), Rat::from(1)]]);
        let moved = constant_gauge(&conn, &g).unwrap();
        let c0 = chern_forms(&m, &curvature(&m, &conn), 2);
        let c1 = chern_forms(&m, &curvature(&m, &moved), 2);
        assert_eq!(c0, c1);
        let gc = g.map(|x| FourierCoeff::constant(GRat::from_rat(x)));
        let gi = g.inverse().unwrap().map(|x| FourierCoeff::constant(GRat::from_rat(x)));
        assert!(gauge_covariance_holds(&m, &conn, &gc, &gi).unwrap());
    }

    #[test]
    fn rejects_h_terms_in_connection() {
        let bad = FF::basis(2, &[0]).shift_h(1);
        assert!(QConnection::new(vec![vec![bad]]).is_err());
    }
}
