use super::*;
use crate::exterior::{Form, Symplectic};
use crate::quantum::qwedge;
use crate::scalar::{FourierCoeff, GRat, HLaurent, PolyCoeff, Rat, Ring};

type PF = Form<PolyCoeff>;
type FF = Form<FourierCoeff>;

fn r(n: i64) -> Rat {
    Rat::from(n)
}

fn plane() -> AffineModel {
    let w = bivector_from_entries(2, &[(0, 1, PolyCoeff::constant(r(1)))]);
    PoissonModel::new(Space::Affine, w, None, false).unwrap()
}

fn x2_dx1() -> PF {
    PF::basis(2, &[0]).mul_coeff(&PolyCoeff::var(1))
}

fn fmode(c: GRat, k: &[i64]) -> FourierCoeff {
    FourierCoeff::mode(c, k.to_vec())
}

fn torus(n: usize) -> TorusModel {
    PoissonModel::symplectic(Space::Torus, Symplectic::darboux(n), false).unwrap()
}

#[test]
fn exterior_d_examples() {
    let m = plane();
    let x2 = PF::scalar(2, PolyCoeff::var(1));
    assert_eq!(m.d(&x2), PF::basis(2, &[1]));
    assert!(m.d(&PF::basis(2, &[0])).is_zero());

    let t = torus(1);
    let f = FF::scalar(2, fmode(GRat::one(), &[1]));
    assert_eq!(t.d(&f), FF::basis(2, &[0]).mul_coeff(&fmode(GRat::i(), &[1])));
}

#[test]
fn koszul_delta_examples() {
    let m = plane();
    assert!(m.delta(&PF::scalar(2, PolyCoeff::var(0))).is_zero());
    assert!(m.delta(&PF::basis(2, &[0])).is_zero());
    // literal contraction sign: δ(x2 dx1) = -1; engine sign: +1
    let literal = m.frame().with_flipped_iota();
    assert_eq!(literal.delta(&x2_dx1()), PF::scalar(2, PolyCoeff::constant(r(-1))));
    assert_eq!(m.delta(&x2_dx1()), PF::one(2));
}

#[test]
fn quantum_d_examples() {
    let m = plane();
    let e12 = PF::basis(2, &[0, 1]);
    let h = PF::h_power(2, 1);
    assert_eq!(m.dh(&x2_dx1()), -e12.clone() - h.clone());
    assert_eq!(m.frame_formula_d(&x2_dx1()).unwrap(), -e12.clone() - h.clone());
    assert_eq!(m.frame().with_flipped_iota().dh(&x2_dx1()), h - e12);

    let t = torus(1);
    let a = FF::basis(2, &[1]).mul_coeff(&fmode(GRat::one(), &[1]));
    assert!(t.dh(&t.dh(&a)).is_zero());
}

#[test]
fn leibniz_selects_the_contraction_sign() {
    // f = x2, β = dx1: d_h(f ∧_h β) = d_h f ∧_h β + f ∧_h d_h β
    let m = plane();
    let f = PF::scalar(2, PolyCoeff::var(1));
    let beta = PF::basis(2, &[0]);
    let w = m.bivector();
    let check = |fr: &Frame<PolyCoeff>| {
        let lhs = fr.dh(&qwedge(&f, &beta, w));
        let rhs = qwedge(&fr.dh(&f), &beta, w) + qwedge(&f, &fr.dh(&beta), w);
        lhs == rhs
    };
    assert!(check(&m.frame()));
    assert!(!check(&m.frame().with_flipped_iota()));
}

#[test]
fn jacobi_examples() {
    assert!(jacobi_check(&so3_bivector()).is_none());
    let bad =
        bivector_from_entries(3, &[(0, 1, PolyCoeff::var(1)), (0, 2, PolyCoeff::var(2)), (1, 2, PolyCoeff::var(0))]);
    let (i, j, k, res) = jacobi_check(&bad).unwrap();
    assert_eq!((i, j, k), (0, 1, 2));
    assert_eq!(res, PolyCoeff::var(0) * PolyCoeff::constant(r(-2)));
    assert!(PoissonModel::new(Space::Affine, bad, None, false).is_err());
}

#[test]
fn qintegral_examples() {
    let t = torus(1);
    let one: HLaurent<GRat> = HLaurent::monomial(GRat::one(), 0);
    assert_eq!(qintegral(&t, &FF::one(2)).unwrap(), one);
    let a = FF::basis(2, &[1]).mul_coeff(&fmode(GRat::one(), &[1]));
    assert!(qintegral(&t, &a).unwrap().is_zero());
    assert_eq!(qintegral(&t, &FF::h_power(2, 1)).unwrap(), HLaurent::monomial(GRat::one(), 1));
    assert!(stokes_check(&t, &a).unwrap().passed());
    let affine = plane();
    assert!(affine.require_torus().is_err());
}

#[test]
fn complex_frame_round_trip() {
    let a = FF::basis(4, &[0, 3]).mul_coeff(&fmode(GRat::new(r(1), r(2)), &[1, 0, -1]));
    assert_eq!(from_complex_frame(&to_complex_frame(&a)), a);
}

#[test]
fn frame_formula_rejects_nonconstant() {
    let m = PoissonModel::new(Space::Affine, so3_bivector(), None, false).unwrap();
    assert!(m.frame_formula_d(&Form::one(3)).is_err());
}
