use super::*;
use crate::calculus::{PoissonModel, Space, TorusModel};
use crate::exec::Exec;
use crate::exterior::{Form, Symplectic};
use crate::scalar::{FourierCoeff, GRat, HLaurent, HPoly, Ring};

type L = HLaurent<GRat>;
type P = HPoly<GRat>;

fn torus(n: usize, complex: bool) -> TorusModel {
    PoissonModel::symplectic(Space::Torus, Symplectic::darboux(n), complex).unwrap()
}

#[test]
fn invariant_complex_of_t2() {
    let c = invariant_subcomplex::<L>(&torus(1, false)).unwrap();
    assert_eq!(c.components[0].basis.len(), 2);
    assert_eq!(c.components[1].basis.len(), 2);
    let t = complex_homology(&c).unwrap();
    let by_degree = t.rank_by_degree();
    assert_eq!(by_degree.get(&Some(0)), Some(&1));
    assert_eq!(by_degree.get(&Some(1)), Some(&2));
    assert_eq!(by_degree.get(&Some(2)), Some(&1));
    assert!(!t.has_torsion());
}

#[test]
fn nonzero_mode_is_acyclic() {
    let m = torus(1, false);
    let c = mode_subcomplex::<L>(&m, &[1, 0]).unwrap();
    assert!(c.diffs.iter().any(|d| !d.is_zero()));
    assert!(complex_homology(&c).unwrap().is_zero());
    let cp = mode_subcomplex::<P>(&m, &[1, 0]).unwrap();
    let t = complex_homology(&cp).unwrap();
    assert!(t.is_zero());
    for row in &t.rows {
        assert_eq!(row.rank, row.fraction_field_rank);
    }
}

#[test]
fn t2_tables() {
    let m = torus(1, false);
    let t = quantum_derham_table::<L>(&m, 1, 4, Exec::Sequential).unwrap();
    assert_eq!(t.total_rank(), 4);
    assert!(!t.has_torsion());
    assert!(t.nonzero_modes_with_homology().is_empty());

    let tp = quantum_derham_table::<P>(&m, 1, 5, Exec::Sequential).unwrap();
    // dims of Λ_h^{[n]} for m = 2: 1, 2, 2, 2, …
    let dims: Vec<usize> = tp.graded_dims.values().copied().collect();
    assert_eq!(dims, vec![1, 2, 2, 2, 2, 2]);
}

#[test]
fn t2_ring_table() {
    let m = torus(1, false);
    let c = invariant_subcomplex::<L>(&m).unwrap();
    let t = complex_homology(&c).unwrap();
    let rt = ring_table(&c, &t, &m).unwrap();
    let e = |idx: &[usize]| Form::<FourierCoeff>::basis(2, idx);
    let g1 = rt.find(&e(&[0])).unwrap();
    let g2 = rt.find(&e(&[1])).unwrap();
    let g12 = rt.find(&e(&[0, 1])).unwrap();
    let unit = rt.find(&Form::one(2)).unwrap();
    let prod = rt.product(g1, g2);
    // [e¹] ∧_h [e²] = [e^{12}] + h w^{12} [1], with w^{12} = -1
    assert_eq!(prod[g12], L::one());
    assert_eq!(prod[unit], L::h_monomial(GRat::from(-1), 1));
    assert!(rt.is_supercommutative());
    assert!(rt.is_associative());
}

#[test]
fn t2_dolbeault() {
    let m = torus(1, true);
    let t = quantum_dolbeault_table(&m, 1, 3, Exec::Sequential).unwrap();
    assert!(t.nonzero_modes.is_empty());
    for ((p, q), r) in t.h_ranks() {
        assert_eq!(r, torus_hodge_number(1, p, q), "({p}, {q})");
    }
    assert!(quantum_dolbeault_table(&torus(1, false), 1, 2, Exec::Sequential).is_err());
}

#[test]
fn affine_model_rejected() {
    let t =
        PoissonModel::<FourierCoeff>::deferred(Space::Affine, crate::linalg::Matrix::zeros(2, 2), None, false).unwrap();
    assert!(invariant_subcomplex::<L>(&t).is_err());
}
