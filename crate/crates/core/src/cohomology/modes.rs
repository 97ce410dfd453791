use std::collections::BTreeMap;

use super::complex::{complex_homology, CohomologyTable, Component, FiniteComplex, HRing};
use crate::calculus::{Frame, TorusModel};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{Blade, Form};
use crate::linalg::Matrix;
use crate::scalar::{FourierCoeff, GRat, Ring};

fn same_mode(a: &[i64], b: &[i64], dim: usize) -> bool {
    FourierCoeff::padded(a, dim) == FourierCoeff::padded(b, dim)
}

/// Image of `exp(i k·θ) h^j e^I` under `op`, as `(j, I, c)` triples; errors if
/// the image leaves the mode.
pub(crate) fn apply_in_mode(
    op: &dyn Fn(&Form<FourierCoeff>) -> Form<FourierCoeff>,
    dim: usize,
    k: &[i64],
    j: i64,
    blade: Blade,
) -> Result<Vec<(i64, Blade, GRat)>> {
    let x = Form::monomial(dim, j, blade, FourierCoeff::mode(GRat::one(), k.to_vec()));
    let mut out = Vec::new();
    for (jj, b, c) in op(&x).terms() {
        for (kk, v) in c.modes() {
            if !same_mode(kk, k, dim) {
                return Err(Error::Precondition(format!("operator mixes Fourier modes {k:?} and {kk:?}")));
            }
            out.push((jj, b, v.clone()));
        }
    }
    Ok(out)
}

pub(crate) fn parity_blades(dim: usize) -> (Vec<Blade>, Vec<Blade>) {
    Blade::all(dim).into_iter().partition(|b| b.grade() % 2 == 0)
}

/// The complex of forms `exp(i k·θ) e^I` with `R`-coefficients under `d_h`,
/// folded by parity into the 2-periodic complex `even ⇄ odd` (component
/// degrees 0 and 1). Requires a torus with constant bivector.
pub fn mode_subcomplex<R: HRing>(model: &TorusModel, k: &[i64]) -> Result<FiniteComplex<R>> {
    model.require_torus()?;
    model.require_constant()?;
    let dim = model.dim();
    if k.len() > dim {
        return Err(Error::DimensionMismatch(dim, k.len()));
    }
    let frame = model.frame();
    let op = |x: &Form<FourierCoeff>| frame.dh(x);
    let (even, odd) = parity_blades(dim);
    let matrix = |src: &[Blade], dst: &[Blade]| -> Result<Matrix<R>> {
        let mut m = Matrix::zeros(dst.len(), src.len());
        for (col, b) in src.iter().enumerate() {
            for (j, bb, c) in apply_in_mode(&op, dim, k, 0, *b)? {
                let row = dst.iter().position(|x| *x == bb).expect("parity is preserved");
                m[(row, col)] += &R::h_monomial(c, j);
            }
        }
        Ok(m)
    };
    let d_even = matrix(&even, &odd)?;
    let d_odd = matrix(&odd, &even)?;
    FiniteComplex::new(
        dim,
        k.to_vec(),
        vec![Component { degree: 0, basis: even }, Component { degree: 1, basis: odd }],
        vec![d_even, d_odd],
        true,
    )
}

/// Constant-coefficient forms, a subcomplex with zero differential.
pub fn invariant_subcomplex<R: HRing>(model: &TorusModel) -> Result<FiniteComplex<R>> {
    let c = mode_subcomplex::<R>(model, &[])?;
    if c.diffs.iter().any(|d| !d.is_zero()) {
        return Err(Error::Precondition("invariant forms are not d_h-closed".into()));
    }
    Ok(c)
}

/// Every frequency vector in `[-b, b]^m`, zero first.
pub fn mode_box(m: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
    out
}

/// Dimensions over `Q(i)` of the homology of a graded complex given by a
/// basis per key and an operator on basis labels.
pub fn field_homology_dims<K, L>(
    keys: &[K],
    basis: impl Fn(&K) -> Vec<L>,
    next: impl Fn(&K) -> K,
    prev: impl Fn(&K) -> K,
    apply: impl Fn(&L) -> Result<Vec<(L, GRat)>>,
) -> Result<BTreeMap<K, usize>>
where
    K: Ord + Clone,
    L: Ord + Clone,
{
    let rank_from = |key: &K| -> Result<usize> {
        let src = basis(key);
        let dst = basis(&next(key));
        let index: BTreeMap<&L, usize> = dst.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut m = Matrix::<GRat>::zeros(dst.len(), src.len());
        for (col, l) in src.iter().enumerate() {
            for (t, c) in apply(l)? {
                let row =
                    *index.get(&t).ok_or_else(|| Error::Reduction("operator image outside the target basis".into()))?;
                m[(row, col)] += &c;
            }
        }
        Ok(m.rank())
    };
    let mut out = BTreeMap::new();
    for key in keys {
        let n = basis(key).len();
        let r_out = rank_from(key)?;
        let r_in = rank_from(&prev(key))?;
        out.insert(key.clone(), n - r_out - r_in);
    }
    Ok(out)
}

/// Basis `{h^j e^I : |I| + 2j = n}` of `Λ^{[n]}`, with `j ≥ 0` unless Laurent.
pub fn graded_basis(dim: usize, n: i64, laurent: bool) -> Vec<(i64, Blade)> {
    Blade::all(dim)
        .into_iter()
        .filter(|b| (n - b.grade() as i64).rem_euclid(2) == 0)
        .map(|b| ((n - b.grade() as i64) / 2, b))
        .filter(|(j, _)| laurent || *j >= 0)
        .collect()
}

/// Per-degree dimensions over `Q(i)` of `d_h`-cohomology in a single mode.
pub fn graded_field_dims(
    model: &TorusModel,
    k: &[i64],
    degrees: &[i64],
    laurent: bool,
) -> Result<BTreeMap<i64, usize>> {
    let dim = model.dim();
    let frame: Frame<FourierCoeff> = model.frame();
    let op = |x: &Form<FourierCoeff>| frame.dh(x);
    field_homology_dims(
        degrees,
        |n| graded_basis(dim, *n, laurent),
        |n| n + 1,
        |n| n - 1,
        |&(j, b)| Ok(apply_in_mode(&op, dim, k, j, b)?.into_iter().map(|(j, b, c)| ((j, b), c)).collect()),
    )
}

#[derive(Clone, Debug)]
pub struct DerhamTable<R> {
    pub mode_box: i64,
    /// Homology of every mode in the box, zero mode first.
    pub per_mode: Vec<(Vec<i64>, CohomologyTable<R>)>,
    /// Field dimensions of `Λ^{[n]}`-graded cohomology summed over the box.
    pub graded_dims: BTreeMap<i64, usize>,
}

impl<R: HRing> DerhamTable<R> {
    pub fn invariant(&self) -> &CohomologyTable<R> {
        &self.per_mode[0].1
    }

    pub fn total_rank(&self) -> usize {
        self.per_mode.iter().map(|(_, t)| t.total_rank()).sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.per_mode.iter().any(|(_, t)| t.has_torsion())
    }

    /// Nonzero modes with nonzero homology (none expected on symplectic tori).
    pub fn nonzero_modes_with_homology(&self) -> Vec<Vec<i64>> {
        self.per_mode
            .iter()
            .filter(|(k, t)| k.iter().any(|&x| x != 0) && !t.is_zero())
            .map(|(k, _)| k.clone())
            .collect()
    }
}

/// Quantum de Rham cohomology of a torus with constant bivector, aggregated
/// over all modes with `|k_i| ≤ mode_box`.
pub fn quantum_derham_table<R: HRing>(
    model: &TorusModel,
    mode_box_size: i64,
    max_degree: i64,
    exec: Exec,
) -> Result<DerhamTable<R>> {
    model.require_torus()?;
    model.require_constant()?;
    let modes = mode_box(model.dim(), mode_box_size);
    let degrees: Vec<i64> = (0..=max_degree).collect();
    let results = exec.map(&modes, |k| -> Result<_> {
        let table = complex_homology(&mode_subcomplex::<R>(model, k)?)?;
        let dims = graded_field_dims(model, k, &degrees, R::LAURENT)?;
        Ok((k.clone(), table, dims))
    });
    let mut per_mode = Vec::new();
    let mut graded_dims: BTreeMap<i64, usize> = degrees.iter().map(|&n| (n, 0)).collect();
    for r in results {
        let (k, table, dims) = r?;
        for (n, d) in dims {
            *graded_dims.get_mut(&n).unwrap() += d;
        }
        per_mode.push((k, table));
    }
    Ok(DerhamTable { mode_box: mode_box_size, per_mode, graded_dims })
}
