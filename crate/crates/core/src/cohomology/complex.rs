use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{Blade, Form};
use crate::linalg::{smith_normal_form, Matrix};
use crate::scalar::{EuclideanRing, FourierCoeff, GRat, HLaurent, HPoly, Ring};

/// Coefficient rings of quantum cohomology: `Q(i)[h]` and `Q(i)[h, h⁻¹]`.
pub trait HRing: EuclideanRing + fmt::Display {
    const LAURENT: bool;
    const NAME: &'static str;

    /// `c h^j`; panics on `j < 0` in the polynomial ring.
    fn h_monomial(c: GRat, j: i64) -> Self;
    fn h_terms(&self) -> Vec<(i64, GRat)>;
}

impl HRing for HPoly<GRat> {
    const LAURENT: bool = false;
    const NAME: &'static str = "polynomial";

    fn h_monomial(c: GRat, j: i64) -> Self {
        assert!(j >= 0, "negative h-power in Q[h]");
        HPoly::monomial(c, j as usize)
    }

    fn h_terms(&self) -> Vec<(i64, GRat)> {
        self.terms().map(|(j, c)| (j as i64, c.clone())).collect()
    }
}

impl HRing for HLaurent<GRat> {
    const LAURENT: bool = true;
    const NAME: &'static str = "laurent";

    fn h_monomial(c: GRat, j: i64) -> Self {
        HLaurent::monomial(c, j)
    }

    fn h_terms(&self) -> Vec<(i64, GRat)> {
        self.terms().map(|(j, c)| (j, c.clone())).collect()
    }
}

/// One graded piece of a finite complex: a free module on the forms
/// `exp(i k·θ) e^I`, `I` running over `basis`.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub degree: i64,
    pub basis: Vec<Blade>,
}

/// Finite-rank cochain complex over `R`. `diffs[k]` maps component `k` to
/// component `k + 1`; when `cyclic`, the last one maps back to component 0.
#[derive(Clone, Debug)]
pub struct FiniteComplex<R> {
    pub dim: usize,
    pub mode: Vec<i64>,
    pub components: Vec<Component>,
    pub diffs: Vec<Matrix<R>>,
    pub cyclic: bool,
}

impl<R: HRing> FiniteComplex<R> {
    pub fn new(
        dim: usize,
        mode: Vec<i64>,
        components: Vec<Component>,
        diffs: Vec<Matrix<R>>,
        cyclic: bool,
    ) -> Result<Self> {
        let n = components.len();
        let expected = if cyclic { n } else { n.saturating_sub(1) };
        if diffs.len() != expected {
            return Err(Error::Shape(format!("{} differentials for {} components", diffs.len(), n)));
        }
        for (k, d) in diffs.iter().enumerate() {
            let src = components[k].basis.len();
            let dst = components[(k + 1) % n].basis.len();
            if d.shape() != (dst, src) {
                return Err(Error::Shape(format!(
                    "differential {k} has shape {:?}, expected ({dst}, {src})",
                    d.shape()
                )));
            }
        }
        let c = FiniteComplex { dim, mode, components, diffs, cyclic };
        c.check_square_zero()?;
        Ok(c)
    }

    fn check_square_zero(&self) -> Result<()> {
        let n = self.diffs.len();
        for k in 0..n {
            if !self.cyclic && k + 1 >= n {
                break;
            }
            let next = &self.diffs[(k + 1) % n];
            if !next.mul(&self.diffs[k]).is_zero() {
                return Err(Error::NotAComplex(self.components[k].degree));
            }
        }
        Ok(())
    }

    fn outgoing(&self, k: usize) -> Matrix<R> {
        if k < self.diffs.len() {
            self.diffs[k].clone()
        } else {
            Matrix::zeros(0, self.components[k].basis.len())
        }
    }

    fn incoming(&self, k: usize) -> Matrix<R> {
        let n = self.components.len();
        if k > 0 {
            self.diffs[k - 1].clone()
        } else if self.cyclic {
            self.diffs[n - 1].clone()
        } else {
            Matrix::zeros(self.components[0].basis.len(), 0)
        }
    }

    /// The element of component `k` with coordinate vector `v`, as a form.
    pub fn to_form(&self, k: usize, v: &[R]) -> Form<FourierCoeff> {
        let mut f = Form::zero(self.dim);
        for (b, x) in self.components[k].basis.iter().zip(v) {
            for (j, c) in x.h_terms() {
                f.add_term(j, *b, &FourierCoeff::mode(c, self.mode.clone()));
            }
        }
        f
    }

    /// Coordinates of a form in component `k`; `None` if it has terms outside
    /// the component's basis, mode or ring.
    pub fn coordinates(&self, k: usize, f: &Form<FourierCoeff>) -> Option<Vec<R>> {
        let basis = &self.components[k].basis;
        let mut v = vec![R::zero(); basis.len()];
        for (j, b, c) in f.terms() {
            let pos = basis.iter().position(|x| *x == b)?;
            if !R::LAURENT && j < 0 {
                return None;
            }
            for (kk, x) in c.modes() {
                if FourierCoeff::padded(kk, self.dim) != FourierCoeff::padded(&self.mode, self.dim) {
                    return None;
                }
                v[pos] += &R::h_monomial(x.clone(), j);
            }
        }
        Some(v)
    }
}

/// Graded degree of a coordinate vector, if homogeneous.
fn vector_degree<R: HRing>(basis: &[Blade], v: &[R]) -> Option<i64> {
    let mut deg = None;
    for (b, x) in basis.iter().zip(v) {
        for (j, _) in x.h_terms() {
            let d = b.grade() as i64 + 2 * j;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
    }
    deg
}

/// A homology generator.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator<R> {
    pub vector: Vec<R>,
    /// Graded degree of the representative, if homogeneous.
    pub degree: Option<i64>,
    /// `None` for free generators, otherwise the invariant factor.
    pub torsion: Option<R>,
}

/// Data for reducing cycles of one component to generator coordinates.
#[derive(Clone, Debug)]
struct Reducer<R> {
    v_inv: Matrix<R>,
    kernel_start: usize,
    u2: Matrix<R>,
    factors: Vec<R>,
    out: Matrix<R>,
}

#[derive(Clone, Debug)]
pub struct HomologyRow<R> {
    pub degree: i64,
    pub rank: usize,
    pub torsion: Vec<R>,
    pub generators: Vec<Generator<R>>,
    /// `dim C − rank D_out − rank D_in` computed over the fraction field.
    pub fraction_field_rank: usize,
    reducer: Reducer<R>,
}

impl<R: HRing> HomologyRow<R> {
    pub fn free_generators(&self) -> impl Iterator<Item = &Generator<R>> {
        self.generators.iter().filter(|g| g.torsion.is_none())
    }

    /// Coordinates of a cycle in the generators of this row (torsion
    /// coordinates reduced modulo their factor). Errors when the vector is not
    /// a cycle.
    pub fn reduce(&self, v: &[R]) -> Result<Vec<R>> {
        if !self.reducer.out.mul_vec(v).iter().all(Ring::is_zero) {
            return Err(Error::Reduction("vector is not a cycle".into()));
        }
        let z = self.reducer.v_inv.mul_vec(v);
        if z[..self.reducer.kernel_start].iter().any(|x| !x.is_zero()) {
            return Err(Error::Reduction("kernel coordinates inconsistent".into()));
        }
        let y = self.reducer.u2.mul_vec(&z[self.reducer.kernel_start..]);
        let mut out = Vec::new();
        for (i, c) in y.into_iter().enumerate() {
            match self.reducer.factors.get(i) {
                Some(d) if d.is_unit() => {}
                Some(d) => out.push(c.div_rem(d).1),
                None => out.push(c),
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyTable<R> {
    pub ring: &'static str,
    pub rows: Vec<HomologyRow<R>>,
}

impl<R: HRing> CohomologyTable<R> {
    pub fn total_rank(&self) -> usize {
        self.rows.iter().map(|r| r.rank).sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.rows.iter().any(|r| !r.torsion.is_empty())
    }

    pub fn is_zero(&self) -> bool {
        self.total_rank() == 0 && !self.has_torsion()
    }

    /// Free generator counts by graded degree of their representatives.
    pub fn rank_by_degree(&self) -> std::collections::BTreeMap<Option<i64>, usize> {
        let mut m = std::collections::BTreeMap::new();
        for row in &self.rows {
            for g in row.free_generators() {
                *m.entry(g.degree).or_insert(0) += 1;
            }
        }
        m
    }
}

fn shift_to_min_zero<R: HRing>(v: &[R]) -> Vec<R> {
    let min = v.iter().flat_map(|x| x.h_terms().into_iter().map(|t| t.0)).min().unwrap_or(0);
    if min == 0 {
        return v.to_vec();
    }
    let s = R::h_monomial(GRat::one(), -min);
    v.iter().map(|x| x.mul_ref(&s)).collect()
}

/// Homology of every component over the PID `R`, via Smith normal form.
pub fn complex_homology<R: HRing>(c: &FiniteComplex<R>) -> Result<CohomologyTable<R>> {
    let mut rows = Vec::new();
    for (k, comp) in c.components.iter().enumerate() {
        let n = comp.basis.len();
        let out = c.outgoing(k);
        let inc = c.incoming(k);
        let s_out = smith_normal_form(&out);
        let r = s_out.rank;
        let kernel: Matrix<R> = Matrix::from_fn(n, n - r, |i, j| s_out.v[(i, r + j)].clone());
        let coords = s_out.v_inv.mul(&inc);
        for i in 0..r {
            if coords.row(i).iter().any(|x| !x.is_zero()) {
                return Err(Error::Reduction(format!("image leaves the kernel in component {k}")));
            }
        }
        let b = Matrix::from_fn(n - r, inc.ncols(), |i, j| coords[(r + i, j)].clone());
        let s_b = smith_normal_form(&b);
        let gens = kernel.mul(&s_b.u_inv);
        let factors = s_b.invariant_factors();
        let mut generators = Vec::new();
        let mut torsion = Vec::new();
        for col in 0..n - r {
            let factor = factors.get(col).cloned();
            if factor.as_ref().is_some_and(|d| d.is_unit()) {
                continue;
            }
            let mut v = gens.column(col);
            if R::LAURENT {
                v = shift_to_min_zero(&v);
            }
            if !out.mul_vec(&v).iter().all(Ring::is_zero) {
                return Err(Error::Reduction(format!("representative in component {k} is not a cycle")));
            }
            if let Some(d) = &factor {
                torsion.push(d.clone());
            }
            generators.push(Generator { degree: vector_degree(&comp.basis, &v), vector: v, torsion: factor });
        }
        let rank = generators.iter().filter(|g| g.torsion.is_none()).count();
        let fraction_field_rank = n - out.rank_fraction_field() - inc.rank_fraction_field();
        rows.push(HomologyRow {
            degree: comp.degree,
            rank,
            torsion,
            generators,
            fraction_field_rank,
            reducer: Reducer { v_inv: s_out.v_inv, kernel_start: r, u2: s_b.u, factors, out },
        });
    }
    Ok(CohomologyTable { ring: R::NAME, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = HPoly<GRat>;

    #[test]
    fn multiplication_by_h() {
        let comps = vec![
            Component { degree: 0, basis: vec![Blade::EMPTY] },
            Component { degree: 1, basis: vec![Blade::single(0)] },
        ];
        let c = FiniteComplex::new(1, vec![], comps, vec![Matrix::from_rows(vec![vec![P::h()]])], false).unwrap();
        let t = complex_homology(&c).unwrap();
        assert_eq!(t.rows[0].rank, 0);
        assert!(t.rows[0].torsion.is_empty());
        assert_eq!(t.rows[1].rank, 0);
        assert_eq!(t.rows[1].torsion, vec![P::h()]);
    }

    #[test]
    fn rejects_non_complex() {
        let comps = vec![
            Component { degree: 0, basis: vec![Blade::EMPTY] },
            Component { degree: 1, basis: vec![Blade::single(0)] },
            Component { degree: 2, basis: vec![Blade::single(1)] },
        ];
        let one = Matrix::from_rows(vec![vec![P::one()]]);
        let err = FiniteComplex::new(2, vec![], comps, vec![one.clone(), one], false).unwrap_err();
        assert_eq!(err, Error::NotAComplex(0));
    }
}
