//! Quantum Cartan model `D_{hG} = d_h + Θ^a ι_a` for abelian actions by
//! vector fields preserving the bivector.

use std::collections::BTreeMap;

use crate::calculus::{PoissonModel, TorusModel};
use crate::cohomology::{field_homology_dims, graded_basis, mode_box};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{Blade, Form};
use crate::linalg::Matrix;
use crate::scalar::{CoeffRing, FourierCoeff, GRat, Rat, Ring};

/// Generating vector fields `X_a = Σ_j c_a^j ∂_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAction<C> {
    pub generators: Vec<Vec<C>>,
}

impl<C: CoeffRing> GroupAction<C> {
    pub fn new(generators: Vec<Vec<C>>) -> Self {
        GroupAction { generators }
    }

    pub fn trivial() -> Self {
        GroupAction { generators: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        for g in &self.generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch(g.len(), dim));
            }
        }
        Ok(())
    }

    fn generator(&self, a: usize) -> Result<&[C]> {
        self.generators.get(a).map(Vec::as_slice).ok_or(Error::IndexOutOfRange { index: a, dim: self.generators.len() })
    }
}

impl GroupAction<FourierCoeff> {
    /// Translations of a torus by constant rational vector fields.
    pub fn translations(generators: Vec<Vec<Rat>>) -> Self {
        GroupAction {
            generators: generators
                .into_iter()
                .map(|g| g.into_iter().map(|c| FourierCoeff::constant(GRat::real(c))).collect())
                .collect(),
        }
    }

    /// Rational constant coefficients, if every generator is a translation.
    pub fn translation_vectors(&self) -> Option<Vec<Vec<Rat>>> {
        self.generators
            .iter()
            .map(|g| g.iter().map(|c| c.as_constant().filter(GRat::is_real).map(|z| z.re)).collect::<Option<Vec<_>>>())
            .collect()
    }
}

/// `ι_{X_a} α`.
pub fn contract_generator<C: CoeffRing>(action: &GroupAction<C>, a: usize, alpha: &Form<C>) -> Result<Form<C>> {
    let x = action.generator(a)?;
    if x.len() != alpha.dim() {
        return Err(Error::DimensionMismatch(x.len(), alpha.dim()));
    }
    let mut out = Form::zero(alpha.dim());
    for (j, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out += &alpha.contract_front(j).mul_coeff(c);
        }
    }
    Ok(out)
}

/// `L_{X_a} α = d ι_a α + ι_a dα`.
pub fn lie_derivative_form<C: CoeffRing>(
    model: &PoissonModel<C>,
    action: &GroupAction<C>,
    a: usize,
    alpha: &Form<C>,
) -> Result<Form<C>> {
    Ok(model.d(&contract_generator(action, a, alpha)?) + contract_generator(action, a, &model.d(alpha))?)
}

/// `(L_X w)^{ij} = X^k ∂_k w^{ij} - w^{kj} ∂_k X^i - w^{ik} ∂_k X^j`.
pub fn lie_derivative_bivector<C: CoeffRing>(
    model: &PoissonModel<C>,
    action: &GroupAction<C>,
    a: usize,
) -> Result<Matrix<C>> {
    let x = action.generator(a)?;
    let w = model.bivector();
    let m = model.dim();
    if x.len() != m {
        return Err(Error::DimensionMismatch(x.len(), m));
    }
    Ok(Matrix::from_fn(m, m, |i, j| {
        let mut acc = C::zero();
        for k in 0..m {
            acc += &x[k].mul_ref(&w[(i, j)].partial(k));
            acc -= &w[(k, j)].mul_ref(&x[i].partial(k));
            acc -= &w[(i, k)].mul_ref(&x[j].partial(k));
        }
        acc
    }))
}

/// `[X_a, X_b]^i = X_a^k ∂_k X_b^i - X_b^k ∂_k X_a^i`.
pub fn bracket<C: CoeffRing>(action: &GroupAction<C>, a: usize, b: usize) -> Result<Vec<C>> {
    let xa = action.generator(a)?;
    let xb = action.generator(b)?;
    Ok((0..xa.len())
        .map(|i| {
            let mut acc = C::zero();
            for k in 0..xa.len() {
                acc += &xa[k].mul_ref(&xb[i].partial(k));
                acc -= &xb[k].mul_ref(&xa[i].partial(k));
            }
            acc
        })
        .collect())
}

/// Checks dimensions, commutation of the generators and `L_{X_a} w = 0`.
pub fn validate_action<C: CoeffRing>(model: &PoissonModel<C>, action: &GroupAction<C>) -> Result<()> {
    action.check_dim(model.dim())?;
    for a in 0..action.len() {
        for b in a + 1..action.len() {
            if bracket(action, a, b)?.iter().any(|c| !c.is_zero()) {
                return Err(Error::Precondition(format!("generators {} and {} do not commute", a + 1, b + 1)));
            }
        }
        if !lie_derivative_bivector(model, action, a)?.is_zero() {
            return Err(Error::Precondition(format!("generator {} does not preserve the bivector", a + 1)));
        }
    }
    Ok(())
}

/// `Σ_μ Θ^μ ⊗ α_μ`, keyed by the exponent vector of `Θ^1 … Θ^d`.
#[derive(Clone, PartialEq)]
pub struct EquivariantElement<C> {
    dim: usize,
    generators: usize,
    parts: BTreeMap<Vec<u32>, Form<C>>,
}

impl<C: Ring + std::fmt::Display> std::fmt::Debug for EquivariantElement<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.parts.iter()).finish()
    }
}

impl<C: Ring> EquivariantElement<C> {
    pub fn zero(dim: usize, generators: usize) -> Self {
        EquivariantElement { dim, generators, parts: BTreeMap::new() }
    }

    pub fn from_form(alpha: Form<C>, generators: usize) -> Self {
        let mut x = Self::zero(alpha.dim(), generators);
        x.add(vec![0; generators], &alpha);
        x
    }

    pub fn add(&mut self, mu: Vec<u32>, alpha: &Form<C>) {
        assert_eq!(mu.len(), self.generators, "Θ-exponent length");
        let slot = self.parts.entry(mu.clone()).or_insert_with(|| Form::zero(self.dim));
        *slot += alpha;
        if slot.is_zero() {
            self.parts.remove(&mu);
        }
    }

    pub fn part(&self, mu: &[u32]) -> Form<C> {
        self.parts.get(mu).cloned().unwrap_or_else(|| Form::zero(self.dim))
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Vec<u32>, &Form<C>)> {
        self.parts.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Total degrees `2|μ| + deg α_μ` of the homogeneous parts.
    pub fn total_degrees(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .parts
            .iter()
            .flat_map(|(mu, f)| {
                let s: i64 = mu.iter().map(|&e| 2 * e as i64).sum();
                f.graded_degrees().into_iter().map(move |n| n + s)
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub fn is_invariant<C: CoeffRing>(
    model: &PoissonModel<C>,
    action: &GroupAction<C>,
    x: &EquivariantElement<C>,
) -> Result<bool> {
    for f in x.parts.values() {
        for a in 0..action.len() {
            if !lie_derivative_form(model, action, a, f)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Support check for translation actions: every Fourier mode is orthogonal
/// to every generator.
pub fn fourier_invariant(translations: &[Vec<Rat>], alpha: &Form<FourierCoeff>) -> bool {
    alpha.terms().all(|(_, _, c)| c.support().all(|k| translations.iter().all(|x| mode_pairing(k, x).is_zero())))
}

fn mode_pairing(k: &[i64], x: &[Rat]) -> Rat {
    k.iter().zip(x).fold(Rat::zero(), |acc, (&ki, xi)| acc + xi.mul_ref(&Rat::from(ki)))
}

fn cartan_d_unchecked<C: CoeffRing>(
    model: &PoissonModel<C>,
    action: &GroupAction<C>,
    x: &EquivariantElement<C>,
) -> Result<EquivariantElement<C>> {
    let mut out = EquivariantElement::zero(x.dim, x.generators);
    for (mu, f) in &x.parts {
        out.add(mu.clone(), &model.dh(f));
        for a in 0..action.len() {
            let mut nu = mu.clone();
            nu[a] += 1;
            out.add(nu, &contract_generator(action, a, f)?);
        }
    }
    Ok(out)
}

/// `D_{hG} x = Σ_μ Θ^μ ⊗ d_h α_μ + Σ_{μ,a} Θ^{μ+e_a} ⊗ ι_a α_μ`.
pub fn cartan_d<C: CoeffRing>(
    model: &PoissonModel<C>,
    action: &GroupAction<C>,
    x: &EquivariantElement<C>,
) -> Result<EquivariantElement<C>> {
    validate_action(model, action)?;
    if x.dim != model.dim() || x.generators != action.len() {
        return Err(Error::Shape("equivariant element does not match the action".into()));
    }
    if !is_invariant(model, action, x)? {
        return Err(Error::Precondition("equivariant element is not invariant".into()));
    }
    cartan_d_unchecked(model, action, x)
}

/// `(δ ι_a + ι_a δ) α`.
pub fn anticommutator<C: CoeffRing>(
    model: &PoissonModel<C>,
    action: &GroupAction<C>,
    a: usize,
    alpha: &Form<C>,
) -> Result<Form<C>> {
    Ok(model.delta(&contract_generator(action, a, alpha)?) + contract_generator(action, a, &model.delta(alpha))?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnticommutatorReport {
    pub generators: usize,
    pub samples: usize,
    /// `(generator, sample)` pairs with a nonzero residual.
    pub failures: Vec<(usize, usize)>,
}

impl AnticommutatorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn anticommutator_check<C: CoeffRing>(
    model: &PoissonModel<C>,
    action: &GroupAction<C>,
    samples: &[Form<C>],
) -> Result<AnticommutatorReport> {
    action.check_dim(model.dim())?;
    let mut failures = Vec::new();
    for a in 0..action.len() {
        for (s, alpha) in samples.iter().enumerate() {
            if !anticommutator(model, action, a, alpha)?.is_zero() {
                failures.push((a, s));
            }
        }
    }
    Ok(AnticommutatorReport { generators: action.len(), samples: samples.len(), failures })
}

fn exponents_of_degree(vars: usize, s: u32) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if s == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=s).rev() {
        for mut rest in exponents_of_degree(vars - 1, s - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

type CartanKey = (Vec<u32>, i64, Blade);

fn cartan_basis(dim: usize, generators: usize, n: i64) -> Vec<CartanKey> {
    let mut out = Vec::new();
    let mut s = 0i64;
    while 2 * s <= n {
        for mu in exponents_of_degree(generators, s as u32) {
            for (j, b) in graded_basis(dim, n - 2 * s, false) {
                out.push((mu.clone(), j, b));
            }
        }
        s += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantTable {
    pub cutoff: i64,
    pub mode_box: i64,
    /// Modes in the box orthogonal to every generator.
    pub invariant_modes: Vec<Vec<i64>>,
    /// Field dimension of the total-degree-`n` cohomology of the `Q(i)[h, Θ]`
    /// complex, summed over the invariant modes, for `0 ≤ n ≤ cutoff`.
    pub dims: BTreeMap<i64, usize>,
    pub per_mode: Vec<(Vec<i64>, BTreeMap<i64, usize>)>,
}

/// Truncated quantum equivariant cohomology of a torus under translations.
pub fn equivariant_cohomology_table(
    model: &TorusModel,
    action: &GroupAction<FourierCoeff>,
    cutoff: i64,
    mode_box_size: i64,
    exec: Exec,
) -> Result<EquivariantTable> {
    if cutoff < 0 {
        return Err(Error::Precondition(format!("negative degree cutoff {cutoff}")));
    }
    model.require_torus()?;
    model.require_constant()?;
    validate_action(model, action)?;
    let xs = action
        .translation_vectors()
        .ok_or_else(|| Error::Precondition("equivariant table needs constant rational translations".into()))?;
    let dim = model.dim();
    let g = action.len();
    let modes: Vec<Vec<i64>> =
        mode_box(dim, mode_box_size).into_iter().filter(|k| xs.iter().all(|x| mode_pairing(k, x).is_zero())).collect();
    let degrees: Vec<i64> = (0..=cutoff).collect();
    let results = exec.map(&modes, |k| -> Result<BTreeMap<i64, usize>> {
        field_homology_dims(
            &degrees,
            |n| cartan_basis(dim, g, *n),
            |n| n + 1,
            |n| n - 1,
            |(mu, j, b)| {
                let f = Form::monomial(dim, *j, *b, FourierCoeff::mode(GRat::one(), k.clone()));
                let mut x = EquivariantElement::zero(dim, g);
                x.add(mu.clone(), &f);
                let y = cartan_d_unchecked(model, action, &x)?;
                let mut out = Vec::new();
                for (nu, form) in y.parts() {
                    for (jj, bb, c) in form.terms() {
                        for (kk, v) in c.modes() {
                            if FourierCoeff::padded(kk, dim) != FourierCoeff::padded(k, dim) {
                                return Err(Error::Precondition("Cartan differential mixes Fourier modes".into()));
                            }
                            out.push(((nu.clone(), jj, bb), v.clone()));
                        }
                    }
                }
                Ok(out)
            },
        )
    });
    let mut dims: BTreeMap<i64, usize> = degrees.iter().map(|&n| (n, 0)).collect();
    let mut per_mode = Vec::new();
    for (k, r) in modes.iter().zip(results) {
        let d = r?;
        for (n, v) in &d {
            *dims.get_mut(n).unwrap() += v;
        }
        per_mode.push((k.clone(), d));
    }
    Ok(EquivariantTable { cutoff, mode_box: mode_box_size, invariant_modes: modes, dims, per_mode })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{bivector_from_entries, so3_bivector, Space};
    use crate::cohomology::quantum_derham_table;
    use crate::exterior::Symplectic;
    use crate::scalar::{HPoly, PolyCoeff};

    type FF = Form<FourierCoeff>;

    fn t2() -> TorusModel {
        PoissonModel::symplectic(Space::Torus, Symplectic::darboux(1), false).unwrap()
    }

    fn mode(c: i64, k: &[i64]) -> FourierCoeff {
        FourierCoeff::mode(GRat::real(Rat::from(c)), k.to_vec())
    }

    #[test]
    fn contraction_examples() {
        let x = GroupAction::translations(vec![vec![Rat::from(1), Rat::from(0)]]);
        assert_eq!(contract_generator(&x, 0, &FF::basis(2, &[0])).unwrap(), FF::one(2));
        assert!(contract_generator(&x, 0, &FF::basis(2, &[1])).unwrap().is_zero());
        assert!(contract_generator(&x, 1, &FF::one(2)).is_err());
    }

    #[test]
    fn cartan_examples() {
        let m = t2();
        let x = GroupAction::translations(vec![vec![Rat::from(1), Rat::from(0)]]);
        let f = FF::scalar(2, mode(1, &[0, 1]));
        let df = cartan_d(&m, &x, &EquivariantElement::from_form(f.clone(), 1)).unwrap();
        assert_eq!(df, EquivariantElement::from_form(m.d(&f), 1));
        let e1 = EquivariantElement::from_form(FF::basis(2, &[0]), 1);
        let mut theta = EquivariantElement::zero(2, 1);
        theta.add(vec![1], &FF::one(2));
        assert_eq!(cartan_d(&m, &x, &e1).unwrap(), theta);
        let bad = EquivariantElement::from_form(FF::scalar(2, mode(1, &[1, 0])), 1);
        assert!(matches!(cartan_d(&m, &x, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn square_zero_on_invariant_elements() {
        let m = PoissonModel::symplectic(Space::Torus, Symplectic::darboux(2), false).unwrap();
        let xs = vec![
            vec![Rat::from(1), Rat::from(0), Rat::from(0), Rat::from(0)],
            vec![Rat::from(0), Rat::from(0), Rat::from(1), Rat::from(-1)],
        ];
        let act = GroupAction::translations(xs.clone());
        let mut rng = crate::random::rng(3);
        for _ in 0..10 {
            let mut x = EquivariantElement::zero(4, 2);
            for mu in [vec![0, 0], vec![1, 0], vec![0, 2]] {
                let f = crate::random::form(&mut rng, 4, 3, 0..=1, |r| {
                    let k = rand::Rng::random_range(r, -2..=2i64);
                    mode(1, &[0, k, 1, 1])
                });
                x.add(mu, &f);
            }
            assert!(x.parts().all(|(_, f)| fourier_invariant(&xs, f)));
            assert!(is_invariant(&m, &act, &x).unwrap());
            let dx = cartan_d(&m, &act, &x).unwrap();
            assert!(is_invariant(&m, &act, &dx).unwrap());
            assert!(cartan_d(&m, &act, &dx).unwrap().is_zero());
        }
    }

    #[test]
    fn anticommutator_vanishes_for_preserved_bivectors() {
        let m = t2();
        let x = GroupAction::translations(vec![vec![Rat::from(1), Rat::from(2)]]);
        let mut rng = crate::random::rng(8);
        let samples: Vec<FF> = (0..10)
            .map(|_| crate::random::form(&mut rng, 2, 3, 0..=0, |r| crate::random::fourier(r, 2, 2, 2)))
            .collect();
        assert!(anticommutator_check(&m, &x, &samples).unwrap().passed());

        let so3 = PoissonModel::new(Space::Affine, so3_bivector(), None, false).unwrap();
        let rot = GroupAction::new(vec![vec![PolyCoeff::var(1), -PolyCoeff::var(0), PolyCoeff::zero()]]);
        validate_action(&so3, &rot).unwrap();
        let samples: Vec<Form<PolyCoeff>> =
            (0..10).map(|_| crate::random::form(&mut rng, 3, 3, 0..=0, |r| crate::random::poly(r, 3, 2, 2))).collect();
        assert!(anticommutator_check(&so3, &rot, &samples).unwrap().passed());
    }

    #[test]
    fn anticommutator_detects_unpreserved_bivector() {
        let cos =
            FourierCoeff::from_modes([(vec![1], GRat::real(Rat::new(1, 2))), (vec![-1], GRat::real(Rat::new(1, 2)))]);
        let m = PoissonModel::new(Space::Torus, bivector_from_entries(2, &[(0, 1, cos)]), None, false).unwrap();
        let x = GroupAction::translations(vec![vec![Rat::from(1), Rat::from(0)]]);
        assert!(!lie_derivative_bivector(&m, &x, 0).unwrap().is_zero());
        assert!(validate_action(&m, &x).is_err());
        let report = anticommutator_check(&m, &x, &[FF::basis(2, &[0, 1]), FF::one(2)]).unwrap();
        assert_eq!(report.failures, vec![(0, 0)]);
        let lw = crate::calculus::Frame::coordinate(lie_derivative_bivector(&m, &x, 0).unwrap());
        let mut rng = crate::random::rng(4);
        for _ in 0..5 {
            let a = crate::random::form(&mut rng, 2, 3, 0..=0, |r| crate::random::fourier(r, 2, 2, 1));
            assert!((anticommutator(&m, &x, 0, &a).unwrap() + lw.iota(&a)).is_zero());
        }
    }

    #[test]
    fn trivial_action_matches_derham() {
        let m = t2();
        let eq = equivariant_cohomology_table(&m, &GroupAction::trivial(), 4, 1, Exec::Sequential).unwrap();
        let dr = quantum_derham_table::<HPoly<GRat>>(&m, 1, 4, Exec::Sequential).unwrap();
        assert_eq!(eq.dims, dr.graded_dims);
        assert!(equivariant_cohomology_table(&m, &GroupAction::trivial(), -1, 1, Exec::Sequential).is_err());
    }

    #[test]
    fn circle_action_on_t2() {
        let m = t2();
        let x = GroupAction::translations(vec![vec![Rat::from(1), Rat::from(0)]]);
        let t = equivariant_cohomology_table(&m, &x, 5, 1, Exec::Sequential).unwrap();
        assert_eq!(t.invariant_modes, vec![vec![0, 0], vec![0, -1], vec![0, 1]]);
        assert!(t.dims.values().all(|&d| d == 1));
        assert!(t.per_mode[1..].iter().all(|(_, d)| d.values().all(|&v| v == 0)));
    }
}
