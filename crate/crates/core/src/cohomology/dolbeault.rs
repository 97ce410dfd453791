use std::collections::BTreeMap;

use super::modes::{apply_in_mode, field_homology_dims, mode_box};
use crate::calculus::TorusModel;
use crate::complex::term_bidegree;
use crate::error::Result;
use crate::exec::Exec;
use crate::exterior::{Blade, Form};
use crate::scalar::FourierCoeff;

/// Basis `{h^j f^I}` of bidegree `(p, q)` in the complex coframe, `j ≥ 0`.
pub fn bigraded_basis(dim: usize, p: i64, q: i64) -> Vec<(i64, Blade)> {
    let mut out = Vec::new();
    for b in Blade::all(dim) {
        let (a, c) = term_bidegree(0, b);
        let j = p - a;
        if j >= 0 && q - c == j {
            out.push((j, b));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct DolbeaultTable {
    pub mode_box: i64,
    pub max_bidegree: i64,
    /// `dim H^{p,q}` of `(Ω_h^{[p,*]}, ∂̄_h)` over `Q(i)`, summed over the box.
    pub dims: BTreeMap<(i64, i64), usize>,
    pub nonzero_modes: Vec<Vec<i64>>,
}

impl DolbeaultTable {
    /// Ranks over `Q[h]`: `dim(p, q) - dim(p-1, q-1)`, since `h` has bidegree
    /// `(1, 1)` and acts injectively on free modules.
    pub fn h_ranks(&self) -> BTreeMap<(i64, i64), i64> {
        self.dims
            .iter()
            .map(|(&(p, q), &d)| {
                let below = self.dims.get(&(p - 1, q - 1)).copied().unwrap_or(0);
                ((p, q), d as i64 - below as i64)
            })
            .collect()
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Hodge numbers `h^{p,q} = C(n,p) C(n,q)` of the complex torus `T^{2n}`.
pub fn torus_hodge_number(n: i64, p: i64, q: i64) -> i64 {
    binomial(n, p) * binomial(n, q)
}

/// Quantum Dolbeault cohomology of a complex torus in bidegrees
/// `0 ≤ p, q ≤ max_bidegree`.
pub fn quantum_dolbeault_table(
    model: &TorusModel,
    mode_box_size: i64,
    max_bidegree: i64,
    exec: Exec,
) -> Result<DolbeaultTable> {
    model.require_torus()?;
    model.require_constant()?;
    let frame = model.complex_frame()?;
    let dim = model.dim();
    let keys: Vec<(i64, i64)> = (0..=max_bidegree).flat_map(|p| (0..=max_bidegree).map(move |q| (p, q))).collect();
    let modes = mode_box(dim, mode_box_size);
    let op = |x: &Form<FourierCoeff>| frame.del_bar_h(x);
    let results = exec.map(&modes, |k| {
        field_homology_dims(
            &keys,
            |&(p, q)| bigraded_basis(dim, p, q),
            |&(p, q)| (p, q + 1),
            |&(p, q)| (p, q - 1),
            |&(j, b)| Ok(apply_in_mode(&op, dim, k, j, b)?.into_iter().map(|(j, b, c)| ((j, b), c)).collect()),
        )
    });
    let mut dims: BTreeMap<(i64, i64), usize> = keys.iter().map(|k| (*k, 0)).collect();
    let mut nonzero_modes = Vec::new();
    for (k, r) in modes.iter().zip(results) {
        let r = r?;
        if k.iter().any(|&x| x != 0) && r.values().any(|&d| d > 0) {
            nonzero_modes.push(k.clone());
        }
        for (key, d) in r {
            *dims.get_mut(&key).unwrap() += d;
        }
    }
    Ok(DolbeaultTable { mode_box: mode_box_size, max_bidegree, dims, nonzero_modes })
}
