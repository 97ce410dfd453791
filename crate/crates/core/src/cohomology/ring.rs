use super::complex::{CohomologyTable, FiniteComplex, HRing};
use crate::calculus::TorusModel;
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::quantum::qwedge;
use crate::scalar::FourierCoeff;

#[derive(Clone, Debug)]
pub struct ClassGenerator {
    /// Component of the complex holding the class.
    pub component: usize,
    pub degree: Option<i64>,
    pub form: Form<FourierCoeff>,
}

/// Structure constants of `∧_h` on free cohomology generators:
/// `[g_a] ∧_h [g_b] = Σ_c constants[a][b][c] [g_c]`.
#[derive(Clone, Debug)]
pub struct RingTable<R> {
    pub generators: Vec<ClassGenerator>,
    pub constants: Vec<Vec<Vec<R>>>,
}

impl<R: HRing> RingTable<R> {
    pub fn product(&self, a: usize, b: usize) -> &[R] {
        &self.constants[a][b]
    }

    /// Index of the generator whose representative equals `f`.
    pub fn find(&self, f: &Form<FourierCoeff>) -> Option<usize> {
        self.generators.iter().position(|g| g.form == *f)
    }

    /// Structure-constant check of `[a][b] = (-1)^{|a||b|} [b][a]`.
    pub fn is_supercommutative(&self) -> bool {
        let n = self.generators.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let (Some(da), Some(db)) = (self.generators[a].degree, self.generators[b].degree) else {
                    return false;
                };
                let sign = if (da * db) % 2 != 0 { R::from_int(-1) } else { R::one() };
                self.constants[a][b].iter().zip(&self.constants[b][a]).all(|(x, y)| *x == sign.mul_ref(y))
            })
        })
    }

    /// Structure-constant check of associativity.
    pub fn is_associative(&self) -> bool {
        let n = self.generators.len();
        let mul = |u: &[R], v: &[R]| -> Vec<R> {
            let mut out = vec![R::zero(); n];
            for (a, x) in u.iter().enumerate().filter(|p| !p.1.is_zero()) {
                for (b, y) in v.iter().enumerate().filter(|p| !p.1.is_zero()) {
                    let xy = x.mul_ref(y);
                    for (c, k) in self.constants[a][b].iter().enumerate() {
                        out[c] += &xy.mul_ref(k);
                    }
                }
            }
            out
        };
        let unit = |i: usize| -> Vec<R> { (0..n).map(|j| if i == j { R::one() } else { R::zero() }).collect() };
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let ab = mul(&unit(a), &unit(b));
                    let bc = mul(&unit(b), &unit(c));
                    mul(&ab, &unit(c)) == mul(&unit(a), &bc)
                })
            })
        })
    }
}

/// Multiplication table of the free classes of `table`, computed by
/// multiplying representatives and reducing modulo exact forms.
pub fn ring_table<R: HRing>(
    complex: &FiniteComplex<R>,
    table: &CohomologyTable<R>,
    model: &TorusModel,
) -> Result<RingTable<R>> {
    let mut generators = Vec::new();
    let mut offsets = Vec::new();
    for (k, row) in table.rows.iter().enumerate() {
        offsets.push(generators.len());
        for g in &row.generators {
            if g.torsion.is_some() {
                return Err(Error::Precondition("ring table needs a torsion-free table".into()));
            }
            generators.push(ClassGenerator { component: k, degree: g.degree, form: complex.to_form(k, &g.vector) });
        }
    }
    let n = generators.len();
    let w = model.bivector();
    let mut constants = vec![vec![vec![R::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            let p = qwedge(&generators[a].form, &generators[b].form, w);
            if p.is_zero() {
                continue;
            }
            let parity = match p.terms().next() {
                Some((_, bl, _)) => bl.grade() % 2,
                None => 0,
            };
            let comp = complex
                .components
                .iter()
                .position(|c| c.basis.first().is_some_and(|x| x.grade() % 2 == parity))
                .ok_or_else(|| Error::Reduction("no component for product".into()))?;
            let v =
                complex.coordinates(comp, &p).ok_or_else(|| Error::Reduction("product outside the complex".into()))?;
            let coords = table.rows[comp].reduce(&v)?;
            for (i, c) in coords.into_iter().enumerate() {
                constants[a][b][offsets[comp] + i] = c;
            }
        }
    }
    Ok(RingTable { generators, constants })
}
