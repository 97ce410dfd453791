//! JSON and LaTeX reports.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::calculus::{qintegral, stokes_check, TorusModel, IOTA_NEGATED};
use crate::chern_weil::{char_form, chern_forms, curvature, QConnection};
use crate::cohomology::{mode_subcomplex, torus_hodge_number, DerhamTable, DolbeaultTable, HRing};
use crate::equivariant::EquivariantTable;
use crate::error::Result;
use crate::exterior::Form;
use crate::json::{form_to_json, hlaurent_json, JsonCoeff};
use crate::lefschetz::{char_spectrum, commutator_check, conforms_to_claim, hard_lefschetz_check, Lefschetz, Spectrum};
use crate::linalg::Factor;
use crate::random::PRNG_NAME;
use crate::scalar::{FourierCoeff, Rat, Ring};

pub fn conventions() -> Value {
    json!({
        "product_normalization": "e^i ∧_w e^j = e^i ∧ e^j + w^{ij}",
        "iota_sign": if IOTA_NEGATED { "ι_w α = -Σ_{a<b} w^{ab} α(e_a, e_b, …)" } else { "ι_w α = Σ_{a<b} w^{ab} α(e_a, e_b, …)" },
        "differential": "d_h = d - hδ, δ = ι_w d - d ι_w, deg h = 2",
        "symplectic_calibration": "w = Ω^{-1}",
        "star": "β ∧ *α = Λ^k(w)(β, α) ω^n/n!, *h = h^{-1}",
        "indices": "1-based",
    })
}

/// Common header: tool version, command, conventions and the PRNG name.
pub fn header(command: &str) -> Value {
    json!({
        "tool": "qdr",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "prng": PRNG_NAME,
        "conventions": conventions(),
    })
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn degree_rows(dims: &BTreeMap<i64, usize>) -> Vec<Value> {
    dims.iter().map(|(n, d)| json!({"degree": n, "rank": d, "torsion": [], "reps": []})).collect()
}

pub fn derham_report<R: HRing>(model: &TorusModel, table: &DerhamTable<R>, max_degree: i64) -> Result<Value> {
    let mut modes = Vec::new();
    for (k, t) in &table.per_mode {
        let complex = mode_subcomplex::<R>(model, k)?;
        let rows: Vec<Value> = t
            .rows
            .iter()
            .enumerate()
            .map(|(c, row)| {
                json!({
                    "degree": row.degree,
                    "rank": row.rank,
                    "torsion": strings(&row.torsion),
                    "reps": row.free_generators().map(|g| form_to_json(&complex.to_form(c, &g.vector))).collect::<Vec<_>>(),
                })
            })
            .collect();
        modes.push(json!({"mode": k, "rows": rows}));
    }
    Ok(json!({
        "ring": R::NAME,
        "mode_box": table.mode_box,
        "max_degree": max_degree,
        "total_rank": table.total_rank(),
        "torsion_free": !table.has_torsion(),
        "nonzero_modes_with_homology": table.nonzero_modes_with_homology(),
        "modes": modes,
        "graded": degree_rows(&table.graded_dims),
    }))
}

pub fn derham_latex<R: HRing>(table: &DerhamTable<R>) -> String {
    let rows = table.graded_dims.iter().map(|(n, d)| vec![n.to_string(), d.to_string()]).collect();
    latex_tabular(&["degree", "dim"], rows)
}

pub fn dolbeault_report(table: &DolbeaultTable, n: i64) -> Value {
    let h_ranks = table.h_ranks();
    let rows: Vec<Value> = table
        .dims
        .iter()
        .map(|(&(p, q), d)| {
            json!({"p": p, "q": q, "dim": d, "h_rank": h_ranks[&(p, q)], "hodge_number": torus_hodge_number(n, p, q)})
        })
        .collect();
    let matches = table.dims.keys().all(|&(p, q)| h_ranks[&(p, q)] == torus_hodge_number(n, p, q));
    json!({
        "mode_box": table.mode_box,
        "max_bidegree": table.max_bidegree,
        "rows": rows,
        "nonzero_modes_with_homology": table.nonzero_modes,
        "matches_hodge_numbers": matches,
    })
}

pub fn dolbeault_latex(table: &DolbeaultTable) -> String {
    let h = table.h_ranks();
    let m = table.max_bidegree;
    let mut headers = vec!["p \\textbackslash{} q".to_string()];
    headers.extend((0..=m).map(|q| q.to_string()));
    let rows = (0..=m)
        .map(|p| {
            let mut r = vec![p.to_string()];
            r.extend((0..=m).map(|q| h[&(p, q)].to_string()));
            r
        })
        .collect();
    latex_tabular(&headers.iter().map(String::as_str).collect::<Vec<_>>(), rows)
}

pub fn equivariant_report(table: &EquivariantTable) -> Value {
    json!({
        "cutoff": table.cutoff,
        "mode_box": table.mode_box,
        "invariant_modes": table.invariant_modes,
        "rows": degree_rows(&table.dims),
    })
}

pub fn equivariant_latex(table: &EquivariantTable) -> String {
    let rows = table.dims.iter().map(|(n, d)| vec![n.to_string(), d.to_string()]).collect();
    latex_tabular(&["total degree", "dim"], rows)
}

pub fn factor_string(f: &Factor) -> String {
    match f {
        Factor::Linear(r) if r.is_zero() => "λ".into(),
        Factor::Linear(r) if r.is_negative() => format!("λ + {}", r.abs()),
        Factor::Linear(r) => format!("λ - {r}"),
        Factor::Quadratic { b, c, .. } => {
            let mut s = "λ^2".to_string();
            if !b.is_zero() {
                s += &if b.is_negative() { format!(" - {}λ", b.abs()) } else { format!(" + {b}λ") };
            }
            if !c.is_zero() {
                s += &if c.is_negative() { format!(" - {}", c.abs()) } else { format!(" + {c}") };
            }
            s
        }
        Factor::Other(p) => format!("irreducible of degree {}: {:?}", p.degree().unwrap_or(0), strings(p.coeffs())),
    }
}

pub fn spectrum_json(s: &Spectrum, center: i64) -> Value {
    json!({
        "charpoly": s.charpoly.coeffs().iter().map(Rat::to_json).collect::<Vec<_>>(),
        "factors": s.factors.iter().map(|(f, e)| json!({"factor": factor_string(f), "multiplicity": e})).collect::<Vec<_>>(),
        "diagonalizable": s.diagonalizable,
        "det": s.det.to_json(),
        "conformance": if conforms_to_claim(s, center) { "match" } else { "mismatch" },
    })
}

/// Spectra of `M_h` and `M_h*` on `Λ^{[k]}`, `|k| ≤ window`, together with
/// the commutator identities and per-piece determinants.
pub fn lefschetz_report(n: usize, window: i64) -> Value {
    let lf = Lefschetz::darboux(n);
    let pieces: Vec<Value> = (-window..=window)
        .map(|k| {
            let m = lf.mh_matrix(k);
            json!({
                "n": n,
                "k": k,
                "size": m.nrows(),
                "m_h": spectrum_json(&char_spectrum(&m), n as i64),
                "m_h_star": spectrum_json(&char_spectrum(&lf.mh_star_matrix(k)), -(n as i64)),
            })
        })
        .collect();
    let commutators = commutator_check(&lf, window);
    let inv = hard_lefschetz_check(&lf, window);
    json!({
        "n": n,
        "window": window,
        "spectra": pieces,
        "commutators": commutators.checks.iter().map(|c| json!({"identity": c.name, "holds": c.holds, "informational": c.informational})).collect::<Vec<_>>(),
        "commutators_pass": commutators.all_pass(),
        "hard_lefschetz": inv.iter().map(|p| json!({"k": p.degree, "size": p.size, "det_m_h": p.det_mh.to_json(), "det_m_h_star": p.det_mh_star.to_json()})).collect::<Vec<_>>(),
        "hard_lefschetz_holds": inv.iter().all(|p| !p.det_mh.is_zero() && !p.det_mh_star.is_zero()),
    })
}

pub fn lefschetz_latex(n: usize, window: i64) -> String {
    let lf = Lefschetz::darboux(n);
    let rows = (-window..=window)
        .map(|k| {
            let s = char_spectrum(&lf.mh_matrix(k));
            let factors: Vec<String> =
                s.factors.iter().map(|(f, e)| format!("$({})^{{{e}}}$", factor_string(f))).collect();
            vec![k.to_string(), factors.join(" "), s.diagonalizable.to_string(), s.det.to_string()]
        })
        .collect();
    latex_tabular(&["k", "charpoly of $M_h$", "diagonalizable", "det"], rows)
}

fn matrix_forms(m: &[Vec<Form<FourierCoeff>>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(form_to_json).collect())).collect())
}

/// Curvature, trace powers with their `d_h` closedness certificate, and
/// Chern forms up to the rank.
pub fn chern_report(model: &TorusModel, conn: &QConnection<FourierCoeff>) -> Value {
    let f = curvature(model, conn);
    let r = conn.rank();
    let traces: Vec<Value> = (1..=r.max(1))
        .map(|k| {
            let p = char_form(model, &f, k);
            let dp = model.dh(&p);
            json!({"k": k, "form": form_to_json(&p), "d_h": form_to_json(&dp), "closed": dp.is_zero()})
        })
        .collect();
    let chern: Vec<Value> = chern_forms(model, &f, r).iter().map(form_to_json).collect();
    json!({
        "rank": r,
        "curvature": matrix_forms(&f),
        "trace_powers": traces,
        "chern_forms": chern,
    })
}

pub fn integral_report(model: &TorusModel, alpha: &Form<FourierCoeff>) -> Result<Value> {
    let value = qintegral(model, alpha)?;
    let stokes = stokes_check(model, alpha)?;
    Ok(json!({
        "form": form_to_json(alpha),
        "integral": hlaurent_json(&value),
        "stokes": {
            "d": hlaurent_json(&stokes.d),
            "h_delta": hlaurent_json(&stokes.h_delta),
            "d_h": hlaurent_json(&stokes.d_h),
            "passed": stokes.passed(),
        },
    }))
}

pub fn latex_tabular(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut s = format!("\\begin{{tabular}}{{{}}}\n\\hline\n", "c".repeat(headers.len()));
    s += &headers.join(" & ");
    s += " \\\\\n\\hline\n";
    for r in rows {
        s += &r.join(" & ");
        s += " \\\\\n";
    }
    s += "\\hline\n\\end{tabular}\n";
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{PoissonModel, Space};
    use crate::cohomology::quantum_derham_table;
    use crate::exec::Exec;
    use crate::exterior::Symplectic;
    use crate::scalar::{GRat, HLaurent};

    fn t2() -> TorusModel {
        PoissonModel::symplectic(Space::Torus, Symplectic::darboux(1), false).unwrap()
    }

    #[test]
    fn derham_report_t2() {
        let m = t2();
        let t = quantum_derham_table::<HLaurent<GRat>>(&m, 1, 3, Exec::Sequential).unwrap();
        let v = derham_report(&m, &t, 3).unwrap();
        assert_eq!(v["total_rank"], json!(4));
        assert_eq!(v["torsion_free"], json!(true));
        assert_eq!(v["modes"][0]["mode"], json!([0, 0]));
        assert!(derham_latex(&t).starts_with("\\begin{tabular}{cc}"));
    }

    #[test]
    fn factor_strings() {
        assert_eq!(factor_string(&Factor::Linear(Rat::from(2))), "λ - 2");
        assert_eq!(factor_string(&Factor::Linear(Rat::from(-1))), "λ + 1");
        let q = Factor::Quadratic { b: Rat::from(-4), c: Rat::new(11, 4), discriminant: Rat::from(5) };
        assert_eq!(factor_string(&q), "λ^2 - 4λ + 11/4");
    }

    #[test]
    fn lefschetz_report_n1() {
        let v = lefschetz_report(1, 1);
        assert_eq!(v["commutators_pass"], json!(true));
        assert_eq!(v["hard_lefschetz_holds"], json!(true));
        assert_eq!(v["spectra"][1]["m_h"]["det"], json!("1/1"));
    }

    #[test]
    fn zero_connection_report_is_zero() {
        let m = t2();
        let v = chern_report(&m, &QConnection::zero(2, 2));
        assert_eq!(v["curvature"], json!([[[], []], [[], []]]));
        assert!(v["trace_powers"]
            .as_array()
            .unwrap()
            .iter()
            .all(|t| t["form"] == json!([]) && t["closed"] == json!(true)));
    }
}
