//! JSON encoding of scalars, forms and input files.
//!
//! Indices in files are 1-based. Rationals are `"p/q"` strings (plain
//! integers are accepted on input), Gaussian rationals `{"re", "im"}`.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::calculus::{bivector_from_entries, AffineModel, PoissonModel, Space, TorusModel};
use crate::chern_weil::QConnection;
use crate::equivariant::GroupAction;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Form, Symplectic};
use crate::linalg::Matrix;
use crate::scalar::{CoeffRing, FourierCoeff, GRat, HLaurent, HPoly, PolyCoeff, Rat, Ring};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub trait JsonCoeff: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonCoeff for Rat {
    fn to_json(&self) -> Value {
        Value::String(self.to_fraction_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(n) => n
                .as_i64()
                .map(Rat::from)
                .ok_or_else(|| parse_err(format!("rational must be an integer or \"p/q\" string, got {n}"))),
            other => Err(parse_err(format!("expected rational, got {other}"))),
        }
    }
}

impl JsonCoeff for GRat {
    fn to_json(&self) -> Value {
        json!({"re": self.re.to_json(), "im": self.im.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(m) if m.contains_key("re") || m.contains_key("im") => {
                let part = |k: &str| m.get(k).map_or(Ok(Rat::zero()), Rat::from_json);
                Ok(GRat::new(part("re")?, part("im")?))
            }
            other => Rat::from_json(other).map(GRat::real),
        }
    }
}

/// `{"poly": [[[exponents], rational], …]}` or a constant rational.
impl JsonCoeff for PolyCoeff {
    fn to_json(&self) -> Value {
        match self.as_constant() {
            Some(c) => c.to_json(),
            None => json!({"poly": self.terms().map(|(e, c)| json!([e, c.to_json()])).collect::<Vec<_>>()}),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v.get("poly") {
            Some(Value::Array(terms)) => {
                let mut out = Vec::new();
                for t in terms {
                    let pair = t
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| parse_err("poly term must be [exponents, coeff]"))?;
                    let exps: Vec<u32> = serde_json::from_value(pair[0].clone())
                        .map_err(|e| parse_err(format!("poly exponents: {e}")))?;
                    out.push((exps, Rat::from_json(&pair[1])?));
                }
                Ok(PolyCoeff::from_terms(out))
            }
            Some(_) => Err(parse_err("\"poly\" must be a list")),
            None => Rat::from_json(v).map(PolyCoeff::constant),
        }
    }
}

/// `{"fourier": [[[k₁, …], scalar], …]}` or a constant scalar.
impl JsonCoeff for FourierCoeff {
    fn to_json(&self) -> Value {
        match self.as_constant() {
            Some(c) => c.to_json(),
            None => json!({"fourier": self.modes().map(|(k, c)| json!([k, c.to_json()])).collect::<Vec<_>>()}),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v.get("fourier") {
            Some(Value::Array(terms)) => {
                let mut out = Vec::new();
                for t in terms {
                    let pair = t
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| parse_err("fourier term must be [mode, coeff]"))?;
                    let k: Vec<i64> =
                        serde_json::from_value(pair[0].clone()).map_err(|e| parse_err(format!("fourier mode: {e}")))?;
                    out.push((k, GRat::from_json(&pair[1])?));
                }
                Ok(FourierCoeff::from_modes(out))
            }
            Some(_) => Err(parse_err("\"fourier\" must be a list")),
            None => GRat::from_json(v).map(FourierCoeff::constant),
        }
    }
}

pub fn hpoly_json<F: JsonCoeff + crate::scalar::Field>(p: &HPoly<F>) -> Value {
    Value::Array(p.terms().map(|(j, c)| json!([j, c.to_json()])).collect())
}

pub fn hlaurent_json<F: JsonCoeff + crate::scalar::Field>(p: &HLaurent<F>) -> Value {
    Value::Array(p.terms().map(|(j, c)| json!([j, c.to_json()])).collect())
}

pub fn form_to_json<C: JsonCoeff + Ring>(f: &Form<C>) -> Value {
    Value::Array(
        f.terms()
            .map(|(j, b, c)| {
                let idx: Vec<usize> = b.indices().map(|i| i + 1).collect();
                json!({"indices": idx, "h": j, "coeff": c.to_json()})
            })
            .collect(),
    )
}

pub fn form_from_json<C: JsonCoeff + Ring>(dim: usize, v: &Value) -> Result<Form<C>> {
    let terms = v.as_array().ok_or_else(|| parse_err("form must be a list of terms"))?;
    let mut f = Form::zero(dim);
    for t in terms {
        let idx: Vec<usize> = t
            .get("indices")
            .map(|x| serde_json::from_value(x.clone()))
            .transpose()
            .map_err(|e| parse_err(format!("form indices: {e}")))?
            .unwrap_or_default();
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(format!("form indices must be strictly increasing: {idx:?}")));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim });
        }
        let j = t.get("h").map_or(Some(0), Value::as_i64).ok_or_else(|| parse_err("form \"h\" must be an integer"))?;
        let c = C::from_json(t.get("coeff").ok_or_else(|| parse_err("form term without \"coeff\""))?)?;
        let b = Blade::from_indices(&idx.iter().map(|i| i - 1).collect::<Vec<_>>())
            .ok_or_else(|| parse_err("repeated form index"))?;
        f.add_term(j, b, &c);
    }
    Ok(f)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    space: String,
    dim: usize,
    #[serde(default)]
    bivector: Option<Vec<(usize, usize, Value)>>,
    #[serde(default)]
    symplectic: Option<Value>,
    #[serde(default)]
    complex: bool,
}

/// A parsed model file.
#[derive(Clone, Debug)]
pub enum AnyModel {
    Torus(TorusModel),
    Affine(AffineModel),
}

impl AnyModel {
    pub fn space(&self) -> Space {
        match self {
            AnyModel::Torus(m) => m.space,
            AnyModel::Affine(m) => m.space,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyModel::Torus(m) => m.dim(),
            AnyModel::Affine(m) => m.dim(),
        }
    }

    pub fn torus(&self) -> Result<&TorusModel> {
        match self {
            AnyModel::Torus(m) => Ok(m),
            AnyModel::Affine(_) => Err(Error::Precondition("this computation needs a torus model".into())),
        }
    }
}

fn parse_symplectic(dim: usize, v: &Value) -> Result<Symplectic> {
    match v {
        Value::String(s) if s == "darboux" => {
            if !dim.is_multiple_of(2) {
                return Err(Error::BadSymplectic);
            }
            Ok(Symplectic::darboux(dim / 2))
        }
        Value::Array(rows) => {
            let rows: Vec<Vec<Rat>> = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| parse_err("symplectic matrix rows must be lists"))?
                        .iter()
                        .map(Rat::from_json)
                        .collect()
                })
                .collect::<Result<_>>()?;
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(parse_err("symplectic matrix must be dim × dim"));
            }
            Symplectic::new(Matrix::from_rows(rows))
        }
        other => Err(parse_err(format!("\"symplectic\" must be \"darboux\" or a matrix, got {other}"))),
    }
}

fn build_model<C: JsonCoeff + CoeffRing + std::fmt::Display>(
    space: Space,
    file: &ModelFile,
) -> Result<PoissonModel<C>> {
    let symplectic = file.symplectic.as_ref().map(|v| parse_symplectic(file.dim, v)).transpose()?;
    let entries = match &file.bivector {
        Some(list) => {
            let mut out = Vec::new();
            for (i, j, c) in list {
                if *i == 0 || *j == 0 || *i > file.dim || *j > file.dim || i == j {
                    return Err(parse_err(format!("bivector entry ({i}, {j}) out of range for dim {}", file.dim)));
                }
                out.push((i - 1, j - 1, C::from_json(c)?));
            }
            Some(out)
        }
        None => None,
    };
    match (entries, symplectic) {
        (None, Some(s)) => PoissonModel::symplectic(space, s, file.complex),
        (Some(e), s) => PoissonModel::new(space, bivector_from_entries(file.dim, &e), s, file.complex),
        (None, None) => Err(parse_err("model needs a bivector or a symplectic form")),
    }
}

pub fn parse_model(text: &str) -> Result<AnyModel> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| parse_err(format!("model file: {e}")))?;
    if file.dim == 0 || file.dim > crate::exterior::MAX_DIM {
        return Err(parse_err(format!("unsupported dimension {}", file.dim)));
    }
    match file.space.as_str() {
        "torus" => build_model::<FourierCoeff>(Space::Torus, &file).map(AnyModel::Torus),
        "affine" => build_model::<PolyCoeff>(Space::Affine, &file).map(AnyModel::Affine),
        other => Err(parse_err(format!("unknown space {other:?}"))),
    }
}

pub fn model_to_json<C: JsonCoeff + CoeffRing>(model: &PoissonModel<C>) -> Value {
    let w = model.bivector();
    let mut entries = Vec::new();
    for i in 0..model.dim() {
        for j in i + 1..model.dim() {
            if !w[(i, j)].is_zero() {
                entries.push(json!([i + 1, j + 1, w[(i, j)].to_json()]));
            }
        }
    }
    let mut out = json!({
        "space": model.space.to_string(),
        "dim": model.dim(),
        "bivector": entries,
        "complex": model.has_complex_structure(),
    });
    if let Some(s) = model.symplectic_structure() {
        let m = s.matrix();
        out["symplectic"] =
            Value::Array((0..m.nrows()).map(|i| Value::Array(m.row(i).iter().map(Rat::to_json).collect())).collect());
    }
    out
}

pub fn parse_connection<C: JsonCoeff + CoeffRing>(dim: usize, text: &str) -> Result<QConnection<C>> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct File {
        rank: usize,
        theta: Vec<Vec<Value>>,
    }
    let file: File = serde_json::from_str(text).map_err(|e| parse_err(format!("connection file: {e}")))?;
    if file.theta.len() != file.rank || file.theta.iter().any(|r| r.len() != file.rank) {
        return Err(parse_err(format!("connection matrix must be {0} × {0}", file.rank)));
    }
    let theta = file
        .theta
        .iter()
        .map(|row| row.iter().map(|v| form_from_json(dim, v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    QConnection::new(theta)
}

pub fn parse_action<C: JsonCoeff + CoeffRing>(dim: usize, text: &str) -> Result<GroupAction<C>> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct File {
        generators: Vec<Vec<Value>>,
    }
    let file: File = serde_json::from_str(text).map_err(|e| parse_err(format!("action file: {e}")))?;
    let mut gens = Vec::new();
    for g in &file.generators {
        if g.len() != dim {
            return Err(Error::DimensionMismatch(g.len(), dim));
        }
        gens.push(g.iter().map(C::from_json).collect::<Result<Vec<_>>>()?);
    }
    Ok(GroupAction::new(gens))
}

/// `{"n": d, …}` with integer keys rendered as strings.
pub fn degree_map<V: Into<Value> + Clone>(m: &BTreeMap<i64, V>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), v.clone().into())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_round_trips() {
        let r = Rat::new(-3, 4);
        assert_eq!(r.to_json(), json!("-3/4"));
        assert_eq!(Rat::from_json(&json!(5)).unwrap(), Rat::from(5));
        let z = GRat::new(Rat::new(1, 2), Rat::from(-1));
        assert_eq!(GRat::from_json(&z.to_json()).unwrap(), z);
        let f = FourierCoeff::from_modes([(vec![1, -2], z.clone()), (vec![], GRat::real(Rat::from(3)))]);
        assert_eq!(FourierCoeff::from_json(&f.to_json()).unwrap(), f);
        let p = PolyCoeff::from_terms([(vec![0, 2], Rat::new(2, 3)), (vec![1], Rat::from(1))]);
        assert_eq!(PolyCoeff::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(
            hpoly_json(&HPoly::from_coeffs(vec![Rat::from(1), Rat::zero(), Rat::from(2)])),
            json!([[0, "1/1"], [2, "2/1"]])
        );
        assert!(Rat::from_json(&json!("1/0")).is_err());
    }

    #[test]
    fn form_round_trip_is_one_based() {
        let f = Form::<Rat>::basis(3, &[0, 2]).shift_h(1) + Form::scalar(3, Rat::from(2));
        let v = form_to_json(&f);
        assert_eq!(v[1]["indices"], json!([1, 3]));
        assert_eq!(form_from_json::<Rat>(3, &v).unwrap(), f);
        assert!(form_from_json::<Rat>(3, &json!([{"indices": [2, 1], "coeff": 1}])).is_err());
        assert!(form_from_json::<Rat>(3, &json!([{"indices": [4], "coeff": 1}])).is_err());
    }

    #[test]
    fn model_files() {
        let t2 = parse_model(r#"{"space": "torus", "dim": 2, "symplectic": "darboux"}"#).unwrap();
        let m = t2.torus().unwrap();
        assert_eq!(m.bivector()[(0, 1)], FourierCoeff::constant(GRat::real(Rat::from(-1))));
        let again = parse_model(&model_to_json(m).to_string()).unwrap();
        assert_eq!(again.torus().unwrap().bivector(), m.bivector());
        let so3 = r#"{"space": "affine", "dim": 3, "bivector": [[1, 2, {"poly": [[[0, 0, 1], 1]]}], [1, 3, {"poly": [[[0, 1], -1]]}], [2, 3, {"poly": [[[1], 1]]}]]}"#;
        assert!(matches!(parse_model(so3).unwrap(), AnyModel::Affine(_)));
        let bad_jacobi = r#"{"space": "affine", "dim": 3, "bivector": [[1, 2, {"poly": [[[0, 1], 1]]}], [1, 3, {"poly": [[[0, 0, 1], 1]]}], [2, 3, {"poly": [[[1], 1]]}]]}"#;
        assert!(matches!(parse_model(bad_jacobi), Err(Error::JacobiFailure { .. })));
        assert!(parse_model(r#"{"space": "torus", "dim": 3, "symplectic": "darboux"}"#).is_err());
        assert!(parse_model("{not json").is_err());
        assert!(parse_model(r#"{"space": "sphere", "dim": 2, "symplectic": "darboux"}"#).is_err());
    }

    #[test]
    fn connection_and_action_files() {
        let c: QConnection<FourierCoeff> =
            parse_connection(2, r#"{"rank": 1, "theta": [[[{"indices": [1], "coeff": {"fourier": [[[0, 1], 1]]}}]]]}"#)
                .unwrap();
        assert_eq!(c.rank(), 1);
        assert!(parse_connection::<FourierCoeff>(2, r#"{"rank": 2, "theta": [[[]]]}"#).is_err());
        let a: GroupAction<FourierCoeff> = parse_action(2, r#"{"generators": [[1, 0]]}"#).unwrap();
        assert_eq!(a.translation_vectors().unwrap(), vec![vec![Rat::from(1), Rat::zero()]]);
        assert!(parse_action::<FourierCoeff>(2, r#"{"generators": [[1]]}"#).is_err());
    }
}
