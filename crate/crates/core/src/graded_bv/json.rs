//! Plain JSON descriptions of [`GradedBVData`] and [`GysinData`].
//!
//! ```json
//! { "schema": 1, "kind": "bv",
//!   "degrees": [0, -1],
//!   "product": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]],
//!   "operator": [[0, 1, 1]] }
//! ```
//!
//! `product` lists `[i, j, k, c]` for `e_i * e_j = ... + c e_k`. Operator
//! matrices list `[row, col, c]`, i.e. the image of basis vector `col` has
//! coefficient `c` on `row`. Coefficients are JSON integers or strings such
//! as `"-3/4"`. A Gysin description has `"kind": "gysin"`, the algebra under
//! `"algebra"` (same fields, without `schema`/`kind`), `"h_degrees"`, and the
//! maps `"q"`, `"c"`, `"t"` in the operator format.

use serde_json::{json, Value};
use thiserror::Error;

use super::{BvError, GradedBVData, GysinData, GysinError};
use crate::linalg::{q, Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("invalid description: {0}")]
    Schema(String),
    #[error(transparent)]
    Bv(#[from] BvError),
    #[error(transparent)]
    Gysin(#[from] GysinError),
}

fn schema(m: impl Into<String>) -> LoadError {
    LoadError::Schema(m.into())
}

fn coefficient(v: &Value) -> Result<Rational, LoadError> {
    match v {
        Value::Number(n) => n.as_i64().map(q).ok_or_else(|| schema(format!("coefficient {n} is not an integer"))),
        Value::String(s) => {
            let r: Rational = s.trim().parse().map_err(|_| schema(format!("bad rational {s:?}")))?;
            Ok(r)
        }
        other => Err(schema(format!("bad coefficient {other}"))),
    }
}

fn coefficient_json(c: &Rational) -> Value {
    if c.is_integer() {
        if let Ok(n) = c.to_integer().to_string().parse::<i64>() {
            return json!(n);
        }
    }
    json!(c.to_string())
}

fn index(v: &Value, bound: usize, what: &str) -> Result<usize, LoadError> {
    let i = v.as_u64().ok_or_else(|| schema(format!("{what} index must be a non-negative integer")))? as usize;
    if i >= bound {
        return Err(schema(format!("{what} index {i} out of range (size {bound})")));
    }
    Ok(i)
}

fn field<'a>(obj: &'a Value, name: &str) -> Result<&'a Value, LoadError> {
    obj.get(name).ok_or_else(|| schema(format!("missing field {name:?}")))
}

/// Largest basis accepted from a description; operators are stored densely.
pub const MAX_JSON_DIM: usize = 512;

fn degrees(v: &Value) -> Result<Vec<i64>, LoadError> {
    let items = v.as_array().ok_or_else(|| schema("degrees must be an array"))?;
    if items.len() > MAX_JSON_DIM {
        return Err(schema(format!("{} basis elements exceed the limit of {MAX_JSON_DIM}", items.len())));
    }
    items
        .iter()
        .map(|d| d.as_i64().ok_or_else(|| schema("degrees must be integers")))
        .collect()
}

fn matrix(v: &Value, rows: usize, cols: usize, name: &str) -> Result<Matrix, LoadError> {
    let mut m = Matrix::zeros(rows, cols);
    for entry in v.as_array().ok_or_else(|| schema(format!("{name} must be an array")))? {
        let e = entry.as_array().filter(|e| e.len() == 3).ok_or_else(|| schema(format!("{name} entries are [row, col, c]")))?;
        let r = index(&e[0], rows, name)?;
        let c = index(&e[1], cols, name)?;
        m[(r, c)] += coefficient(&e[2])?;
    }
    Ok(m)
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.entries().map(|(r, c, x)| json!([r, c, coefficient_json(x)])).collect())
}

fn check_header(v: &Value, kind: &str) -> Result<(), LoadError> {
    if v.get("schema").and_then(Value::as_u64) != Some(1) {
        return Err(schema("missing or unsupported \"schema\" (expected 1)"));
    }
    match v.get("kind").and_then(Value::as_str) {
        Some(k) if k == kind => Ok(()),
        Some(k) => Err(schema(format!("expected kind {kind:?}, found {k:?}"))),
        None => Err(schema("missing \"kind\"")),
    }
}

fn algebra_from(v: &Value) -> Result<GradedBVData, LoadError> {
    let degs = degrees(field(v, "degrees")?)?;
    let n = degs.len();
    let mut triples = Vec::new();
    for entry in field(v, "product")?.as_array().ok_or_else(|| schema("product must be an array"))? {
        let e = entry.as_array().filter(|e| e.len() == 4).ok_or_else(|| schema("product entries are [i, j, k, c]"))?;
        triples.push((index(&e[0], n, "product")?, index(&e[1], n, "product")?, index(&e[2], n, "product")?, coefficient(&e[3])?));
    }
    let d = match v.get("operator") {
        Some(m) => matrix(m, n, n, "operator")?,
        None => Matrix::zeros(n, n),
    };
    Ok(GradedBVData::new(degs, &triples, d)?)
}

fn algebra_json(a: &GradedBVData) -> Value {
    let product: Vec<Value> =
        a.product_triples().iter().map(|(i, j, k, c)| json!([i, j, k, coefficient_json(c)])).collect();
    json!({ "degrees": a.degrees(), "product": product, "operator": matrix_json(a.operator()) })
}

fn parse(text: &str) -> Result<Value, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::Syntax(e.to_string()))
}

pub fn load_bv_json(text: &str) -> Result<GradedBVData, LoadError> {
    let v = parse(text)?;
    check_header(&v, "bv")?;
    algebra_from(&v)
}

pub fn load_gysin_json(text: &str) -> Result<GysinData, LoadError> {
    let v = parse(text)?;
    check_header(&v, "gysin")?;
    let b = algebra_from(field(&v, "algebra")?)?;
    let h = degrees(field(&v, "h_degrees")?)?;
    let (nb, nh) = (b.dim(), h.len());
    let qm = matrix(field(&v, "q")?, nh, nb, "q")?;
    let cm = matrix(field(&v, "c")?, nh, nh, "c")?;
    let tm = matrix(field(&v, "t")?, nb, nh, "t")?;
    Ok(GysinData::new(b, h, qm, cm, tm)?)
}

impl GradedBVData {
    pub fn to_json(&self) -> Value {
        let mut v = algebra_json(self);
        v["schema"] = json!(1);
        v["kind"] = json!("bv");
        v
    }
}

impl GysinData {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "kind": "gysin",
            "algebra": algebra_json(self.bv()),
            "h_degrees": self.h_degrees(),
            "q": matrix_json(self.q()),
            "c": matrix_json(self.c()),
            "t": matrix_json(self.t()),
        })
    }
}
