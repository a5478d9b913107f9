//! JSON and CSV encodings. Every number travels as an exact `"p/q"` string.

use serde_json::{json, Map, Value};

use crate::birkhoff::BirkhoffDecomposition;
use crate::error::{Error, Result};
use crate::linalg::{Permutation, RMatrix, RVector};
use crate::matrix::{FailReason, MajorizationVerdict, Outcome};
use crate::preservers::{CsForm, OperatorGrid, PreserverForm, VectorOperator, ZeroSumForm};
use crate::propcheck::{Counterexample, FuzzReport, Operator, SuiteReport};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::reduce::{ReductionCertificate, ZeroOneBridge};

pub const SCHEMA: &str = "majorkit/1";

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

/// Accepts `"p/q"` strings and JSON integers. Floats are rejected.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        Value::Number(n) => Err(Error::ParseRational {
            input: n.to_string(),
            reason: "decimal notation is not accepted; write the value as p/q".into(),
        }),
        other => Err(parse_err(format!("expected a rational, got {other}"))),
    }
}

pub fn vector_to_json(v: &RVector) -> Value {
    json!({ "len": v.len(), "data": v.iter().map(rational_to_json).collect::<Vec<_>>() })
}

/// `{"len": n, "data": [...]}` or a bare array.
pub fn vector_from_json(v: &Value) -> Result<RVector> {
    let data = match v {
        Value::Array(_) => v,
        Value::Object(o) => o.get("data").ok_or_else(|| parse_err("vector object needs \"data\""))?,
        _ => return Err(parse_err("expected a vector")),
    };
    let arr = data
        .as_array()
        .ok_or_else(|| parse_err("vector data must be an array"))?;
    let out = RVector::try_new(arr.iter().map(rational_from_json).collect::<Result<_>>()?)?;
    if let Some(len) = v.get("len") {
        if len.as_u64() != Some(out.len() as u64) {
            return Err(parse_err(format!("declared len {len} but {} entries", out.len())));
        }
    }
    Ok(out)
}

pub fn matrix_to_json(a: &RMatrix) -> Value {
    let data: Vec<Value> = (0..a.rows())
        .map(|i| Value::Array(a.row_slice(i).iter().map(rational_to_json).collect()))
        .collect();
    json!({ "rows": a.rows(), "cols": a.cols(), "data": data })
}

/// `{"rows", "cols", "data": [[...]]}` or a bare array of rows.
pub fn matrix_from_json(v: &Value) -> Result<RMatrix> {
    let data = match v {
        Value::Array(_) => v,
        Value::Object(o) => o.get("data").ok_or_else(|| parse_err("matrix object needs \"data\""))?,
        _ => return Err(parse_err("expected a matrix")),
    };
    let rows = data
        .as_array()
        .ok_or_else(|| parse_err("matrix data must be an array of rows"))?;
    let parsed: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("each matrix row must be an array"))?
                .iter()
                .map(rational_from_json)
                .collect()
        })
        .collect::<Result<_>>()?;
    let a = RMatrix::from_rows(parsed)?;
    for (key, want) in [("rows", a.rows()), ("cols", a.cols())] {
        if let Some(d) = v.get(key) {
            if d.as_u64() != Some(want as u64) {
                return Err(parse_err(format!("declared {key} {d} but data has {want}")));
            }
        }
    }
    Ok(a)
}

/// One row per line, comma separated. Blank lines and `#` comments are skipped.
pub fn matrix_from_csv(text: &str) -> Result<RMatrix> {
    let rows: Vec<Vec<Rational>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split(',').map(parse_rational).collect())
        .collect::<Result<_>>()?;
    RMatrix::from_rows(rows)
}

pub fn matrix_to_csv(a: &RMatrix) -> String {
    let mut out = String::new();
    for i in 0..a.rows() {
        let row: Vec<String> = a.row_slice(i).iter().map(format_rational).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Reads a matrix from JSON or, failing that, CSV.
pub fn matrix_from_text(text: &str) -> Result<RMatrix> {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => matrix_from_json(&v),
        Err(_) => matrix_from_csv(text),
    }
}

/// Reads a vector from JSON, or CSV given as one row or one column.
pub fn vector_from_text(text: &str) -> Result<RVector> {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => vector_from_json(&v),
        Err(_) => {
            let m = matrix_from_csv(text)?;
            match m.shape() {
                (1, _) => Ok(m.row(0)),
                (_, 1) => Ok(m.column(0)),
                (r, c) => Err(parse_err(format!("expected one row or column, got {r}x{c}"))),
            }
        }
    }
}

/// One-based images: `map[j] = σ(j+1)`.
pub fn permutation_to_json(p: &Permutation) -> Value {
    Value::Array(p.as_map().iter().map(|&x| json!(x + 1)).collect())
}

pub fn permutation_from_json(v: &Value) -> Result<Permutation> {
    let arr = v.as_array().ok_or_else(|| parse_err("permutation must be an array"))?;
    let map = arr
        .iter()
        .map(|x| {
            x.as_u64()
                .filter(|&k| k >= 1)
                .map(|k| k as usize - 1)
                .ok_or_else(|| parse_err("permutation entries are 1-based integers"))
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::from_map(map)
}

/// `{"n", "m", "blocks": [[matrix]]}`, `{"n", "m", "vectorized": matrix}`
/// or `{"vecop": matrix}`.
pub fn operator_from_json(v: &Value) -> Result<Operator> {
    if let Some(x) = v.get("vecop") {
        return Ok(Operator::Vector(VectorOperator::new(matrix_from_json(x)?)?));
    }
    if let Some(big) = v.get("vectorized") {
        let dim = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| parse_err(format!("vectorized operator needs \"{k}\"")))
        };
        return Ok(Operator::Grid(OperatorGrid::from_vectorized(
            dim("n")?,
            dim("m")?,
            &matrix_from_json(big)?,
        )?));
    }
    let blocks = v
        .get("blocks")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("operator needs \"blocks\", \"vectorized\" or \"vecop\""))?;
    let grid: Vec<Vec<RMatrix>> = blocks
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err("each block row must be an array"))?
                .iter()
                .map(matrix_from_json)
                .collect()
        })
        .collect::<Result<_>>()?;
    let g = OperatorGrid::new(grid)?;
    for (key, want) in [("n", g.n()), ("m", g.m())] {
        if let Some(d) = v.get(key) {
            if d.as_u64() != Some(want as u64) {
                return Err(parse_err(format!("declared {key} {d} but blocks give {want}")));
            }
        }
    }
    Ok(Operator::Grid(g))
}

pub fn operator_to_json(op: &Operator) -> Value {
    match op {
        Operator::Vector(v) => json!({ "vecop": matrix_to_json(&v.matrix) }),
        Operator::Grid(g) => grid_to_json(g),
    }
}

pub fn grid_to_json(g: &OperatorGrid) -> Value {
    let blocks: Vec<Value> = g
        .blocks()
        .iter()
        .map(|row| Value::Array(row.iter().map(matrix_to_json).collect()))
        .collect();
    json!({ "n": g.n(), "m": g.m(), "blocks": blocks })
}

/// Adds the schema key to an object.
pub fn with_schema(mut v: Value) -> Value {
    if let Value::Object(o) = &mut v {
        let mut out = Map::new();
        out.insert("schema".into(), json!(SCHEMA));
        out.append(o);
        return Value::Object(out);
    }
    v
}

pub fn verdict_to_json(v: &MajorizationVerdict) -> Value {
    let mut o = Map::new();
    o.insert("relation".into(), json!(v.relation.as_str()));
    match &v.outcome {
        Outcome::Holds { witness } => {
            o.insert("result".into(), json!("holds"));
            o.insert("witness".into(), matrix_to_json(witness));
        }
        Outcome::Fails { reason } => {
            o.insert("result".into(), json!("fails"));
            let r = match reason {
                FailReason::ColumnSums { column } => json!({ "kind": "column-sums", "column": column + 1 }),
                FailReason::Certificate { y } => json!({ "kind": "farkas", "certificate": vector_to_json(y) }),
                FailReason::RowCertificate { row, y } => {
                    json!({ "kind": "row-farkas", "row": row + 1, "certificate": vector_to_json(y) })
                }
                FailReason::RowMultisets => json!({ "kind": "row-multisets" }),
            };
            o.insert("reason".into(), r);
        }
        Outcome::Refuted { direction } => {
            o.insert("result".into(), json!("refuted"));
            o.insert("direction".into(), vector_to_json(direction));
        }
        Outcome::NotRefuted { trials } => {
            o.insert("result".into(), json!("not-refuted"));
            o.insert("trials".into(), json!(trials));
        }
    }
    Value::Object(o)
}

pub fn certificate_to_json(c: &ReductionCertificate) -> Value {
    let mut o = Map::new();
    o.insert("method".into(), json!(c.method.as_str()));
    o.insert(
        "anchor".into(),
        json!(match c.anchor {
            crate::reduce::Anchor::A => "A",
            crate::reduce::Anchor::B => "B",
        }),
    );
    o.insert("lambda".into(), rational_to_json(&c.lambda));
    if let Some(mu) = &c.mu {
        o.insert("mu".into(), rational_to_json(mu));
    }
    if let Some(v) = &c.v {
        o.insert("v".into(), vector_to_json(v));
    }
    if let Some(d) = &c.d {
        o.insert("D".into(), matrix_to_json(d));
    }
    Value::Object(o)
}

pub fn decomposition_to_json(d: &BirkhoffDecomposition) -> Value {
    let terms: Vec<Value> = d
        .terms
        .iter()
        .map(|(w, p)| json!({ "weight": rational_to_json(w), "permutation": permutation_to_json(p) }))
        .collect();
    json!({ "count": terms.len(), "terms": terms })
}

fn zero_sum_to_json(z: &ZeroSumForm) -> Value {
    let mut o = json!({
        "v": vector_to_json(&z.v),
        "lambda": rational_to_json(&z.lambda),
        "P": permutation_to_json(&z.p),
    });
    if let Some((v, l, p)) = &z.alternate {
        o["alternate"] = json!({
            "v": vector_to_json(v),
            "lambda": rational_to_json(l),
            "P": permutation_to_json(p),
        });
    }
    o
}

fn cs_to_json(c: &CsForm) -> Value {
    json!({
        "S": c.s.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "P": permutation_to_json(&c.p),
        "R": matrix_to_json(&c.r),
        "constraint_ok": c.constraint_ok,
    })
}

pub fn form_to_json(f: &PreserverForm) -> Value {
    let params = match f {
        PreserverForm::Ando1 { s } => json!({ "s": vector_to_json(s) }),
        PreserverForm::Ando2 { alpha, beta, p } => json!({
            "alpha": rational_to_json(alpha),
            "beta": rational_to_json(beta),
            "P": permutation_to_json(p),
        }),
        PreserverForm::ZeroSum(z) => zero_sum_to_json(z),
        PreserverForm::LiPoon1 { s } => json!({ "S": s.iter().map(matrix_to_json).collect::<Vec<_>>() }),
        PreserverForm::LiPoon2 { r, s, p } => json!({
            "R": matrix_to_json(r),
            "S": matrix_to_json(s),
            "P": permutation_to_json(p),
        }),
        PreserverForm::Cs(c) => cs_to_json(c),
    };
    json!({ "form": f.tag(), "params": params })
}

pub fn bridge_to_json(b: &ZeroOneBridge) -> Value {
    json!({
        "directional": b.directional,
        "strong": b.strong,
        "permutation": b.permutation,
        "theta_directional": b.theta_directional,
        "theta_strong": b.theta_strong,
        "all_equal": b.all_equal(),
    })
}

pub fn counterexample_to_json(c: &Counterexample) -> Value {
    json!({
        "relation": c.spec.to_string(),
        "A": matrix_to_json(&c.a),
        "B": matrix_to_json(&c.b),
        "image_A": matrix_to_json(&c.image_a),
        "image_B": matrix_to_json(&c.image_b),
        "trial": c.trial,
        "replay_seed": c.replay_seed,
        "transcript": c.transcript,
    })
}

pub fn fuzz_report_to_json(r: &FuzzReport) -> Value {
    json!({
        "trials_run": r.trials_run,
        "battery_size": r.battery_size,
        "counterexample": r.counterexample.as_ref().map(counterexample_to_json),
    })
}

pub fn suite_report_to_json(r: &SuiteReport) -> Value {
    let props: Vec<Value> = r
        .properties
        .iter()
        .map(|p| {
            json!({
                "name": p.name,
                "cases": p.cases,
                "failures": p.failures,
                "passed": p.passed(),
                "replay_seed": p.replay_seed,
                "first_failure": p.first_failure,
            })
        })
        .collect();
    json!({ "passed": r.passed(), "properties": props })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn matrix_json_forms() {
        let a = RMatrix::from_rows(vec![vec![frac(1, 2), int(-3)], vec![int(0), frac(7, 3)]]).unwrap();
        let v = matrix_to_json(&a);
        assert_eq!(v["data"][0][0], json!("1/2"));
        assert_eq!(matrix_from_json(&v).unwrap(), a);
        let bare: Value = serde_json::from_str(r#"[["1/2", -3], [0, "7/3"]]"#).unwrap();
        assert_eq!(matrix_from_json(&bare).unwrap(), a);
        let float: Value = serde_json::from_str("[[0.5]]").unwrap();
        assert!(matrix_from_json(&float).unwrap_err().to_string().contains("p/q"));
        let ragged: Value = serde_json::from_str("[[1, 2], [3]]").unwrap();
        assert!(matches!(matrix_from_json(&ragged), Err(Error::ShapeMismatch { .. })));
        let lying: Value = serde_json::from_str(r#"{"rows": 3, "cols": 1, "data": [[1]]}"#).unwrap();
        assert!(matrix_from_json(&lying).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let a = matrix_from_csv("1/2, 1/2\n# comment\n\n1, 0\n").unwrap();
        assert_eq!(
            a,
            RMatrix::from_rows(vec![vec![frac(1, 2), frac(1, 2)], vec![int(1), int(0)]]).unwrap()
        );
        assert_eq!(matrix_from_csv(&matrix_to_csv(&a)).unwrap(), a);
        assert_eq!(
            matrix_from_text("1,2\n3,4").unwrap(),
            RMatrix::from_i64(&[&[1, 2], &[3, 4]])
        );
        assert_eq!(vector_from_text("1\n2\n3").unwrap(), RVector::from_i64(&[1, 2, 3]));
    }

    #[test]
    fn operator_json_forms() {
        let g = crate::preservers::last_example_operator();
        let op = Operator::Grid(g.clone());
        assert_eq!(operator_from_json(&operator_to_json(&op)).unwrap(), op);
        let vec = json!({ "n": 2, "m": 2, "vectorized": matrix_to_json(&g.to_vectorized()) });
        assert_eq!(operator_from_json(&vec).unwrap(), op);
        let vo = json!({ "vecop": [[1, 0], [0, 1]] });
        assert!(matches!(operator_from_json(&vo).unwrap(), Operator::Vector(_)));
        assert!(operator_from_json(&json!({})).is_err());
    }

    #[test]
    fn permutation_is_one_based() {
        let p = Permutation::from_map(vec![1, 0, 2]).unwrap();
        assert_eq!(permutation_to_json(&p), json!([2, 1, 3]));
        assert_eq!(permutation_from_json(&json!([2, 1, 3])).unwrap(), p);
        assert!(permutation_from_json(&json!([0, 1])).is_err());
    }

    #[test]
    fn schema_comes_first() {
        let v = with_schema(json!({ "a": 1 }));
        assert_eq!(v["schema"], json!(SCHEMA));
        assert_eq!(v.as_object().unwrap().keys().next().unwrap(), "schema");
    }

    proptest! {
        #[test]
        fn matrix_round_trip(n in 1usize..4, m in 1usize..4, e in prop::collection::vec((-50i64..50, 1i64..9), 16)) {
            let a = RMatrix::from_fn(n, m, |i, j| { let (p, q) = e[i * m + j]; frac(p, q) });
            prop_assert_eq!(matrix_from_json(&matrix_to_json(&a)).unwrap(), a.clone());
            prop_assert_eq!(matrix_from_csv(&matrix_to_csv(&a)).unwrap(), a);
        }
    }
}
