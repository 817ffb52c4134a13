//! JSON forms of groups, maps, classes, sequences and certificates.
//!
//! Integers are written as decimal strings so that arbitrary precision
//! survives any JSON reader; the `rank` of a group is a plain count. Inputs
//! accept either strings or native integers, and a group may also be given
//! as an expression such as `"Z(2)+Z^3"`. Everything a writer here emits is
//! accepted back by the matching reader.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::abgroup::{AbMap, FinGenAb};
use crate::error::{Error, Result};
use crate::homext::{ExtClass, ShortExactSeq};
use crate::intlin::IntMatrix;
use crate::universal::{Condition, Direction, UniversalCertificate};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| invalid(format!("missing field \"{}\"", key)))
}

pub fn int_to_json(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| invalid(format!("\"{}\" is not an integer", s))),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer")),
        _ => Err(invalid(format!("expected an integer, found {}", v))),
    }
}

fn ints_from_json(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| invalid("expected an array of integers"))?
        .iter()
        .map(int_from_json)
        .collect()
}

fn ints_to_json(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_to_json).collect())
}

pub fn group_to_json(g: &FinGenAb) -> Value {
    json!({ "rank": g.rank(), "factors": ints_to_json(g.factors()) })
}

/// A canonical `{"rank", "factors"}` object or a group expression.
pub fn group_from_json(v: &Value) -> Result<FinGenAb> {
    match v {
        Value::String(s) => FinGenAb::parse(s),
        Value::Object(_) => {
            let rank = int_from_json(field(v, "rank")?)?;
            let rank = usize::try_from(&rank).map_err(|_| invalid("rank out of range"))?;
            FinGenAb::new(rank, ints_from_json(field(v, "factors")?)?)
        }
        _ => Err(invalid("expected a group object or expression")),
    }
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_dense().iter().map(|r| ints_to_json(r)).collect())
}

/// Rows of integers; `cols` shapes a matrix with no rows.
pub fn matrix_from_json(v: &Value, cols: usize) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| invalid("expected a matrix as an array of rows"))?
        .iter()
        .map(ints_from_json)
        .collect::<Result<Vec<_>>>()?;
    let cols = rows.first().map_or(cols, |r| r.len());
    IntMatrix::from_dense(rows, cols)
}

pub fn map_to_json(f: &AbMap) -> Value {
    json!({
        "source": group_to_json(f.source()),
        "target": group_to_json(f.target()),
        "matrix": matrix_to_json(f.matrix()),
    })
}

pub fn map_from_json(v: &Value) -> Result<AbMap> {
    let source = group_from_json(field(v, "source")?)?;
    let target = group_from_json(field(v, "target")?)?;
    let matrix = matrix_from_json(field(v, "matrix")?, source.ngens())?;
    AbMap::new(source, target, matrix)
}

pub fn class_to_json(c: &ExtClass) -> Value {
    json!({
        "A": group_to_json(c.quotient()),
        "B": group_to_json(c.sub()),
        "coords": ints_to_json(c.coords()),
    })
}

pub fn class_from_json(v: &Value) -> Result<ExtClass> {
    let a = group_from_json(field(v, "A")?)?;
    let b = group_from_json(field(v, "B")?)?;
    ExtClass::new(a, b, ints_from_json(field(v, "coords")?)?)
}

pub fn seq_to_json(s: &ShortExactSeq) -> Value {
    json!({ "f": map_to_json(s.f()), "g": map_to_json(s.g()) })
}

pub fn seq_from_json(v: &Value) -> Result<ShortExactSeq> {
    ShortExactSeq::new(map_from_json(field(v, "f")?)?, map_from_json(field(v, "g")?)?)
}

fn condition_to_json(c: &Condition) -> Value {
    json!({ "holds": c.holds, "obstruction": group_to_json(&c.obstruction) })
}

/// Summary of a certificate; `full` adds the sequence and the index set.
pub fn certificate_to_json(cert: &UniversalCertificate, full: bool) -> Value {
    let mut m = Map::new();
    let direction = match cert.direction {
        Direction::Extension => "extension",
        Direction::Coextension => "co-extension",
    };
    m.insert("direction".into(), json!(direction));
    m.insert("B".into(), group_to_json(&cert.b));
    m.insert("A".into(), group_to_json(&cert.a));
    m.insert("X_size".into(), json!(cert.x.len().to_string()));
    m.insert("middle".into(), group_to_json(cert.sequence.middle()));
    m.insert("degenerate".into(), json!(cert.degenerate));
    m.insert("universal".into(), json!(cert.is_universal()));
    m.insert(
        "conditions".into(),
        json!({
            "a": condition_to_json(&cert.condition_a),
            "b": condition_to_json(&cert.condition_b),
            "c": condition_to_json(&cert.condition_c),
        }),
    );
    if full {
        m.insert("sequence".into(), seq_to_json(&cert.sequence));
        m.insert(
            "X".into(),
            Value::Array(cert.x.iter().map(|c| ints_to_json(c.coords())).collect()),
        );
    }
    Value::Object(m)
}

pub fn error_to_json(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("code".into(), json!(e.code()));
    m.insert("message".into(), json!(e.to_string()));
    if let Some(p) = e.position() {
        m.insert("position".into(), json!(p.to_string()));
    }
    Value::Object(m)
}
