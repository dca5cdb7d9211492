//! JSON documents: polytopes, operators, and the bundle of both.
//!
//! Rational entries are written as strings (`"5/17"`, `"-1"`); integers are
//! accepted as JSON numbers too. Float entries are JSON numbers.

use std::fs;
use std::io::Read;
use std::path::Path;

use polyindex_core::{Float, Operator, Polytope, Rational, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::error::{CliError, CliResult};

/// JSON encoding of one scalar.
pub trait Codec: Scalar {
    fn encode(&self) -> Value;
    fn decode(v: &Value) -> Result<Self, String>;
}

impl Codec for Rational {
    fn encode(&self) -> Value {
        Value::String(self.to_string())
    }

    fn decode(v: &Value) -> Result<Self, String> {
        match v {
            Value::String(s) => s.parse().map_err(|e: polyindex_core::ParseScalarError| e.to_string()),
            Value::Number(n) => n
                .as_i64()
                .map(Rational::from)
                .ok_or_else(|| format!("{n} is not exact; write rationals as strings like \"p/q\"")),
            other => Err(format!("expected a rational, found {other}")),
        }
    }
}

impl Codec for Float {
    fn encode(&self) -> Value {
        Number::from_f64(self.0).map_or(Value::Null, Value::Number)
    }

    fn decode(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(n) => n.as_f64().map(Float).ok_or_else(|| format!("{n} is not a float")),
            Value::String(s) => Float::parse(s).map_err(|e| e.to_string()),
            other => Err(format!("expected a number, found {other}")),
        }
    }
}

pub fn encode_vec<S: Codec>(v: &[S]) -> Value {
    Value::Array(v.iter().map(Codec::encode).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Rational,
    Float,
}

impl ScalarKind {
    pub fn of<S: Scalar>() -> Self {
        if S::EXACT {
            ScalarKind::Rational
        } else {
            ScalarKind::Float
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    pub dim: usize,
    pub scalar: ScalarKind,
    pub vertices: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDocument {
    pub dim: usize,
    pub scalar: ScalarKind,
    pub matrix: Vec<Vec<Value>>,
}

/// A polytope with an optional witness operator, as written by
/// `family --with-witness`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    pub polytope: PolytopeDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<OperatorDocument>,
}

fn decode_rows<S: Codec>(rows: &[Vec<Value>], width: usize, field: &str) -> CliResult<Vec<Vec<S>>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != width {
                return Err(CliError::input(
                    format!("{field}[{i}]"),
                    format!("expected {width} entries, found {}", row.len()),
                ));
            }
            row.iter()
                .enumerate()
                .map(|(j, v)| S::decode(v).map_err(|m| CliError::input(format!("{field}[{i}][{j}]"), m)))
                .collect()
        })
        .collect()
}

impl PolytopeDocument {
    pub fn from_polytope<S: Codec>(p: &Polytope<S>) -> Self {
        PolytopeDocument {
            dim: p.dim(),
            scalar: ScalarKind::of::<S>(),
            vertices: p.vertices().iter().map(|v| v.iter().map(Codec::encode).collect()).collect(),
        }
    }

    /// Decodes the vertices. In permissive mode repeated and non-extreme
    /// points are dropped and their indices returned.
    pub fn to_polytope<S: Codec>(&self, permissive: bool) -> CliResult<(Polytope<S>, Vec<usize>)> {
        let vertices = decode_rows::<S>(&self.vertices, self.dim, "vertices")?;
        let result = if permissive {
            Polytope::new_permissive(self.dim, vertices)
        } else {
            Polytope::new(self.dim, vertices).map(|p| (p, Vec::new()))
        };
        result.map_err(|e| CliError::from_core("vertices", e))
    }
}

impl OperatorDocument {
    pub fn from_operator<S: Codec>(op: &Operator<S>) -> Self {
        OperatorDocument {
            dim: op.dim(),
            scalar: ScalarKind::of::<S>(),
            matrix: op.rows().iter().map(|r| r.iter().map(Codec::encode).collect()).collect(),
        }
    }

    pub fn to_operator<S: Codec>(&self) -> CliResult<Operator<S>> {
        if self.matrix.len() != self.dim {
            return Err(CliError::input(
                "matrix",
                format!("expected {} rows, found {}", self.dim, self.matrix.len()),
            ));
        }
        let rows = decode_rows::<S>(&self.matrix, self.dim, "matrix")?;
        Operator::new(rows).map_err(|e| CliError::from_core("matrix", e))
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_text(path: &Path) -> CliResult<String> {
    let name = path.display().to_string();
    if name == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::input("<stdin>", e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::input(name, e))
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, source: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::input(source, e))
}

/// A polytope document or a bundle.
pub fn load_polytope(path: &Path) -> CliResult<Bundle> {
    let source = path.display().to_string();
    let value: Value = parse_json(&read_text(path)?, &source)?;
    if value.get("polytope").is_some() {
        serde_json::from_value(value).map_err(|e| CliError::input(source, e))
    } else {
        let polytope = serde_json::from_value(value).map_err(|e| CliError::input(source, e))?;
        Ok(Bundle { polytope, witness: None })
    }
}

/// An operator document, or the witness of a bundle.
pub fn load_operator(path: &Path) -> CliResult<OperatorDocument> {
    let source = path.display().to_string();
    let value: Value = parse_json(&read_text(path)?, &source)?;
    if value.get("polytope").is_some() {
        let bundle: Bundle = serde_json::from_value(value).map_err(|e| CliError::input(&source, e))?;
        bundle.witness.ok_or_else(|| CliError::input(format!("{source}: witness"), "bundle has no witness"))
    } else {
        serde_json::from_value(value).map_err(|e| CliError::input(source, e))
    }
}

/// Entries of a comma-separated point such as `2/3,1/3`.
pub fn parse_point<S: Scalar>(text: &str) -> CliResult<Vec<S>> {
    text.split(',')
        .enumerate()
        .map(|(i, s)| S::parse(s.trim()).map_err(|e| CliError::input(format!("point[{i}]"), e)))
        .collect()
}
