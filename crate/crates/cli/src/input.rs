use std::io::Read;

use matschur::field::FieldSpec;
use matschur::matroid::{from_graph, Arrangement};
use serde::Deserialize;
use serde_json::{json, Value};

/// Failure that maps to exit code 2.
#[derive(Debug)]
pub struct InputError {
    pub kind: &'static str,
    pub message: String,
}

impl InputError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        InputError { kind, message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message } })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Graph {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    name: String,
    #[serde(default)]
    matrix: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    graph: Option<Graph>,
    #[serde(default)]
    fields: Option<Vec<String>>,
}

/// A named arrangement plus the fields its file asks for.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub arrangement: Arrangement,
    pub fields: Vec<FieldSpec>,
}

pub fn parse_instance(text: &str) -> Result<Instance, InputError> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| InputError::new("parse", e.to_string()))?;
    let arrangement = match (raw.matrix, raw.graph) {
        (Some(m), None) => {
            let width = m.first().map_or(0, Vec::len);
            if m.iter().any(|r| r.len() != width) {
                return Err(InputError::new("parse", "matrix rows have different lengths"));
            }
            Arrangement::from_rows(&m)
        }
        (None, Some(g)) => {
            let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e[0], e[1])).collect();
            from_graph(g.vertices, &edges)
        }
        _ => return Err(InputError::new("parse", "exactly one of \"matrix\" and \"graph\" is required")),
    }
    .map_err(|e| InputError::new("arrangement", e.to_string()))?;
    let fields = raw
        .fields
        .unwrap_or_default()
        .iter()
        .map(|f| f.parse::<FieldSpec>().map_err(|e| InputError::new("field", e.to_string())))
        .collect::<Result<_, _>>()?;
    Ok(Instance { name: raw.name, arrangement, fields })
}

/// Reads a file, or standard input for `-`.
pub fn read_source(path: &str) -> Result<String, InputError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| InputError::new("io", e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| InputError::new("io", format!("{path}: {e}")))
    }
}

pub fn load(path: &str) -> Result<Instance, InputError> {
    parse_instance(&read_source(path)?)
}

/// Comma-separated 1-based labels, e.g. `3,4`; empty for the empty set.
pub fn parse_labels(s: &str) -> Result<Vec<usize>, InputError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(InputError::new("parse", format!("bad element label `{t}`"))),
        })
        .collect()
}
