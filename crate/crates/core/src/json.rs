//! JSON wire shapes shared by the CLI and the HTTP service.
//!
//! Reals are written with 17 significant digits (C `%.17g`), which
//! round-trips every `f64` and keeps responses byte-stable.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::graph::{Graph, GraphError};

/// An `f64` serialized with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(format_g17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        f64::deserialize(deserializer).map(Real)
    }
}

/// `%.17g`: 17 significant digits, trailing zeros removed, exponent form
/// below `1e-4` and from `1e17`.
pub fn format_g17(v: f64) -> String {
    const PRECISION: i32 = 17;
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, v)).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `{"n": …, "edges": [[i, j], …]}` with 1-based `i < j` in lexicographic
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().map(|(i, j)| [i + 1, j + 1]).collect(),
        }
    }
}

impl TryFrom<&GraphJson> for Graph {
    type Error = GraphJsonError;

    fn try_from(j: &GraphJson) -> Result<Self, GraphJsonError> {
        let mut edges = Vec::with_capacity(j.edges.len());
        for &[a, b] in &j.edges {
            if a == 0 || b == 0 {
                return Err(GraphJsonError("vertex labels start at 1".into()));
            }
            edges.push((a - 1, b - 1));
        }
        Graph::from_edges(j.n, edges).map_err(GraphJsonError::from)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid graph JSON: {0}")]
pub struct GraphJsonError(pub String);

impl From<GraphError> for GraphJsonError {
    fn from(e: GraphError) -> Self {
        Self(e.to_string())
    }
}

/// Parses a graph JSON document.
pub fn graph_from_json(text: &str) -> Result<Graph, GraphJsonError> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| GraphJsonError(e.to_string()))?;
    Graph::try_from(&j)
}
