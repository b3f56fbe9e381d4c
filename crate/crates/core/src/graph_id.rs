//! Compact text identifiers for graphs.
//!
//! Layout: `<n>:<hex>` where `<n>` is the decimal vertex count and `<hex>`
//! packs the strict upper triangle of the adjacency matrix in row-major
//! order (`(1,2) (1,3) … (1,n) (2,3) … (n-1,n)`), most significant bit first
//! within each nibble, zero-padded at the tail. Encoding emits lowercase
//! hex; decoding accepts either case.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, N_MAX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphIdError {
    #[error("malformed graph id {0:?}: expected `<n>:<hex>`")]
    Malformed(String),
    #[error("graph id has vertex count {0}, supported range is 1..={N_MAX}")]
    VertexCount(usize),
    #[error("invalid hex digit {0:?} in graph id")]
    InvalidHex(char),
    #[error("graph id on {n} vertices needs {expected} hex digits, found {found}")]
    HexLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph id has nonzero padding bits")]
    NonzeroPadding,
}

/// A validated graph identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GraphId(String);

/// Number of upper-triangle bits for `n` vertices.
pub fn triangle_bits(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Number of hex digits in the id of an `n`-vertex graph.
pub fn hex_len(n: usize) -> usize {
    triangle_bits(n).div_ceil(4)
}

impl GraphId {
    pub fn encode(g: &Graph) -> Self {
        let n = g.n();
        let mut nibbles = vec![0u8; hex_len(n)];
        let mut pos = 0;
        for i in 0..n {
            for j in i + 1..n {
                if g.has_edge(i, j) {
                    nibbles[pos / 4] |= 8 >> (pos % 4);
                }
                pos += 1;
            }
        }
        let mut s = format!("{n}:");
        s.extend(
            nibbles
                .iter()
                .map(|&d| char::from_digit(d as u32, 16).unwrap()),
        );
        Self(s)
    }

    pub fn decode(&self) -> Graph {
        parse(&self.0).expect("GraphId is validated on construction")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Vertex count, read from the prefix.
    pub fn vertex_count(&self) -> usize {
        self.decode().n()
    }
}

fn parse(text: &str) -> Result<Graph, GraphIdError> {
    let malformed = || GraphIdError::Malformed(text.to_owned());
    let (count, hex) = text.split_once(':').ok_or_else(malformed)?;
    if count.is_empty()
        || !count.bytes().all(|b| b.is_ascii_digit())
        || (count.len() > 1 && count.starts_with('0'))
    {
        return Err(malformed());
    }
    let n: usize = count.parse().map_err(|_| malformed())?;
    if n > N_MAX {
        return Err(GraphIdError::VertexCount(n));
    }
    let expected = hex_len(n);
    let digits = hex
        .chars()
        .map(|c| {
            c.to_digit(16)
                .map(|d| d as u8)
                .ok_or(GraphIdError::InvalidHex(c))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if digits.len() != expected {
        return Err(GraphIdError::HexLength {
            n,
            expected,
            found: digits.len(),
        });
    }
    let bits = triangle_bits(n);
    let mut edges = Vec::new();
    let mut pos = 0;
    for i in 0..n {
        for j in i + 1..n {
            if digits[pos / 4] & (8 >> (pos % 4)) != 0 {
                edges.push((i, j));
            }
            pos += 1;
        }
    }
    let pad = expected * 4 - bits;
    if pad > 0 && digits[expected - 1] & ((1u8 << pad) - 1) != 0 {
        return Err(GraphIdError::NonzeroPadding);
    }
    Graph::from_edges(n, edges).map_err(|e| match e {
        GraphError::VertexCount(n) => GraphIdError::VertexCount(n),
        _ => malformed(),
    })
}

impl FromStr for GraphId {
    type Err = GraphIdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s).map(|g| Self::encode(&g))
    }
}

impl TryFrom<String> for GraphId {
    type Error = GraphIdError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<GraphId> for String {
    fn from(id: GraphId) -> String {
        id.0
    }
}

impl fmt::Display for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Graph {
    pub fn id(&self) -> GraphId {
        GraphId::encode(self)
    }
}

/// Parses a graph id string straight into a graph.
pub fn decode_graph_id(text: &str) -> Result<Graph, GraphIdError> {
    parse(text)
}
