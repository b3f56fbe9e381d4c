//! Predefined graph families and seeded random graphs.
//!
//! Random graphs use ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `SeedableRng::seed_from_u64(seed)`. The `n(n-1)/2` vertex pairs are visited
//! in row-major upper-triangle order; for each pair one `u64` is drawn, its top
//! 53 bits are scaled to a uniform `u ∈ [0, 1)`, and the edge is present iff
//! `u < p`. The stream is platform independent, so ids reproduce exactly.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Edgeless,
    Complete,
    Ring,
    Path,
    /// Vertex 0 joined to every other vertex.
    Star,
    Random,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 6] = [
        GeneratorKind::Edgeless,
        GeneratorKind::Complete,
        GeneratorKind::Ring,
        GeneratorKind::Path,
        GeneratorKind::Star,
        GeneratorKind::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Edgeless => "edgeless",
            GeneratorKind::Complete => "complete",
            GeneratorKind::Ring => "ring",
            GeneratorKind::Path => "path",
            GeneratorKind::Star => "star",
            GeneratorKind::Random => "random",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| GenerateError::UnknownKind(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("unknown graph kind {0:?}")]
    UnknownKind(String),
    #[error("random graphs need an edge probability in [0, 1], got {0:?}")]
    Probability(Option<f64>),
    #[error("random graphs need a seed")]
    MissingSeed,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Builds a graph of the given family. `p` and `seed` are required for
/// [`GeneratorKind::Random`] and ignored otherwise.
pub fn generate(
    kind: GeneratorKind,
    n: usize,
    p: Option<f64>,
    seed: Option<u64>,
) -> Result<Graph, GenerateError> {
    let g = Graph::new(n)?;
    let g = match kind {
        GeneratorKind::Edgeless => g,
        GeneratorKind::Complete => {
            Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))?
        }
        GeneratorKind::Ring if n >= 2 => {
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).filter(|(i, j)| i != j))?
        }
        GeneratorKind::Ring => g,
        GeneratorKind::Path => Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?,
        GeneratorKind::Star => Graph::from_edges(n, (1..n).map(|i| (0, i)))?,
        GeneratorKind::Random => {
            let p = match p {
                Some(p) if (0.0..=1.0).contains(&p) => p,
                other => return Err(GenerateError::Probability(other)),
            };
            let seed = seed.ok_or(GenerateError::MissingSeed)?;
            random_graph(n, p, seed)?
        }
    };
    Ok(g)
}

/// Erdős–Rényi graph with the documented ChaCha8 stream.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if u < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn ring(n: usize) -> Result<Graph, GraphError> {
    generate(GeneratorKind::Ring, n, None, None).map_err(unwrap_graph_error)
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    generate(GeneratorKind::Path, n, None, None).map_err(unwrap_graph_error)
}

pub fn star(n: usize) -> Result<Graph, GraphError> {
    generate(GeneratorKind::Star, n, None, None).map_err(unwrap_graph_error)
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    generate(GeneratorKind::Complete, n, None, None).map_err(unwrap_graph_error)
}

pub fn edgeless(n: usize) -> Result<Graph, GraphError> {
    Graph::new(n)
}

fn unwrap_graph_error(e: GenerateError) -> GraphError {
    match e {
        GenerateError::Graph(g) => g,
        other => unreachable!("deterministic families only fail on size: {other}"),
    }
}
