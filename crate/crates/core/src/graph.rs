//! Simple undirected graphs on at most [`N_MAX`] vertices.
//!
//! The adjacency matrix is stored over GF(2) with one `u32` word per row, so
//! that bit `j` of `rows[i]` is the entry in row `i`, column `j`. Vertices are
//! 0-based throughout this crate; user-facing layers add one.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported vertex count: every adjacency row fits in one word.
pub const N_MAX: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} is outside the supported range 1..={N_MAX}")]
    VertexCount(usize),
    /// Displayed with 1-based labels.
    #[error("vertex {} is out of range for a graph on {n} vertices", .vertex + 1)]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("simple graphs cannot contain loops (vertex {})", .0 + 1)]
    Loop(usize),
}

/// A simple undirected graph, stored as its adjacency matrix.
///
/// Values are immutable: every edit returns a new graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: [u32; N_MAX],
}

#[inline]
fn bit(i: usize) -> u32 {
    1u32 << i
}

#[inline]
fn mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        bit(n) - 1
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > N_MAX {
            return Err(GraphError::VertexCount(n));
        }
        Ok(Self {
            n,
            rows: [0; N_MAX],
        })
    }

    /// Builds a graph from 0-based edges. Repeated edges are ignored.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n)?;
        for (i, j) in edges {
            g.check_pair(i, j)?;
            g.rows[i] |= bit(j);
            g.rows[j] |= bit(i);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating symmetry and the
    /// zero diagonal.
    pub fn from_rows(rows: &[u32]) -> Result<Self, GraphError> {
        let mut g = Self::new(rows.len())?;
        for (i, &row) in rows.iter().enumerate() {
            if row & bit(i) != 0 {
                return Err(GraphError::Loop(i));
            }
            if row & !mask(g.n) != 0 {
                return Err(GraphError::VertexOutOfRange {
                    vertex: (32 - row.leading_zeros() - 1) as usize,
                    n: g.n,
                });
            }
            g.rows[i] = row;
        }
        for i in 0..g.n {
            for j in g.neighbors(i) {
                if !g.has_edge(j, i) {
                    // An asymmetric entry is reported as the missing mirror.
                    return Err(GraphError::VertexOutOfRange { vertex: j, n: g.n });
                }
            }
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(), GraphError> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(GraphError::Loop(i));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adjacency rows `0..n`.
    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.n]
    }

    /// Adjacency row of vertex `i`, i.e. its neighborhood as a bit set.
    #[inline]
    pub fn row(&self, i: usize) -> u32 {
        self.rows[i]
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.rows[i] & bit(j) != 0
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> {
        BitIter(self.rows[i])
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| BitIter(self.rows[i] & !mask(i + 1)).map(move |j| (i, j)))
    }

    /// Multiplies the adjacency matrix with the bit vector `r` over GF(2).
    #[inline]
    pub fn apply(&self, r: u32) -> u32 {
        BitIter(r & mask(self.n)).fold(0, |acc, i| acc ^ self.rows[i])
    }

    /// Flips the edge `{i, j}`.
    pub fn toggle_edge(&self, i: usize, j: usize) -> Result<Self, GraphError> {
        self.check_pair(i, j)?;
        let mut g = *self;
        g.rows[i] ^= bit(j);
        g.rows[j] ^= bit(i);
        Ok(g)
    }

    /// Appends an isolated vertex with label `n`.
    pub fn add_vertex(&self) -> Result<Self, GraphError> {
        if self.n >= N_MAX {
            return Err(GraphError::VertexCount(self.n + 1));
        }
        let mut g = *self;
        g.n += 1;
        Ok(g)
    }

    /// Removes vertex `v`; vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(v)?;
        if self.n == 1 {
            return Err(GraphError::VertexCount(0));
        }
        let low = mask(v);
        let mut g = Self {
            n: self.n - 1,
            rows: [0; N_MAX],
        };
        for (dst, src) in (0..self.n).filter(|&k| k != v).enumerate() {
            let row = self.rows[src];
            g.rows[dst] = (row & low) | ((row >> 1) & !low);
        }
        Ok(g)
    }

    /// Local complementation at `v`: the subgraph induced by the
    /// neighborhood of `v` is complemented.
    pub fn local_complement(&self, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(v)?;
        let nbhd = self.rows[v];
        let mut g = *self;
        for j in BitIter(nbhd) {
            g.rows[j] ^= nbhd & !bit(j);
        }
        Ok(g)
    }

    /// Subgraph induced by `vertices`, relabeled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self, GraphError> {
        let mut g = Self::new(vertices.len())?;
        for &v in vertices {
            self.check_vertex(v)?;
        }
        for (a, &va) in vertices.iter().enumerate() {
            for (b, &vb) in vertices.iter().enumerate() {
                if self.has_edge(va, vb) {
                    g.rows[a] |= bit(b);
                }
            }
        }
        Ok(g)
    }

    /// Vertex sets of the connected components as bit masks, ordered by
    /// their smallest vertex.
    pub fn component_masks(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut unseen = mask(self.n);
        while unseen != 0 {
            let start = unseen.trailing_zeros() as usize;
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let reach = BitIter(frontier).fold(0, |acc, v| acc | self.rows[v]);
                frontier = reach & !comp;
                comp |= frontier;
            }
            unseen &= !comp;
            out.push(comp);
        }
        out
    }

    /// Connected components with their induced subgraphs. Each subgraph keeps
    /// the ascending order of the original labels.
    pub fn connected_components(&self) -> Vec<Component> {
        self.component_masks()
            .into_iter()
            .map(|m| {
                let vertices: Vec<usize> = BitIter(m).collect();
                let graph = self
                    .induced(&vertices)
                    .expect("component vertices are in range");
                Component { vertices, graph }
            })
            .collect()
    }

    pub fn largest_component_size(&self) -> usize {
        self.component_masks()
            .into_iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.component_masks().len() == 1
    }

    pub fn isolated_vertex_count(&self) -> usize {
        self.rows().iter().filter(|&&r| r == 0).count()
    }

    pub fn sld_type(&self) -> SldType {
        if self.rows().iter().all(|r| r.count_ones() % 2 == 1) {
            SldType::TypeII
        } else {
            SldType::TypeI
        }
    }

    pub fn properties(&self) -> GraphProperties {
        let components = self.component_masks().len();
        GraphProperties {
            vertex_count: self.n,
            edge_count: self.edge_count(),
            component_count: components,
            isolated_vertex_count: self.isolated_vertex_count(),
            degree_sequence: self.degrees(),
            sld_type: self.sld_type(),
            connected: components == 1,
        }
    }

    pub fn parity_coloring(&self) -> Vec<Parity> {
        self.rows()
            .iter()
            .map(|r| {
                if r.count_ones() % 2 == 1 {
                    Parity::OddDegree
                } else {
                    Parity::EvenDegree
                }
            })
            .collect()
    }

    /// An edge maximizing `deg(i) + deg(j)`; ties go to the lexicographically
    /// smallest `(i, j)` with `i < j`.
    pub fn distillation_pair(&self) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), usize)> = None;
        for (i, j) in self.edges() {
            let sum = self.degree(i) + self.degree(j);
            if best.is_none_or(|(_, s)| sum > s) {
                best = Some(((i, j), sum));
            }
        }
        best.map(|(e, _)| e)
    }

    /// Largest value of `deg(i) + deg(j)` over all edges.
    pub fn max_edge_degree_sum(&self) -> Option<usize> {
        self.distillation_pair()
            .map(|(i, j)| self.degree(i) + self.degree(j))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// A connected component: its original (0-based) vertex labels in
/// ascending order and the induced subgraph on `0..vertices.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub graph: Graph,
}

/// Which of the two sector-length families a graph state belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SldType {
    /// Odd and even sectors carry equal total weight.
    #[serde(rename = "I")]
    TypeI,
    /// All odd sectors vanish; every vertex has odd degree.
    #[serde(rename = "II")]
    TypeII,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Parity {
    EvenDegree,
    OddDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphProperties {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub component_count: usize,
    pub isolated_vertex_count: usize,
    pub degree_sequence: Vec<usize>,
    pub sld_type: SldType,
    pub connected: bool,
}

/// Iterates the set bits of a word from least to most significant.
#[derive(Debug, Clone, Copy)]
pub struct BitIter(pub u32);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for BitIter {}
