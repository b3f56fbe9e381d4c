//! Sector length distributions of graph states.
//!
//! For a stabilizer state the `k`-body sector length `A_k` is the number of
//! stabilizers of weight `k`. Graph states are handled component by
//! component: each connected component is counted with the Gray-code kernel
//! in [`kernel`] and the partial distributions are convolved.

pub mod closed_form;
pub mod kernel;
pub mod noise;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, SldType};

pub use closed_form::{
    approximate_sld, binomial, closed_form_ghz, closed_form_ghz_tensor_zero, weight_probability,
    WeightDistribution,
};
pub use kernel::{
    sld_bruteforce_connected, sld_bruteforce_partitioned, sld_bruteforce_serial, AUTO_LIMIT,
    HARD_CAP,
};
pub use noise::{
    decay, threshold_distillation, threshold_majorization, threshold_n_sector, thresholds,
    DecayedSld, ThresholdReport,
};

/// Largest qubit count an [`Sld`] can describe: `Σ A_k = 2ⁿ` must fit a `u64`.
pub const MAX_QUBITS: usize = 63;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SldError {
    #[error(
        "connected component of size {size} exceeds the hard cap of {cap} vertices; \
         the sector length distribution is not computed"
    )]
    TooLarge { size: usize, cap: usize },
    #[error(
        "largest connected component has {size} vertices, above the automatic limit of \
         {limit}; pass force to compute it anyway"
    )]
    RequiresForce { size: usize, limit: usize },
    #[error("invalid sector length distribution: {0}")]
    Invalid(String),
    #[error("probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("{0}")]
    Domain(String),
}

/// `A = (A_0, …, A_n)` with `A_0 = 1` and `Σ A_k = 2ⁿ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sld {
    counts: Vec<u64>,
}

impl Sld {
    pub fn new(counts: Vec<u64>) -> Result<Self, SldError> {
        let n = counts
            .len()
            .checked_sub(1)
            .ok_or_else(|| SldError::Invalid("empty".into()))?;
        if n > MAX_QUBITS {
            return Err(SldError::Invalid(format!("{n} qubits exceed {MAX_QUBITS}")));
        }
        if counts[0] != 1 {
            return Err(SldError::Invalid(format!(
                "A_0 = {} instead of 1",
                counts[0]
            )));
        }
        let total = counts.iter().try_fold(0u64, |acc, &a| acc.checked_add(a));
        if total != Some(1u64 << n) {
            return Err(SldError::Invalid(format!("sectors do not sum to 2^{n}")));
        }
        Ok(Self { counts })
    }

    /// The zero-qubit distribution `(1)`, neutral for [`Sld::combine`].
    pub fn unit() -> Self {
        Self { counts: vec![1] }
    }

    /// `A_k = C(n, k)`: a product state, i.e. the edgeless graph.
    pub fn product_state(n: usize) -> Result<Self, SldError> {
        if n > MAX_QUBITS {
            return Err(SldError::Invalid(format!("{n} qubits exceed {MAX_QUBITS}")));
        }
        Ok(Self {
            counts: (0..=n).map(|k| binomial(n, k)).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }

    /// Type II when every odd sector vanishes.
    pub fn sld_type(&self) -> SldType {
        if self.counts.iter().skip(1).step_by(2).all(|&a| a == 0) {
            SldType::TypeII
        } else {
            SldType::TypeI
        }
    }

    /// Distribution of the tensor product, the convolution of both vectors.
    pub fn combine(&self, other: &Sld) -> Result<Sld, SldError> {
        let n = self.n() + other.n();
        if n > MAX_QUBITS {
            return Err(SldError::Invalid(format!("{n} qubits exceed {MAX_QUBITS}")));
        }
        let mut out = vec![0u64; n + 1];
        for (i, &a) in self.counts.iter().enumerate() {
            for (j, &b) in other.counts.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Sld { counts: out })
    }

    pub fn to_json(&self) -> SldJson {
        SldJson {
            n: self.n(),
            a: self.counts.clone(),
            sld_type: self.sld_type(),
        }
    }
}

impl fmt::Debug for Sld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sld{:?}", self.counts)
    }
}

impl TryFrom<SldJson> for Sld {
    type Error = SldError;

    fn try_from(j: SldJson) -> Result<Self, SldError> {
        if j.a.len() != j.n + 1 {
            return Err(SldError::Invalid(format!(
                "n = {} but {} sectors",
                j.n,
                j.a.len()
            )));
        }
        let sld = Sld::new(j.a)?;
        if sld.sld_type() != j.sld_type {
            return Err(SldError::Invalid("type does not match the sectors".into()));
        }
        Ok(sld)
    }
}

/// Wire form `{"n": …, "A": […], "type": "I"|"II"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SldJson {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    #[serde(rename = "type")]
    pub sld_type: SldType,
}

/// Convolution of two distributions.
pub fn sld_combine(a: &Sld, b: &Sld) -> Result<Sld, SldError> {
    a.combine(b)
}

/// Whether a graph's distribution is computed without an explicit request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ComputePolicy {
    Auto,
    RequiresForce,
}

pub fn auto_compute_policy(g: &Graph) -> ComputePolicy {
    if g.largest_component_size() <= AUTO_LIMIT {
        ComputePolicy::Auto
    } else {
        ComputePolicy::RequiresForce
    }
}

/// Checks the automatic limit and the hard cap. `force` lifts only the
/// former.
pub fn check_compute(g: &Graph, force: bool) -> Result<(), SldError> {
    let size = g.largest_component_size();
    if size > HARD_CAP {
        return Err(SldError::TooLarge {
            size,
            cap: HARD_CAP,
        });
    }
    if size > AUTO_LIMIT && !force {
        return Err(SldError::RequiresForce {
            size,
            limit: AUTO_LIMIT,
        });
    }
    Ok(())
}

/// Distribution of `|G⟩`, folding per-component results from `component_sld`.
///
/// Components of one or two vertices are filled in directly.
pub fn sld_of_graph_with<F, E>(g: &Graph, mut component_sld: F) -> Result<Sld, E>
where
    F: FnMut(&Graph) -> Result<Sld, E>,
    E: From<SldError>,
{
    let size = g.largest_component_size();
    if size > HARD_CAP {
        return Err(SldError::TooLarge {
            size,
            cap: HARD_CAP,
        }
        .into());
    }
    let mut acc = Sld::unit();
    for comp in g.connected_components() {
        let part = match comp.graph.n() {
            1 => Sld { counts: vec![1, 1] },
            2 => Sld {
                counts: vec![1, 0, 3],
            },
            _ => component_sld(&comp.graph)?,
        };
        acc = acc.combine(&part)?;
    }
    Ok(acc)
}

/// Distribution of `|G⟩` from its connected components, subject to the hard
/// cap on component size.
pub fn sld_of_graph(g: &Graph) -> Result<Sld, SldError> {
    sld_of_graph_with(g, sld_bruteforce_connected)
}
