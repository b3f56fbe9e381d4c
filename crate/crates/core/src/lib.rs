//! Graph states and their stabilizer groups.
//!
//! A graph on `n ≤ 32` vertices defines the `n`-qubit graph state `|G⟩`, whose
//! stabilizer group is `{±X^r Z^{Γr}}`. This crate builds and edits graphs,
//! streams and tests stabilizers, and computes sector length distributions
//! with their noise decay and the derived entanglement-threshold bounds.
//!
//! ```
//! use gsv_core::{generate, sld};
//!
//! let ring = generate::ring(6).unwrap();
//! let a = sld::sld_of_graph(&ring).unwrap();
//! assert_eq!(a.counts().iter().sum::<u64>(), 64);
//! ```

pub mod generate;
pub mod graph;
pub mod graph_id;
pub mod json;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod sld;
pub mod stabilizer;

pub use generate::{generate, GenerateError, GeneratorKind};
pub use graph::{Component, Graph, GraphError, GraphProperties, Parity, SldType, N_MAX};
pub use graph_id::{decode_graph_id, GraphId, GraphIdError};
pub use sld::{ComputePolicy, DecayedSld, Sld, SldError, ThresholdReport};
pub use stabilizer::{PauliOperator, Sign, StabilizerElement, StabilizerError};

/// Tag stored with cached results; bump whenever kernel output could change.
pub const ENGINE_VERSION: &str = concat!("gsv-core/", env!("CARGO_PKG_VERSION"), "+gray1");
