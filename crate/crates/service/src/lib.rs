//! HTTP service and persistent cache for stabilizer length distributions.

pub mod api;
pub mod cache;
pub mod engine;

pub use api::{router, serve, ApiError, AppState};
pub use cache::{CacheError, CacheRecord, PutOutcome, SldCache};
pub use engine::{Engine, EngineError};
