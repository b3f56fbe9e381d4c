//! Cache-backed SLD computation.

use std::sync::atomic::{AtomicU64, Ordering};

use gsv_core::sld::{check_compute, sld_bruteforce_connected, sld_of_graph_with};
use gsv_core::{Graph, Sld, SldError};
use thiserror::Error;
use tracing::{debug, warn};

use crate::cache::{CacheError, CacheRecord, SldCache};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Sld(#[from] SldError),
    #[error(transparent)]
    Cache(#[from] CacheError),
}

/// Computes distributions component by component, consulting the cache
/// before running the kernel.
pub struct Engine {
    cache: SldCache,
    computations: AtomicU64,
}

impl Engine {
    pub fn new(cache: SldCache) -> Self {
        Self {
            cache,
            computations: AtomicU64::new(0),
        }
    }

    pub fn cache(&self) -> &SldCache {
        &self.cache
    }

    /// Number of kernel runs since construction.
    pub fn computations(&self) -> u64 {
        self.computations.load(Ordering::Relaxed)
    }

    /// Distribution of `g`. Components above the automatic limit need
    /// `force`; the hard cap always applies.
    pub fn sld(&self, g: &Graph, force: bool) -> Result<Sld, EngineError> {
        check_compute(g, force)?;
        sld_of_graph_with(g, |comp| self.component_sld(comp))
    }

    fn compute(&self, comp: &Graph) -> Result<Sld, EngineError> {
        self.computations.fetch_add(1, Ordering::Relaxed);
        Ok(sld_bruteforce_connected(comp)?)
    }

    fn component_sld(&self, comp: &Graph) -> Result<Sld, EngineError> {
        let key = comp.id();
        if let Some(record) = self.cache.get(&key) {
            let cached = record.validate()?;
            if record.is_current() {
                debug!(%key, "cache hit");
                return Ok(cached);
            }
            // written by another engine version: recompute and verify
            let fresh = self.compute(comp)?;
            if fresh != cached {
                warn!(%key, version = %record.engine_version, "stale cache record disagrees with kernel");
            }
            self.cache.put(CacheRecord::new(key, &fresh))?;
            return Ok(fresh);
        }
        let fresh = self.compute(comp)?;
        self.cache.put(CacheRecord::new(key, &fresh))?;
        Ok(fresh)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gsv_core::generate::{path, ring};

    #[test]
    fn computes_each_component_once() {
        let engine = Engine::new(SldCache::in_memory());
        // two copies of a 3-path and one ring(4): two distinct keys
        let g = Graph::from_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (3, 4),
                (4, 5),
                (6, 7),
                (7, 8),
                (8, 9),
                (6, 9),
            ],
        )
        .unwrap();
        let a = engine.sld(&g, false).unwrap();
        assert_eq!(engine.computations(), 2);
        assert_eq!(engine.sld(&g, false).unwrap(), a);
        assert_eq!(engine.computations(), 2);
        assert_eq!(a, gsv_core::sld::sld_of_graph(&g).unwrap());
    }

    #[test]
    fn policy_is_enforced() {
        let engine = Engine::new(SldCache::in_memory());
        let big = path(17).unwrap();
        assert!(matches!(
            engine.sld(&big, false),
            Err(EngineError::Sld(SldError::RequiresForce { size: 17, .. }))
        ));
        assert_eq!(engine.computations(), 0);
        assert!(engine.sld(&big, true).is_ok());
        assert!(matches!(
            engine.sld(&path(29).unwrap(), true),
            Err(EngineError::Sld(SldError::TooLarge { size: 29, .. }))
        ));
    }

    #[test]
    fn stale_records_are_recomputed() {
        let cache = SldCache::in_memory();
        let r = ring(6).unwrap();
        let mut rec = CacheRecord::new(r.id(), &gsv_core::sld::sld_of_graph(&r).unwrap());
        rec.engine_version = "gsv-core/0.0.0".into();
        cache.put(rec).unwrap();
        let engine = Engine::new(cache);
        engine.sld(&r, false).unwrap();
        assert_eq!(engine.computations(), 1);
        assert!(engine.cache().get(&r.id()).unwrap().is_current());
        engine.sld(&r, false).unwrap();
        assert_eq!(engine.computations(), 1);
    }
}
