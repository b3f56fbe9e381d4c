//! Persistent SLD cache keyed by connected-component graph ids.
//!
//! Records live in an append-only log, one JSON document per line. Opening
//! the cache replays the log into memory. Appends go through a single writer
//! lock and a record becomes visible to readers only after its line has been
//! written in full.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use gsv_core::sld::SldJson;
use gsv_core::{GraphId, Sld, ENGINE_VERSION};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use tracing::warn;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache storage failed at {path}: {source}; the request can be retried")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cache already holds a different distribution for {key} (engine {version})")]
    Integrity { key: GraphId, version: String },
    #[error("invalid cache record: {0}")]
    InvalidRecord(String),
}

impl CacheError {
    /// Whether retrying the same operation may succeed.
    pub fn is_retryable(&self) -> bool {
        matches!(self, CacheError::Io { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CacheRecord {
    pub key: GraphId,
    pub sld: SldJson,
    pub computed_at_ms: u64,
    pub engine_version: String,
}

impl CacheRecord {
    /// A record stamped with the current time and engine version.
    pub fn new(key: GraphId, sld: &Sld) -> Self {
        let computed_at_ms = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0);
        Self {
            key,
            sld: sld.to_json(),
            computed_at_ms,
            engine_version: ENGINE_VERSION.to_owned(),
        }
    }

    pub fn is_current(&self) -> bool {
        self.engine_version == ENGINE_VERSION
    }

    /// Checks that the key is a connected graph and the distribution is a
    /// valid one for its vertex count.
    pub fn validate(&self) -> Result<Sld, CacheError> {
        let g = self.key.decode();
        if !g.is_connected() {
            return Err(CacheError::InvalidRecord(format!(
                "{} is not connected",
                self.key
            )));
        }
        let sld = Sld::try_from(self.sld.clone())
            .map_err(|e| CacheError::InvalidRecord(format!("{}: {e}", self.key)))?;
        if sld.n() != g.n() {
            return Err(CacheError::InvalidRecord(format!(
                "{} has {} vertices but the distribution covers {}",
                self.key,
                g.n(),
                sld.n()
            )));
        }
        Ok(sld)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PutOutcome {
    Inserted,
    /// Same key and distribution were already present.
    Unchanged,
    /// A record from another engine version was superseded.
    Replaced,
}

struct Log {
    path: PathBuf,
    file: File,
}

pub struct SldCache {
    records: RwLock<HashMap<GraphId, CacheRecord>>,
    log: Option<Mutex<Log>>,
}

impl SldCache {
    /// A cache that lives only as long as the process.
    pub fn in_memory() -> Self {
        Self {
            records: RwLock::new(HashMap::new()),
            log: None,
        }
    }

    /// Opens (or creates) the log at `path` and replays it.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let io_err = |source| CacheError::Io {
            path: path.clone(),
            source,
        };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(io_err)?;
        }
        let mut file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(&path)
            .map_err(io_err)?;

        let mut records: HashMap<GraphId, CacheRecord> = HashMap::new();
        let mut reader = BufReader::new(&file);
        let mut line = String::new();
        let mut lineno = 0;
        loop {
            line.clear();
            if reader.read_line(&mut line).map_err(io_err)? == 0 {
                break;
            }
            lineno += 1;
            if line.trim().is_empty() {
                continue;
            }
            let record = match serde_json::from_str::<CacheRecord>(&line)
                .map_err(|e| CacheError::InvalidRecord(e.to_string()))
                .and_then(|r| r.validate().map(|_| r))
            {
                Ok(r) => r,
                Err(e) => {
                    warn!(path = %path.display(), lineno, "skipping cache line: {e}");
                    continue;
                }
            };
            match records.get(&record.key) {
                Some(old)
                    if old.engine_version == record.engine_version && old.sld != record.sld =>
                {
                    warn!(key = %record.key, lineno, "conflicting cache record ignored");
                }
                _ => {
                    records.insert(record.key.clone(), record);
                }
            }
        }
        drop(reader);

        // a torn final line must not swallow the next append
        let len = file.metadata().map_err(io_err)?.len();
        if len > 0 {
            let mut last = [0u8; 1];
            file.seek(SeekFrom::Start(len - 1)).map_err(io_err)?;
            file.read_exact(&mut last).map_err(io_err)?;
            if last[0] != b'\n' {
                file.write_all(b"\n").map_err(io_err)?;
            }
        }

        Ok(Self {
            records: RwLock::new(records),
            log: Some(Mutex::new(Log { path, file })),
        })
    }

    pub fn get(&self, key: &GraphId) -> Option<CacheRecord> {
        self.records
            .read()
            .expect("cache lock poisoned")
            .get(key)
            .cloned()
    }

    /// The distribution stored for `key`, regardless of engine version.
    pub fn get_sld(&self, key: &GraphId) -> Option<Sld> {
        self.get(key).and_then(|r| Sld::try_from(r.sld).ok())
    }

    pub fn len(&self) -> usize {
        self.records.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Stores a record. Re-putting an identical distribution is a no-op; a
    /// different distribution under the same engine version is refused.
    /// Records from other engine versions are superseded.
    pub fn put(&self, record: CacheRecord) -> Result<PutOutcome, CacheError> {
        record.validate()?;
        let mut log = self
            .log
            .as_ref()
            .map(|l| l.lock().expect("cache writer poisoned"));

        let outcome = match self.get(&record.key) {
            Some(old) if old.engine_version == record.engine_version => {
                if old.sld == record.sld {
                    return Ok(PutOutcome::Unchanged);
                }
                return Err(CacheError::Integrity {
                    key: record.key,
                    version: record.engine_version,
                });
            }
            Some(_) => PutOutcome::Replaced,
            None => PutOutcome::Inserted,
        };

        if let Some(log) = log.as_mut() {
            let mut line = serde_json::to_string(&record).expect("cache records serialize");
            line.push('\n');
            let Log { path, file } = &mut **log;
            file.write_all(line.as_bytes())
                .and_then(|_| file.flush())
                .map_err(|source| CacheError::Io {
                    path: path.clone(),
                    source,
                })?;
        }
        self.records
            .write()
            .expect("cache lock poisoned")
            .insert(record.key.clone(), record);
        Ok(outcome)
    }
}
