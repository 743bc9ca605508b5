//! Append-only JSONL results cache.
//!
//! Each line is one [`CacheRecord`]. Lookups scan the whole file and return
//! the last record matching `(graph_key, task, params)`; records written by
//! another tool version come back flagged as stale. Lines that fail to parse
//! are skipped with a warning.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache record could not be encoded: {0}")]
    Encode(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub graph_key: String,
    pub task: String,
    pub params: Value,
    pub result: Value,
    pub created_at: String,
    pub tool_version: String,
}

impl CacheRecord {
    pub fn new(graph_key: impl Into<String>, task: impl Into<String>, params: Value, result: Value) -> Self {
        CacheRecord {
            graph_key: graph_key.into(),
            task: task.into(),
            params,
            result,
            created_at: chrono::Utc::now().to_rfc3339(),
            tool_version: peg_core::VERSION.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CacheHit {
    pub record: CacheRecord,
    pub stale: bool,
}

#[derive(Debug, Default)]
pub struct Lookup {
    pub hit: Option<CacheHit>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io(&self, source: std::io::Error) -> CacheError {
        CacheError::Io {
            path: self.path.clone(),
            source,
        }
    }

    pub fn put(&self, record: &CacheRecord) -> Result<(), CacheError> {
        let line = serde_json::to_string(record)?;
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| self.io(e))?;
        writeln!(file, "{line}").map_err(|e| self.io(e))
    }

    pub fn get(&self, graph_key: &str, task: &str, params: &Value) -> Result<Lookup, CacheError> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Lookup::default()),
            Err(e) => return Err(self.io(e)),
        };
        let mut lookup = Lookup::default();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| self.io(e))?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheRecord>(&line) {
                Ok(r) if r.graph_key == graph_key && r.task == task && &r.params == params => {
                    let stale = r.tool_version != peg_core::VERSION;
                    lookup.hit = Some(CacheHit { record: r, stale });
                }
                Ok(_) => {}
                Err(e) => lookup
                    .warnings
                    .push(format!("{}:{}: skipping corrupt record: {e}", self.path.display(), i + 1)),
            }
        }
        Ok(lookup)
    }
}
