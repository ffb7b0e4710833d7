//! Append-only JSON-lines results cache keyed by (command, parameters, version).

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::record::OutputRecord;

pub const CACHE_ENV: &str = "ES_LAB_CACHE";

#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    /// `--cache` wins over the environment.
    pub fn from_flag_or_env(flag: Option<&Path>) -> Option<Self> {
        flag.map(Cache::new)
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Cache::new))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Every cached record sharing `probe`'s key, in file order. Lines that
    /// don't parse are skipped.
    pub fn lookup(&self, probe: &OutputRecord) -> io::Result<Vec<OutputRecord>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        let mut hits = Vec::new();
        for line in BufReader::new(file).lines() {
            let line = line?;
            if let Ok(rec) = serde_json::from_str::<OutputRecord>(&line) {
                if rec.same_key(probe) {
                    hits.push(rec);
                }
            }
        }
        Ok(hits)
    }

    pub fn append(&self, records: &[OutputRecord]) -> io::Result<()> {
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut buf = Vec::new();
        for r in records {
            serde_json::to_writer(&mut buf, r)?;
            buf.push(b'\n');
        }
        f.write_all(&buf)
    }
}
