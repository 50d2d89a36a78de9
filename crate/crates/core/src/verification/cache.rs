use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub term: String,
    pub found: bool,
    pub matched_form: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache line {line}: {source}")]
    Parse {
        line: usize,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Append-only JSON-lines record of remote verdicts; the last record for a
/// term wins.
#[derive(Debug, Default)]
pub struct DictCache {
    entries: HashMap<String, CacheEntry>,
    file: Option<(PathBuf, File)>,
}

impl DictCache {
    pub fn in_memory() -> Self {
        DictCache::default()
    }

    /// Loads `path` if it exists and appends new verdicts to it.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref();
        let mut entries = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let e: CacheEntry =
                    serde_json::from_str(&line).map_err(|source| CacheError::Parse {
                        line: i + 1,
                        source,
                    })?;
                entries.insert(e.term.clone(), e);
            }
        } else if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(DictCache {
            entries,
            file: Some((path.to_path_buf(), file)),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.file.as_ref().map(|(p, _)| p.as_path())
    }

    pub fn get(&self, term: &str) -> Option<&CacheEntry> {
        self.entries.get(term)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn record(&mut self, term: &str, found: bool, matched_form: &str) -> io::Result<()> {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        let entry = CacheEntry {
            term: term.to_string(),
            found,
            matched_form: matched_form.to_string(),
            timestamp,
        };
        if let Some((_, file)) = &mut self.file {
            let mut line = serde_json::to_string(&entry).map_err(io::Error::other)?;
            line.push('\n');
            file.write_all(line.as_bytes())?;
            file.flush()?;
        }
        self.entries.insert(entry.term.clone(), entry);
        Ok(())
    }
}
