use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub text: String,
    #[serde(default)]
    pub source: String,
}

impl Document {
    pub fn new(text: &str, source: &str) -> Self {
        Document {
            text: text.to_string(),
            source: source.to_string(),
        }
    }

    pub fn tokens(&self) -> u64 {
        token_count(&self.text)
    }
}

/// Whitespace-separated units, the budgeting unit for corpora.
pub fn token_count(text: &str) -> u64 {
    text.split_whitespace().count() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocFormat {
    /// One `{text, source}` object per line.
    JsonLines,
    /// One document per line.
    Plain,
}

impl DocFormat {
    /// JSON lines for `.jsonl`/`.json` paths, plain text otherwise.
    pub fn for_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl" | "json" | "ndjson") => DocFormat::JsonLines,
            _ => DocFormat::Plain,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("{path}: line {line}: {source}")]
    Json {
        path: String,
        line: usize,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

/// Parses documents; `default_source` fills records without a source.
/// Blank plain-text lines are skipped.
pub fn parse_documents(
    text: &str,
    format: DocFormat,
    default_source: &str,
    origin: &str,
) -> Result<Vec<Document>, DocumentError> {
    let mut docs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match format {
            DocFormat::Plain => docs.push(Document::new(line, default_source)),
            DocFormat::JsonLines => {
                let mut d: Document =
                    serde_json::from_str(line).map_err(|source| DocumentError::Json {
                        path: origin.to_string(),
                        line: i + 1,
                        source,
                    })?;
                if d.source.is_empty() {
                    d.source = default_source.to_string();
                }
                docs.push(d);
            }
        }
    }
    Ok(docs)
}

/// Reads a corpus file; the default source name is the file stem.
pub fn read_documents(path: impl AsRef<Path>) -> Result<Vec<Document>, DocumentError> {
    let path = path.as_ref();
    let origin = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: origin.clone(),
        source,
    })?;
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("corpus");
    parse_documents(&text, DocFormat::for_path(path), stem, &origin)
}

pub fn write_documents<W: Write>(mut w: W, docs: &[Document], format: DocFormat) -> io::Result<()> {
    for d in docs {
        match format {
            DocFormat::JsonLines => {
                serde_json::to_writer(&mut w, d)?;
                w.write_all(b"\n")?;
            }
            DocFormat::Plain => {
                w.write_all(d.text.replace('\n', " ").as_bytes())?;
                w.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        let jsonl = "{\"text\":\"a b c\",\"source\":\"wiki\"}\n\n{\"text\":\"d\"}\n";
        let docs = parse_documents(jsonl, DocFormat::JsonLines, "x", "mem").unwrap();
        assert_eq!(
            docs,
            [Document::new("a b c", "wiki"), Document::new("d", "x")]
        );
        assert_eq!(docs[0].tokens(), 3);
        let plain = parse_documents("one two\n\nthree\n", DocFormat::Plain, "p", "mem").unwrap();
        assert_eq!(plain.len(), 2);
        let err = parse_documents("{oops\n", DocFormat::JsonLines, "x", "mem").unwrap_err();
        assert!(err.to_string().starts_with("mem: line 1"));
    }

    #[test]
    fn write_read_round_trip() {
        let docs = vec![
            Document::new("He said \"hi\"", "a"),
            Document::new("x", "b"),
        ];
        let mut buf = Vec::new();
        write_documents(&mut buf, &docs, DocFormat::JsonLines).unwrap();
        let back = parse_documents(
            std::str::from_utf8(&buf).unwrap(),
            DocFormat::JsonLines,
            "z",
            "mem",
        )
        .unwrap();
        assert_eq!(back, docs);
    }
}
