//! Tokenisation, coarse part-of-speech tagging and named-entity flags.
//!
//! The tagger is deliberately small: downstream code only needs to tell
//! singular from plural nouns, verbs governed by a pronoun, and proper nouns.
//! Better tags can be supplied through the pre-annotated JSON-lines format
//! (see [`Line::from_annotated`]).

mod entities;
mod tagger;
mod tokenize;

use serde::{Deserialize, Serialize};

pub use entities::{mark_named_entities, Gazetteer};
pub use tagger::{is_pronoun, looks_like_participle, HeuristicTagger, Tagger, PRONOUNS};
pub use tokenize::{tokenize, Pos, TaggedToken};

#[derive(Debug, thiserror::Error)]
pub enum AnnotationError {
    #[error("malformed annotated line: {0}")]
    Json(#[from] serde_json::Error),
    #[error("token {index} (`{text}`) does not match span {start}..{end} of the line")]
    Span {
        index: usize,
        text: String,
        start: usize,
        end: usize,
    },
    #[error("token {index} overlaps or precedes the previous token")]
    Order { index: usize },
}

/// A source line with its tagged tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub raw: String,
    pub tokens: Vec<TaggedToken>,
    pub source_id: String,
}

#[derive(Deserialize)]
struct AnnotatedToken {
    text: String,
    pos: Pos,
    #[serde(default)]
    ne: bool,
    start: usize,
    end: usize,
}

#[derive(Deserialize)]
struct AnnotatedLine {
    text: String,
    tokens: Vec<AnnotatedToken>,
    #[serde(default)]
    source: Option<String>,
}

#[derive(Serialize)]
struct AnnotatedOut<'a> {
    text: &'a str,
    tokens: Vec<AnnotatedTokenOut<'a>>,
}

#[derive(Serialize)]
struct AnnotatedTokenOut<'a> {
    text: &'a str,
    pos: Pos,
    ne: bool,
    start: usize,
    end: usize,
}

impl Line {
    /// Tokenises, tags and marks entities.
    pub fn analyze(
        raw: &str,
        source_id: &str,
        tagger: &dyn Tagger,
        gazetteer: Option<&Gazetteer>,
    ) -> Line {
        let tokens = mark_named_entities(tagger.tokenize_and_tag(raw), gazetteer);
        Line {
            raw: raw.to_string(),
            tokens,
            source_id: source_id.to_string(),
        }
    }

    /// Parses one pre-annotated JSON-lines record
    /// `{text, tokens: [{text, pos, ne, start, end}]}`; offsets are byte
    /// offsets into `text`.
    pub fn from_annotated(json: &str, source_id: &str) -> Result<Line, AnnotationError> {
        let rec: AnnotatedLine = serde_json::from_str(json)?;
        let mut tokens = Vec::with_capacity(rec.tokens.len());
        let mut last_end = 0;
        for (index, t) in rec.tokens.into_iter().enumerate() {
            if rec.text.get(t.start..t.end) != Some(t.text.as_str()) || t.start >= t.end {
                return Err(AnnotationError::Span {
                    index,
                    text: t.text,
                    start: t.start,
                    end: t.end,
                });
            }
            if t.start < last_end {
                return Err(AnnotationError::Order { index });
            }
            last_end = t.end;
            tokens.push(TaggedToken {
                lower: t.text.to_lowercase(),
                text: t.text,
                pos: t.pos,
                ne: t.ne,
                start: t.start,
                end: t.end,
            });
        }
        Ok(Line {
            raw: rec.text,
            tokens,
            source_id: rec.source.unwrap_or_else(|| source_id.to_string()),
        })
    }

    pub fn to_annotated(&self) -> String {
        let out = AnnotatedOut {
            text: &self.raw,
            tokens: self
                .tokens
                .iter()
                .map(|t| AnnotatedTokenOut {
                    text: &t.text,
                    pos: t.pos,
                    ne: t.ne,
                    start: t.start,
                    end: t.end,
                })
                .collect(),
        };
        serde_json::to_string(&out).expect("annotated line serialises")
    }

    /// Rebuilds the raw line from token spans and the gaps between them.
    pub fn detokenize(&self) -> String {
        let mut out = String::with_capacity(self.raw.len());
        let mut cursor = 0;
        for t in &self.tokens {
            out.push_str(&self.raw[cursor..t.start]);
            out.push_str(&self.raw[t.start..t.end]);
            cursor = t.end;
        }
        out.push_str(&self.raw[cursor..]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn annotated_round_trip() {
        let line = Line::analyze("She met Zimmerman.", "doc", &HeuristicTagger, None);
        let json = line.to_annotated();
        let back = Line::from_annotated(&json, "doc").unwrap();
        assert_eq!(back, line);
    }

    #[test]
    fn annotated_spans_are_checked() {
        let bad = r#"{"text":"He ran","tokens":[{"text":"He","pos":"PRON","ne":false,"start":0,"end":3}]}"#;
        assert!(matches!(
            Line::from_annotated(bad, "x"),
            Err(AnnotationError::Span { .. })
        ));
        let unordered = r#"{"text":"He ran","tokens":[{"text":"ran","pos":"VERB_OTHER","start":3,"end":6},{"text":"He","pos":"PRON","start":0,"end":2}]}"#;
        assert!(matches!(
            Line::from_annotated(unordered, "x"),
            Err(AnnotationError::Order { index: 1 })
        ));
    }

    proptest! {
        #[test]
        fn offsets_reconstruct_line(raw in "[ a-zA-Z'’\\-.,!?é0-9\"]{0,60}") {
            let line = Line::analyze(&raw, "p", &HeuristicTagger, None);
            prop_assert_eq!(line.detokenize(), raw.clone());
            let mut prev_end = 0;
            for t in &line.tokens {
                prop_assert!(t.start < t.end);
                prop_assert!(t.start >= prev_end);
                prop_assert_eq!(&raw[t.start..t.end], t.text.as_str());
                prop_assert_eq!(t.lower.clone(), t.text.to_lowercase());
                prev_end = t.end;
            }
            // every non-space character is covered by some token
            let covered: usize = line.tokens.iter().map(|t| t.end - t.start).sum();
            let non_space: usize = raw.chars().filter(|c| !c.is_whitespace()).map(char::len_utf8).sum();
            prop_assert_eq!(covered, non_space);
        }
    }
}
