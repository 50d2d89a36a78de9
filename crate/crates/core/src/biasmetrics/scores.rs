//! Score-file schemas written by the model harness, with validation.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::MetricError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// Sentence log-likelihood; higher means more likely.
    Loglik,
    /// Perplexity; lower means more likely.
    Perplexity,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Loglik => "loglik",
            Measure::Perplexity => "perplexity",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Stereo,
    Antistereo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Benchmark {
    Crows,
    Reddit,
    Honest,
}

impl FromStr for Benchmark {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "crows" => Ok(Benchmark::Crows),
            "reddit" => Ok(Benchmark::Reddit),
            "honest" => Ok(Benchmark::Honest),
            other => Err(format!(
                "unknown benchmark `{other}` (expected crows, reddit or honest)"
            )),
        }
    }
}

/// One scored sentence pair. For RedditBias files `score_stereo` is the
/// perplexity of the variant mentioning the minoritized group and
/// `score_anti` that of the dominant-group variant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairScore {
    pub id: String,
    pub benchmark: Benchmark,
    #[serde(default)]
    pub dimension: String,
    pub score_stereo: f64,
    pub score_anti: f64,
    pub measure: Measure,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Binary,
    Queer,
}

impl Group {
    pub fn as_str(self) -> &'static str {
        match self {
            Group::Binary => "binary",
            Group::Queer => "queer",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HonestPrompt {
    pub id: String,
    pub group: Group,
    #[serde(default)]
    pub prompt: String,
    pub completions: Vec<String>,
}

/// Hurtful-language lexicon: category to entries, each entry a token
/// sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HonestLexicon {
    pub categories: BTreeMap<String, Vec<Vec<String>>>,
}

/// Lowercases and splits on anything that is not alphanumeric.
pub fn honest_tokens(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

impl HonestLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, category: &str, word: &str) {
        let toks = honest_tokens(word);
        if toks.is_empty() {
            return;
        }
        let entries = self.categories.entry(category.to_string()).or_default();
        if !entries.contains(&toks) {
            entries.push(toks);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.categories.values().all(Vec::is_empty)
    }

    /// Parses `category<TAB>word` lines; blank lines and `#` comments are
    /// skipped, as is a leading `category<TAB>word` header.
    pub fn parse(text: &str, origin: &str) -> Result<Self, MetricError> {
        let mut lex = HonestLexicon::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((cat, word)) = line.split_once('\t') else {
                return Err(MetricError::Lexicon {
                    path: origin.to_string(),
                    line: i + 1,
                    message: "expected `category<TAB>word`".into(),
                });
            };
            if i == 0 && cat == "category" && word == "word" {
                continue;
            }
            lex.insert(cat.trim(), word.trim());
        }
        Ok(lex)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, MetricError> {
        let path = path.as_ref();
        let text = read(path)?;
        Self::parse(&text, &path.display().to_string())
    }
}

fn read(path: &Path) -> Result<String, MetricError> {
    fs::read_to_string(path).map_err(|source| MetricError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_jsonl<T: for<'de> Deserialize<'de>>(
    text: &str,
    origin: &str,
) -> Result<Vec<T>, MetricError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(line).map_err(|source| MetricError::Parse {
                path: origin.to_string(),
                line: i + 1,
                source,
            })?,
        );
    }
    Ok(out)
}

pub fn parse_scores(text: &str, origin: &str) -> Result<Vec<PairScore>, MetricError> {
    let scores: Vec<PairScore> = parse_jsonl(text, origin)?;
    validate_scores(&scores)?;
    Ok(scores)
}

/// Reads and validates a pair score file.
pub fn read_scores(path: impl AsRef<Path>) -> Result<Vec<PairScore>, MetricError> {
    let path = path.as_ref();
    parse_scores(&read(path)?, &path.display().to_string())
}

/// Checks a score file: non-empty, finite scores, unique ids and one
/// measure throughout. Returns that measure.
pub fn validate_scores(scores: &[PairScore]) -> Result<Measure, MetricError> {
    let first = scores.first().ok_or(MetricError::Empty)?;
    let mut ids = HashSet::new();
    for (index, s) in scores.iter().enumerate() {
        if !s.score_stereo.is_finite() || !s.score_anti.is_finite() {
            return Err(MetricError::NonFinite { index });
        }
        if s.measure != first.measure {
            return Err(MetricError::MixedMeasure);
        }
        if !ids.insert(s.id.as_str()) {
            return Err(MetricError::DuplicateId(s.id.clone()));
        }
    }
    Ok(first.measure)
}

pub fn parse_honest(text: &str, origin: &str) -> Result<Vec<HonestPrompt>, MetricError> {
    let prompts: Vec<HonestPrompt> = parse_jsonl(text, origin)?;
    validate_honest(&prompts)?;
    Ok(prompts)
}

/// Reads and validates a completions file.
pub fn read_honest(path: impl AsRef<Path>) -> Result<Vec<HonestPrompt>, MetricError> {
    let path = path.as_ref();
    parse_honest(&read(path)?, &path.display().to_string())
}

/// Checks a completions file: non-empty, unique ids and the same number
/// `k ≥ 1` of completions per prompt. Returns `k`.
pub fn validate_honest(prompts: &[HonestPrompt]) -> Result<usize, MetricError> {
    let first = prompts.first().ok_or(MetricError::Empty)?;
    let k = first.completions.len();
    if k == 0 {
        return Err(MetricError::NoCompletions);
    }
    let mut ids = HashSet::new();
    for p in prompts {
        if p.completions.len() != k {
            return Err(MetricError::RaggedCompletions {
                id: p.id.clone(),
                expected: k,
                found: p.completions.len(),
            });
        }
        if !ids.insert(p.id.as_str()) {
            return Err(MetricError::DuplicateId(p.id.clone()));
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn score_schema() {
        let text = r#"{"id":"1","benchmark":"crows","dimension":"gender","score_stereo":-10.5,"score_anti":-11,"measure":"loglik","direction":"stereo"}
{"id":"2","benchmark":"crows","dimension":"gender","score_stereo":-3,"score_anti":-2,"measure":"loglik"}"#;
        let s = parse_scores(text, "mem").unwrap();
        assert_eq!(s[0].direction, Some(Direction::Stereo));
        assert_eq!(s[1].direction, None);
        let mixed = text.replace("\"measure\":\"loglik\"}", "\"measure\":\"perplexity\"}");
        assert!(matches!(
            parse_scores(&mixed, "mem"),
            Err(MetricError::MixedMeasure)
        ));
        let dup = text.replace("\"id\":\"2\"", "\"id\":\"1\"");
        assert!(matches!(
            parse_scores(&dup, "mem"),
            Err(MetricError::DuplicateId(_))
        ));
        let bad = text.replace("\"measure\":\"loglik\"}", "\"measure\":\"prob\"}");
        assert!(matches!(
            parse_scores(&bad, "mem"),
            Err(MetricError::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_scores("", "mem"), Err(MetricError::Empty)));
    }

    #[test]
    fn honest_schema() {
        let ok = r#"{"id":"a","group":"binary","prompt":"the woman is","completions":["x","y"]}
{"id":"b","group":"queer","prompt":"the nonbinary person is","completions":["x","z"]}"#;
        assert_eq!(
            validate_honest(&parse_honest(ok, "mem").unwrap()).unwrap(),
            2
        );
        let ragged = ok.replace("[\"x\",\"z\"]", "[\"x\"]");
        assert!(matches!(
            parse_honest(&ragged, "mem"),
            Err(MetricError::RaggedCompletions { found: 1, .. })
        ));
        let bad_group = ok.replace("queer", "other");
        assert!(parse_honest(&bad_group, "mem").is_err());
    }

    #[test]
    fn lexicon_parsing() {
        let lex = HonestLexicon::parse(
            "category\tword\nan\tIdiot\nan\tidiot\nprostitution\tcall girl\n\n# c\n",
            "mem",
        )
        .unwrap();
        assert_eq!(lex.categories["an"], [vec!["idiot".to_string()]]);
        assert_eq!(
            lex.categories["prostitution"],
            [vec!["call".to_string(), "girl".to_string()]]
        );
        assert!(HonestLexicon::parse("oops\n", "mem").is_err());
        assert_eq!(
            honest_tokens("She's a FOOL, really!"),
            ["she", "s", "a", "fool", "really"]
        );
    }
}
