//! Bias benchmark scoring from model score files: CrowS-Pairs preference,
//! RedditBias perplexity t-tests and HONEST hurtful-completion rates.

mod crows;
mod honest;
mod reddit;
mod scores;
pub mod special;
mod ttest;

use std::fmt::Write as _;
use std::io;

use serde::Serialize;

pub use crows::crows_metric;
pub use honest::{honest_by_group, honest_score, hurtful_categories, HonestReport};
pub use reddit::{
    format_t, reddit_pairs, reddit_report, stars, PerplexityPairs, RedditReport, SIGNIFICANCE,
};
pub use scores::{
    honest_tokens, parse_honest, parse_scores, read_honest, read_scores, validate_honest,
    validate_scores, Benchmark, Direction, Group, HonestLexicon, HonestPrompt, Measure, PairScore,
};
pub use ttest::{paired_ttest, ttest, unpaired_ttest, TTestKind, TTestResult};

#[derive(Debug, thiserror::Error)]
pub enum MetricError {
    #[error("no records")]
    Empty,
    #[error("a t-test needs at least 2 pairs, got {n}")]
    TooFewPairs { n: usize },
    #[error("all differences equal {mean_diff}; t is undefined")]
    DegenerateT { mean_diff: f64 },
    #[error("record {index} has a non-finite score")]
    NonFinite { index: usize },
    #[error("expected {expected} scores, found {found}")]
    WrongMeasure { expected: Measure, found: Measure },
    #[error("score file mixes measures")]
    MixedMeasure,
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("prompt `{id}` has {found} completions, expected {expected}")]
    RaggedCompletions {
        id: String,
        expected: usize,
        found: usize,
    },
    #[error("prompts have no completions")]
    NoCompletions,
    #[error("lexicon is empty")]
    EmptyLexicon,
    #[error("no `{0}` records in score file")]
    MissingDimension(String),
    #[error("{path}: line {line}: {source}")]
    Parse {
        path: String,
        line: usize,
        source: serde_json::Error,
    },
    #[error("{path}: line {line}: {message}")]
    Lexicon {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

/// A metric's headline value with named sub-scores.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricReport {
    pub metric: String,
    pub value: f64,
    #[serde(serialize_with = "ordered_map")]
    pub sub_scores: Vec<(String, f64)>,
}

fn ordered_map<S: serde::Serializer>(entries: &[(String, f64)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(entries.iter().map(|(k, v)| (k, v)))
}

impl MetricReport {
    pub fn new(metric: &str, value: f64) -> Self {
        MetricReport {
            metric: metric.to_string(),
            value,
            sub_scores: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, value: f64) {
        self.sub_scores.push((name.to_string(), value));
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.sub_scores
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }
}

/// One row of the bias results table; absent cells render as `-`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResultsRow {
    pub model: String,
    pub epochs: Option<String>,
    pub fine_tuning: Option<String>,
    pub reddit: Option<RedditReport>,
    pub crows: Option<MetricReport>,
    pub honest_binary: Option<f64>,
    pub honest_queer: Option<f64>,
}

const RESULTS_HEADER: [&str; 10] = [
    "model",
    "epochs",
    "FT",
    "t_gender",
    "t_queerness",
    "CrowS metric",
    "stereo",
    "anti-st.",
    "HONEST binary",
    "HONEST queer",
];

fn cell<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_else(|| "-".to_string())
}

/// Markdown table with RedditBias t values (starred when p < 0.05), the
/// CrowS metric with its stereo and anti-stereo sub-scores, and HONEST for
/// binary and queer prompts.
pub fn results_table(rows: &[ResultsRow]) -> String {
    let mut out = format!(
        "| {} |\n|{}\n",
        RESULTS_HEADER.join(" | "),
        "---|".repeat(RESULTS_HEADER.len())
    );
    for r in rows {
        let pct = |v: f64| format!("{v:.2}");
        let honest = |v: f64| format!("{v:.3}");
        let crows = r.crows.as_ref();
        let cells = [
            r.model.clone(),
            cell(r.epochs.as_deref(), str::to_string),
            cell(r.fine_tuning.as_deref(), str::to_string),
            cell(r.reddit.map(|x| x.gender), |t| format_t(&t)),
            cell(r.reddit.map(|x| x.queerness), |t| format_t(&t)),
            cell(crows.map(|c| c.value), pct),
            cell(crows.and_then(|c| c.get("stereo")), pct),
            cell(crows.and_then(|c| c.get("anti_stereo")), pct),
            cell(r.honest_binary, honest),
            cell(r.honest_queer, honest),
        ];
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
    out
}
