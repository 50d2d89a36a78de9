//! The `neutralex` command line: one subcommand per pipeline stage.
//!
//! Exit codes: 0 on success, 1 on a runtime error, 2 on a usage error.
//! Logs go to standard error; outputs go to the paths given by flags.

mod commands;
mod config;

use std::ffi::OsString;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub use config::{Config, MetricsConfig, MineConfig, RewriteConfig, VerifyConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Candidates(#[from] crate::extraction::CandidateIoError),
    #[error(transparent)]
    Catalogue(#[from] crate::lexicon::CatalogueError),
    #[error(transparent)]
    Verify(#[from] crate::verification::VerifyError),
    #[error(transparent)]
    Review(#[from] crate::verification::ReviewError),
    #[error(transparent)]
    Cache(#[from] crate::verification::CacheError),
    #[error(transparent)]
    Corpus(#[from] crate::corpus::CorpusError),
    #[error(transparent)]
    Document(#[from] crate::corpus::DocumentError),
    #[error(transparent)]
    Annotation(#[from] crate::textkit::AnnotationError),
    #[error(transparent)]
    Metric(#[from] crate::biasmetrics::MetricError),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "neutralex",
    version,
    about = "Gendered-term mining, neutral rewriting and bias metrics"
)]
#[command(arg_required_else_help = true)]
pub struct Cli {
    /// TOML config file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine affixed singular nouns from corpora into a candidates file.
    Mine(MineArgs),
    /// Check round-1 survivors against the dictionary.
    Verify(VerifyArgs),
    /// Write a review CSV for the candidates awaiting a human decision.
    ReviewExport(ReviewExportArgs),
    /// Apply a filled-in review CSV to the candidates.
    ReviewImport(ReviewImportArgs),
    /// Build the full catalogue (masculine completion, plurals) from a seed TSV.
    Catalogue(CatalogueArgs),
    /// Replace catalogue terms and, optionally, neutralise pronouns.
    Rewrite(RewriteArgs),
    /// Sample a weighted multi-source corpus to a token budget.
    Assemble(AssembleArgs),
    /// Shrink an assembled corpus, keeping its source proportions.
    Reduce(ReduceArgs),
    /// Keep only the lines in which a catalogue term is replaced.
    Tiny(TinyArgs),
    /// Score CrowS-Pairs, RedditBias or HONEST output files.
    Metrics(MetricsArgs),
    /// Frequency, verification-round and skew tables.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct MineArgs {
    /// Corpus files: JSON lines with a `text` field, or plain text.
    #[arg(long = "input", required = true, num_args = 1..)]
    pub inputs: Vec<PathBuf>,
    /// Candidates JSON-lines output.
    #[arg(long)]
    pub out: PathBuf,
    /// Comma-separated affix labels (default: all ten).
    #[arg(long, value_delimiter = ',')]
    pub affixes: Option<Vec<String>>,
    /// Log a progress checkpoint every N megabytes of input.
    #[arg(long)]
    pub checkpoint_mb: Option<u64>,
    /// Inputs are pre-annotated JSON lines (`text`, `tokens`).
    #[arg(long)]
    pub annotated: bool,
    /// Gazetteer of named-entity forms, one per line.
    #[arg(long)]
    pub gazetteer: Option<PathBuf>,
    /// Apply the automatic round-1 filters with this known-word list.
    #[arg(long)]
    pub known_words: Option<PathBuf>,
    /// Apply the automatic round-1 filters with this name list.
    #[arg(long)]
    pub names: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Candidates JSON lines.
    #[arg(long)]
    pub candidates: PathBuf,
    /// Updated candidates JSON-lines output.
    #[arg(long)]
    pub out: PathBuf,
    /// Append-only lookup cache (JSON lines).
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Offline wordlist (default: the bundled list).
    #[arg(long)]
    pub offline: Option<PathBuf>,
    /// Query the remote dictionary (key read from the configured env var).
    #[arg(long)]
    pub remote: bool,
    /// Remote requests per second.
    #[arg(long)]
    pub rate_limit: Option<f64>,
    /// Retries per remote lookup after a transient failure.
    #[arg(long)]
    pub max_retries: Option<u32>,
    /// Write one verdict per lookup as JSON lines.
    #[arg(long)]
    pub verdicts: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReviewExportArgs {
    /// Candidates JSON lines.
    #[arg(long)]
    pub candidates: PathBuf,
    /// `r1` (after filtering) or `r3` (after dictionary verification).
    #[arg(long)]
    pub stage: crate::verification::ReviewStage,
    /// Review CSV output.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReviewImportArgs {
    /// Candidates JSON lines.
    #[arg(long)]
    pub candidates: PathBuf,
    /// Filled-in review CSV.
    #[arg(long)]
    pub review: PathBuf,
    /// `r1` or `r3`.
    #[arg(long)]
    pub stage: crate::verification::ReviewStage,
    /// Updated candidates JSON-lines output.
    #[arg(long)]
    pub out: PathBuf,
    /// With `--stage r3`, also write the accepted surfaces, one per line.
    #[arg(long)]
    pub accepted: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CatalogueArgs {
    /// Seed catalogue TSV (singular pairs plus any plural overrides).
    #[arg(long)]
    pub input: PathBuf,
    /// Full catalogue TSV output.
    #[arg(long)]
    pub out: PathBuf,
    /// Surface forms never to pluralise.
    #[arg(long)]
    pub suppress: Option<PathBuf>,
    /// Skip masculine completion.
    #[arg(long)]
    pub no_masculine: bool,
    /// Skip plural expansion.
    #[arg(long)]
    pub no_plurals: bool,
    /// Write the affix skew table as Markdown.
    #[arg(long)]
    pub skew_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RewriteArgs {
    /// Catalogue TSV (default: the bundled catalogue).
    #[arg(long)]
    pub catalogue: Option<PathBuf>,
    /// `rep` (terms only) or `rep-neutral` (terms and pronouns).
    #[arg(long)]
    pub mode: Option<crate::rewriter::Mode>,
    /// Input lines: plain text or JSON lines with a `text` field.
    #[arg(long)]
    pub input: PathBuf,
    /// Rewritten output; the extension selects plain text or JSON lines.
    #[arg(long)]
    pub out: PathBuf,
    /// Gazetteer of named-entity forms, one per line.
    #[arg(long)]
    pub gazetteer: Option<PathBuf>,
    /// Write the edit records as JSON lines.
    #[arg(long)]
    pub emit_edits: Option<PathBuf>,
    /// Input is pre-annotated JSON lines (`text`, `tokens`).
    #[arg(long)]
    pub annotated: bool,
}

#[derive(Debug, Args)]
pub struct AssembleArgs {
    /// Corpus spec TOML (budget, sources, weights).
    #[arg(long)]
    pub spec: PathBuf,
    /// Shuffle seed (required here or in the config).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Assembled documents; the extension selects plain text or JSON lines.
    #[arg(long)]
    pub out: PathBuf,
    /// Composition report TSV.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Assembled documents to reduce.
    #[arg(long)]
    pub input: PathBuf,
    /// New token budget.
    #[arg(long)]
    pub budget: u64,
    /// Shuffle seed (required here or in the config).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Reduced documents.
    #[arg(long)]
    pub out: PathBuf,
    /// Composition report TSV.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TinyArgs {
    /// Corpus files: JSON lines with a `text` field, or plain text.
    #[arg(long = "input", required = true, num_args = 1..)]
    pub inputs: Vec<PathBuf>,
    /// Catalogue TSV (default: the bundled catalogue).
    #[arg(long)]
    pub catalogue: Option<PathBuf>,
    /// Kept lines; the extension selects plain text or JSON lines.
    #[arg(long)]
    pub out: PathBuf,
    /// Gazetteer of named-entity forms, one per line.
    #[arg(long)]
    pub gazetteer: Option<PathBuf>,
    /// Per-source line counts TSV.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// `crows`, `reddit` or `honest`.
    #[arg(long)]
    pub benchmark: crate::biasmetrics::Benchmark,
    /// Score file (or completions file for HONEST).
    #[arg(long)]
    pub scores: PathBuf,
    /// HONEST lexicon TSV.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Row label in the results table.
    #[arg(long)]
    pub model: Option<String>,
    /// RedditBias: pooled two-sample t-test instead of the paired test.
    #[arg(long)]
    pub unpaired: bool,
    /// Markdown output (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Metric report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Candidates JSON lines for the frequency and rounds tables.
    #[arg(long)]
    pub candidates: Option<PathBuf>,
    /// Catalogue TSV for the affix skew table.
    #[arg(long)]
    pub catalogue: Option<PathBuf>,
    /// Rows per affix in the frequency table.
    #[arg(long, default_value_t = 10)]
    pub top: usize,
    /// Frequency table TSV.
    #[arg(long)]
    pub freq_out: Option<PathBuf>,
    /// Rounds table TSV.
    #[arg(long)]
    pub rounds_out: Option<PathBuf>,
    /// Markdown output (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(n) = cli.workers.or(config.workers) {
        if n == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        if rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_err()
        {
            log::debug!("thread pool already initialised");
        }
    }
    commands::dispatch(cli.command, &config)
}

/// Parses `args`, runs the command and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .try_init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn all_subcommands_exist() {
        let names: Vec<String> = Cli::command()
            .get_subcommands()
            .map(|c| c.get_name().to_string())
            .collect();
        for want in [
            "mine",
            "verify",
            "review-export",
            "review-import",
            "catalogue",
            "rewrite",
            "assemble",
            "reduce",
            "tiny",
            "metrics",
            "report",
        ] {
            assert!(names.iter().any(|n| n == want), "{want}");
        }
    }

    #[test]
    fn usage_errors_are_code_2() {
        assert!(Cli::try_parse_from(["neutralex"]).is_err());
        assert!(Cli::try_parse_from([
            "neutralex",
            "rewrite",
            "--mode",
            "bogus",
            "--input",
            "a",
            "--out",
            "b"
        ])
        .is_err());
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Runtime("x".into()).exit_code(), 1);
    }
}
