use std::collections::HashSet;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use log::{info, warn};
use rayon::prelude::*;

use crate::biasmetrics::{
    crows_metric, honest_score, read_honest, read_scores, reddit_pairs, reddit_report,
    results_table, Benchmark, HonestLexicon, MetricReport, ResultsRow, TTestKind,
};
use crate::corpus::{
    assemble, read_documents, reduce, tiny_filter, write_documents, CorpusSpec, DocFormat, Document,
};
use crate::extraction::{
    frequency_table, read_candidates, round1_filter, rounds_report, write_candidates, AffixSet,
    Miner, DEFAULT_CHECKPOINT_MB,
};
use crate::lexicon::{
    complete_masculine, expand_plurals, load_catalogue, parse_suppression_list, skew_report,
    write_catalogue, Catalogue, Inflector,
};
use crate::rewriter::{rewrite_all, EditKind, Mode};
use crate::textkit::{Gazetteer, HeuristicTagger, Line};
use crate::verification::{
    apply_review, export_review, import_review, round2_verify, round3_finalize, DictCache,
    HttpDictionary, ReviewStage, Verifier,
};
use crate::wordlist::{load_wordlist, parse_wordlist};

use super::{
    AssembleArgs, CatalogueArgs, CliError, Command, Config, MetricsArgs, MineArgs, ReduceArgs,
    ReportArgs, ReviewExportArgs, ReviewImportArgs, RewriteArgs, TinyArgs, VerifyArgs,
};

/// Catalogue used when no `--catalogue` is given.
pub const BUNDLED_CATALOGUE: &str = include_str!("../../data/catalogue.tsv");
/// Offline dictionary used when no `--offline` list is given.
pub const BUNDLED_DICTIONARY: &str = include_str!("../../data/offline_dictionary.txt");
/// Plural suppression list used when no `--suppress` list is given.
pub const BUNDLED_SUPPRESS: &str = include_str!("../../data/suppress.txt");

pub fn dispatch(command: Command, cfg: &Config) -> Result<(), CliError> {
    match command {
        Command::Mine(a) => mine(a, cfg),
        Command::Verify(a) => verify(a, cfg),
        Command::ReviewExport(a) => review_export(a),
        Command::ReviewImport(a) => review_import(a),
        Command::Catalogue(a) => catalogue(a),
        Command::Rewrite(a) => rewrite(a, cfg),
        Command::Assemble(a) => assemble_cmd(a, cfg),
        Command::Reduce(a) => reduce_cmd(a, cfg),
        Command::Tiny(a) => tiny(a, cfg),
        Command::Metrics(a) => metrics(a, cfg),
        Command::Report(a) => report(a),
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(io_err(path))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(io_err(path))
}

/// Writes to `path`, or to standard output without one.
fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(mut w: BufWriter<File>, path: &Path) -> Result<(), CliError> {
    w.flush().map_err(io_err(path))
}

fn wordlist(path: &Path) -> Result<HashSet<String>, CliError> {
    load_wordlist(path).map_err(io_err(path))
}

fn gazetteer(path: Option<&Path>) -> Result<Option<Gazetteer>, CliError> {
    path.map(|p| Gazetteer::load(p).map_err(io_err(p)))
        .transpose()
}

fn load_cat(path: Option<&Path>) -> Result<Catalogue, CliError> {
    let cat = match path {
        Some(p) => load_catalogue(p)?,
        None => Catalogue::parse_tsv(BUNDLED_CATALOGUE)?,
    };
    info!("catalogue: {} pairs", cat.len());
    Ok(cat)
}

fn stem(path: &Path) -> &str {
    path.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("corpus")
}

fn read_annotated(path: &Path) -> Result<Vec<Line>, CliError> {
    let text = read_text(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            Line::from_annotated(l, stem(path))
                .map_err(|e| CliError::Runtime(format!("{}: line {}: {e}", path.display(), i + 1)))
        })
        .collect()
}

/// Tags every non-blank line of every document, in order.
fn analyze_documents(docs: &[Document], gaz: Option<&Gazetteer>) -> Vec<Line> {
    let raw: Vec<(&str, &str)> = docs
        .iter()
        .flat_map(|d| d.text.lines().map(move |l| (l, d.source.as_str())))
        .filter(|(l, _)| !l.trim().is_empty())
        .collect();
    raw.par_iter()
        .map(|(l, s)| Line::analyze(l, s, &HeuristicTagger, gaz))
        .collect()
}

fn mine(a: MineArgs, cfg: &Config) -> Result<(), CliError> {
    let affixes = match a.affixes.or_else(|| cfg.mine.affixes.clone()) {
        Some(labels) => AffixSet::parse(&labels).map_err(|e| CliError::Usage(e.to_string()))?,
        None => AffixSet::all(),
    };
    let mb = a
        .checkpoint_mb
        .or(cfg.mine.checkpoint_mb)
        .unwrap_or(DEFAULT_CHECKPOINT_MB);
    let gaz = gazetteer(a.gazetteer.as_deref().or(cfg.gazetteer.as_deref()))?;
    let known = a.known_words.or_else(|| cfg.mine.known_words.clone());
    let names = a.names.or_else(|| cfg.mine.names.clone());

    let mut miner = Miner::new(affixes, mb);
    for path in &a.inputs {
        let lines = if a.annotated {
            read_annotated(path)?
        } else {
            analyze_documents(&read_documents(path)?, gaz.as_ref())
        };
        for line in &lines {
            if let Some(cp) = miner.feed(line) {
                info!(
                    "checkpoint {}: {} bytes read, {} distinct candidates",
                    cp.index, cp.bytes, cp.distinct
                );
            }
        }
        info!("{}: {} lines", path.display(), lines.len());
    }
    let counts = miner.finish();
    let mut cands = counts.to_candidates();
    info!(
        "{} matched tokens, {} distinct candidates",
        counts.matched_tokens(),
        cands.len()
    );
    if known.is_some() || names.is_some() {
        let known = known
            .as_deref()
            .map(wordlist)
            .transpose()?
            .unwrap_or_default();
        let names = names
            .as_deref()
            .map(wordlist)
            .transpose()?
            .unwrap_or_default();
        round1_filter(&mut cands, &known, &names);
        let passed = cands.iter().filter(|c| !c.status.is_reject()).count();
        info!("round 1 filters: {passed} of {} pass", cands.len());
    }
    let mut w = create(&a.out)?;
    write_candidates(&mut w, &cands).map_err(io_err(&a.out))?;
    finish(w, &a.out)
}

fn verify(a: VerifyArgs, cfg: &Config) -> Result<(), CliError> {
    let mut cands = read_candidates(&a.candidates)?;
    let cache = match a.cache.as_deref().or(cfg.verify.cache.as_deref()) {
        Some(p) => DictCache::open(p)?,
        None => DictCache::in_memory(),
    };
    let offline = match a.offline.as_deref().or(cfg.verify.offline.as_deref()) {
        Some(p) => wordlist(p)?,
        None => parse_wordlist(BUNDLED_DICTIONARY),
    };
    let mut verifier = Verifier::new(cache).with_offline(offline);
    if a.remote || cfg.verify.remote == Some(true) {
        let mut rc = cfg.verify.dictionary.clone();
        if let Some(r) = a.rate_limit {
            rc.rate_limit = r;
        }
        if let Some(m) = a.max_retries {
            rc.max_retries = m;
        }
        if rc.rate_limit.is_nan() || rc.rate_limit <= 0.0 {
            return Err(CliError::Usage("--rate-limit must be positive".into()));
        }
        let client = HttpDictionary::throttled(&rc);
        if !client.inner().has_key() {
            return Err(CliError::Usage(format!(
                "remote lookups need the {} environment variable",
                rc.key_env
            )));
        }
        verifier = verifier.with_remote(client);
    }
    let verdicts = round2_verify(&mut cands, &verifier)?;
    let found = verdicts.iter().filter(|v| v.found).count();
    info!(
        "{} lookups, {found} found, {} remote calls",
        verdicts.len(),
        verifier.remote_calls()
    );
    let mut w = create(&a.out)?;
    write_candidates(&mut w, &cands).map_err(io_err(&a.out))?;
    finish(w, &a.out)?;
    if let Some(path) = &a.verdicts {
        let mut w = create(path)?;
        for v in &verdicts {
            serde_json::to_writer(&mut w, v).map_err(|e| CliError::Runtime(e.to_string()))?;
            w.write_all(b"\n").map_err(io_err(path))?;
        }
        finish(w, path)?;
    }
    Ok(())
}

fn review_export(a: ReviewExportArgs) -> Result<(), CliError> {
    let cands = read_candidates(&a.candidates)?;
    let mut w = create(&a.out)?;
    let n = export_review(&mut w, &cands, a.stage)?;
    finish(w, &a.out)?;
    info!("{n} candidates exported for review");
    Ok(())
}

fn review_import(a: ReviewImportArgs) -> Result<(), CliError> {
    let mut cands = read_candidates(&a.candidates)?;
    let file = File::open(&a.review).map_err(io_err(&a.review))?;
    let import = import_review(file)?;
    for w in &import.warnings {
        warn!("{w}");
    }
    match a.stage {
        ReviewStage::Round1 => {
            if a.accepted.is_some() {
                return Err(CliError::Usage(
                    "--accepted applies to --stage r3 only".into(),
                ));
            }
            if !import.undecided.is_empty() {
                warn!(
                    "{} surfaces without a decision stay pending",
                    import.undecided.len()
                );
            }
            for w in apply_review(&mut cands, &import.decisions, ReviewStage::Round1) {
                warn!("{w}");
            }
        }
        ReviewStage::Round3 => {
            let accepted = round3_finalize(&mut cands, &import.decisions)?;
            info!("{} terms accepted", accepted.len());
            if let Some(path) = &a.accepted {
                let mut text = String::new();
                for s in &accepted {
                    text.push_str(s);
                    text.push('\n');
                }
                write_text(path, &text)?;
            }
        }
    }
    let mut w = create(&a.out)?;
    write_candidates(&mut w, &cands).map_err(io_err(&a.out))?;
    finish(w, &a.out)
}

fn catalogue(a: CatalogueArgs) -> Result<(), CliError> {
    let mut cat = load_catalogue(&a.input)?;
    let seed_len = cat.len();
    if !a.no_masculine {
        cat = complete_masculine(&cat)?;
    }
    if !a.no_plurals {
        let suppress = match &a.suppress {
            Some(p) => parse_suppression_list(&read_text(p)?),
            None => parse_suppression_list(BUNDLED_SUPPRESS),
        };
        cat = expand_plurals(&cat, &suppress, &Inflector::english())?;
    }
    info!("{seed_len} seed pairs, {} after construction", cat.len());
    write_catalogue(&cat, &a.out)?;
    if let Some(p) = &a.skew_out {
        write_text(p, &skew_report(&cat).to_markdown())?;
    }
    Ok(())
}

fn rewrite(a: RewriteArgs, cfg: &Config) -> Result<(), CliError> {
    let mode = match (a.mode, &cfg.rewrite.mode) {
        (Some(m), _) => m,
        (None, Some(s)) => s.parse::<Mode>().map_err(CliError::Usage)?,
        (None, None) => {
            return Err(CliError::Usage(
                "rewrite needs --mode rep|rep-neutral".into(),
            ))
        }
    };
    let cat = load_cat(a.catalogue.as_deref().or(cfg.catalogue.as_deref()))?;
    let gaz = gazetteer(a.gazetteer.as_deref().or(cfg.gazetteer.as_deref()))?;

    // Each record is split into lines; `shape` remembers how many lines and
    // which source belong to each output record.
    let (lines, shape): (Vec<Line>, Vec<(usize, String)>) = if a.annotated {
        let lines = read_annotated(&a.input)?;
        let shape = lines.iter().map(|l| (1, l.source_id.clone())).collect();
        (lines, shape)
    } else {
        let docs = read_documents(&a.input)?;
        let shape = docs
            .iter()
            .map(|d| (d.text.split('\n').count(), d.source.clone()))
            .collect();
        let raw: Vec<(&str, &str)> = docs
            .iter()
            .flat_map(|d| d.text.split('\n').map(move |l| (l, d.source.as_str())))
            .collect();
        let lines = raw
            .par_iter()
            .map(|(l, s)| Line::analyze(l, s, &HeuristicTagger, gaz.as_ref()))
            .collect();
        (lines, shape)
    };
    let rewrites = rewrite_all(&lines, &cat, mode);
    let mut texts = rewrites.iter().map(|r| r.text.as_str());
    let docs: Vec<Document> = shape
        .iter()
        .map(|(n, source)| {
            let text: Vec<&str> = texts.by_ref().take(*n).collect();
            Document::new(&text.join("\n"), source)
        })
        .collect();
    let count = |k| rewrites.iter().map(|r| r.count(k)).sum::<usize>();
    info!(
        "{} lines ({mode}): {} term, {} pronoun, {} agreement edits",
        lines.len(),
        count(EditKind::Term),
        count(EditKind::Pronoun),
        count(EditKind::Agreement)
    );
    let mut w = create(&a.out)?;
    write_documents(&mut w, &docs, DocFormat::for_path(&a.out)).map_err(io_err(&a.out))?;
    finish(w, &a.out)?;
    if let Some(path) = &a.emit_edits {
        let mut w = create(path)?;
        for e in rewrites.iter().flat_map(|r| &r.edits) {
            serde_json::to_writer(&mut w, e).map_err(|e| CliError::Runtime(e.to_string()))?;
            w.write_all(b"\n").map_err(io_err(path))?;
        }
        finish(w, path)?;
    }
    Ok(())
}

fn seed(flag: Option<u64>, cfg: &Config, cmd: &str) -> Result<u64, CliError> {
    flag.or(cfg.seed)
        .ok_or_else(|| CliError::Usage(format!("{cmd} needs --seed (or `seed` in the config)")))
}

fn write_docs(path: &Path, docs: &[Document]) -> Result<(), CliError> {
    let mut w = create(path)?;
    write_documents(&mut w, docs, DocFormat::for_path(path)).map_err(io_err(path))?;
    finish(w, path)
}

fn assemble_cmd(a: AssembleArgs, cfg: &Config) -> Result<(), CliError> {
    let seed = seed(a.seed, cfg, "assemble")?;
    let mut spec = CorpusSpec::load(&a.spec)?;
    spec.seed = seed;
    let out = assemble(&spec)?;
    for w in &out.warnings {
        warn!("{w}");
    }
    info!(
        "{} documents, {} tokens (budget {})",
        out.report.total_documents(),
        out.report.total_tokens(),
        spec.token_budget
    );
    write_docs(&a.out, &out.documents)?;
    if let Some(p) = &a.report {
        write_text(p, &out.report.to_tsv())?;
    }
    Ok(())
}

fn reduce_cmd(a: ReduceArgs, cfg: &Config) -> Result<(), CliError> {
    let seed = seed(a.seed, cfg, "reduce")?;
    if a.budget == 0 {
        return Err(CliError::Usage("--budget must be at least 1".into()));
    }
    let docs = read_documents(&a.input)?;
    let out = reduce(&docs, a.budget, seed);
    for w in &out.warnings {
        warn!("{w}");
    }
    info!(
        "{} documents, {} tokens",
        out.report.total_documents(),
        out.report.total_tokens()
    );
    write_docs(&a.out, &out.documents)?;
    if let Some(p) = &a.report {
        write_text(p, &out.report.to_tsv())?;
    }
    Ok(())
}

fn tiny(a: TinyArgs, cfg: &Config) -> Result<(), CliError> {
    let cat = load_cat(a.catalogue.as_deref().or(cfg.catalogue.as_deref()))?;
    let gaz = gazetteer(a.gazetteer.as_deref().or(cfg.gazetteer.as_deref()))?;
    let mut docs = Vec::new();
    for p in &a.inputs {
        docs.extend(read_documents(p)?);
    }
    let (kept, report) = tiny_filter(&docs, &cat, &HeuristicTagger, gaz.as_ref());
    info!(
        "{} of {} lines kept",
        kept.len(),
        report.sources.iter().map(|s| s.lines_in).sum::<usize>()
    );
    write_docs(&a.out, &kept)?;
    if let Some(p) = &a.report {
        write_text(p, &report.to_tsv())?;
    }
    Ok(())
}

fn metrics(a: MetricsArgs, cfg: &Config) -> Result<(), CliError> {
    let mut row = ResultsRow {
        model: a
            .model
            .clone()
            .or_else(|| cfg.metrics.model.clone())
            .unwrap_or_else(|| "model".into()),
        ..ResultsRow::default()
    };
    let mut details = String::new();
    let report: MetricReport = match a.benchmark {
        Benchmark::Crows => {
            let r = crows_metric(&read_scores(&a.scores)?)?;
            row.crows = Some(r.clone());
            r
        }
        Benchmark::Reddit => {
            let kind = if a.unpaired {
                TTestKind::Unpaired
            } else {
                TTestKind::Paired
            };
            let (g, q) = reddit_pairs(&read_scores(&a.scores)?)?;
            let r = reddit_report(&g, &q, kind)?;
            row.reddit = Some(r);
            details.push_str("\n| dimension | n | mean diff | t | p |\n|---|---|---|---|---|\n");
            for (name, t) in [("gender", r.gender), ("queerness", r.queerness)] {
                details.push_str(&format!(
                    "| {name} | {} | {:.4} | {:.4} | {:.4} |\n",
                    t.n, t.mean_diff, t.t, t.p
                ));
            }
            r.to_metric_report()
        }
        Benchmark::Honest => {
            let lex_path = a
                .lexicon
                .as_deref()
                .or(cfg.metrics.lexicon.as_deref())
                .ok_or_else(|| CliError::Usage("honest needs --lexicon".into()))?;
            let lexicon = HonestLexicon::load(lex_path)?;
            let r = honest_score(&read_honest(&a.scores)?, &lexicon)?;
            row.honest_binary = r.per_group.get("binary").copied();
            row.honest_queer = r.per_group.get("queer").copied();
            details.push_str(&format!(
                "\nglobal HONEST: {:.4} ({} prompts, k = {})\n\n",
                r.global, r.prompts, r.k
            ));
            details.push_str("| category | score |\n|---|---|\n");
            for (c, v) in &r.per_category {
                details.push_str(&format!("| {c} | {v:.4} |\n"));
            }
            r.to_metric_report()
        }
    };
    let markdown = format!("{}{details}", results_table(&[row]));
    emit(a.out.as_deref(), &markdown)?;
    if let Some(p) = &a.json {
        let json =
            serde_json::to_string_pretty(&report).map_err(|e| CliError::Runtime(e.to_string()))?;
        write_text(p, &(json + "\n"))?;
    }
    Ok(())
}

fn report(a: ReportArgs) -> Result<(), CliError> {
    if a.candidates.is_none() && a.catalogue.is_none() {
        return Err(CliError::Usage(
            "report needs --candidates and/or --catalogue".into(),
        ));
    }
    if a.top == 0 {
        return Err(CliError::Usage("--top must be at least 1".into()));
    }
    let mut md = String::new();
    if let Some(path) = &a.candidates {
        let cands = read_candidates(path)?;
        let freq = frequency_table(&cands, a.top);
        let rounds = rounds_report(&cands);
        md.push_str(&format!(
            "## Top {} candidates per affix\n\n{}\n",
            a.top,
            freq.to_markdown()
        ));
        md.push_str(&format!(
            "## Verification rounds\n\n{}\n",
            rounds.to_markdown()
        ));
        if let Some(p) = &a.freq_out {
            write_text(p, &freq.to_tsv())?;
        }
        if let Some(p) = &a.rounds_out {
            write_text(p, &rounds.to_tsv())?;
        }
    }
    if let Some(path) = &a.catalogue {
        let cat = load_catalogue(path)?;
        md.push_str(&format!(
            "## Catalogue affix skew\n\n{}\n",
            skew_report(&cat).to_markdown()
        ));
    }
    emit(a.out.as_deref(), &md)
}
