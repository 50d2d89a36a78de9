use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use super::document::{read_documents, Document, DocumentError};

#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct SourceSpec {
    pub name: String,
    pub path: PathBuf,
    pub weight: f64,
}

/// Weighted sources and a token budget.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct CorpusSpec {
    pub token_budget: u64,
    #[serde(default)]
    pub seed: u64,
    pub sources: Vec<SourceSpec>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("invalid corpus spec: {0}")]
    Spec(String),
    #[error("could not read corpus spec {path}: {source}")]
    SpecIo {
        path: String,
        source: std::io::Error,
    },
    #[error("corpus spec {path}: {source}")]
    SpecToml {
        path: String,
        source: toml::de::Error,
    },
    #[error(transparent)]
    Document(#[from] DocumentError),
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.token_budget == 0 {
            return Err(CorpusError::Spec("token_budget must be at least 1".into()));
        }
        if self.sources.is_empty() {
            return Err(CorpusError::Spec("no sources".into()));
        }
        let mut names = HashSet::new();
        for s in &self.sources {
            if !(s.weight.is_finite() && s.weight >= 0.0) {
                return Err(CorpusError::Spec(format!(
                    "source `{}` has invalid weight {}",
                    s.name, s.weight
                )));
            }
            if !names.insert(s.name.as_str()) {
                return Err(CorpusError::Spec(format!("duplicate source `{}`", s.name)));
            }
        }
        let total: f64 = self.sources.iter().map(|s| s.weight).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(CorpusError::Spec(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(())
    }

    /// Parses TOML; relative source paths resolve against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path, origin: &str) -> Result<Self, CorpusError> {
        let mut spec: CorpusSpec =
            toml::from_str(text).map_err(|source| CorpusError::SpecToml {
                path: origin.to_string(),
                source,
            })?;
        for s in &mut spec.sources {
            if s.path.is_relative() {
                s.path = base_dir.join(&s.path);
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CorpusError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| CorpusError::SpecIo {
            path: path.display().to_string(),
            source,
        })?;
        CorpusSpec::parse(
            &text,
            path.parent().unwrap_or(Path::new(".")),
            &path.display().to_string(),
        )
    }
}

/// One row of a composition report.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceComposition {
    pub name: String,
    pub weight: f64,
    pub target_tokens: f64,
    pub tokens: u64,
    pub documents: usize,
    /// Largest selected document, in tokens.
    pub max_doc_tokens: u64,
    pub shortfall: bool,
}

impl SourceComposition {
    pub fn achieved_share(&self, budget: u64) -> f64 {
        self.tokens as f64 / budget as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositionReport {
    pub budget: u64,
    pub sources: Vec<SourceComposition>,
}

impl CompositionReport {
    pub fn total_tokens(&self) -> u64 {
        self.sources.iter().map(|s| s.tokens).sum()
    }

    pub fn total_documents(&self) -> usize {
        self.sources.iter().map(|s| s.documents).sum()
    }

    pub fn to_tsv(&self) -> String {
        let mut out =
            String::from("source\tweight\ttarget_tokens\ttokens\tdocuments\tachieved_share\n");
        for s in &self.sources {
            let _ = writeln!(
                out,
                "{}\t{}\t{:.0}\t{}\t{}\t{:.6}",
                s.name,
                s.weight,
                s.target_tokens,
                s.tokens,
                s.documents,
                s.achieved_share(self.budget)
            );
        }
        let total = self.total_tokens();
        let _ = writeln!(
            out,
            "TOTAL\t{}\t{}\t{}\t{}\t{:.6}",
            self.sources.iter().map(|s| s.weight).sum::<f64>(),
            self.budget,
            total,
            self.total_documents(),
            total as f64 / self.budget as f64
        );
        out
    }
}

/// Selected documents plus their composition.
#[derive(Clone, Debug, PartialEq)]
pub struct Assembly {
    pub documents: Vec<Document>,
    pub report: CompositionReport,
    pub warnings: Vec<String>,
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Indices of a seeded random subset of `docs` whose token sum first
/// reaches `target`; the last document may overshoot.
fn sample_until(docs: &[Document], target: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, u64, u64) {
    let mut order: Vec<usize> = (0..docs.len()).collect();
    order.shuffle(rng);
    let mut picked = Vec::new();
    let mut tokens = 0u64;
    let mut max_doc = 0u64;
    for i in order {
        if tokens as f64 >= target {
            break;
        }
        let n = docs[i].tokens();
        if n == 0 {
            continue;
        }
        picked.push(i);
        tokens += n;
        max_doc = max_doc.max(n);
    }
    (picked, tokens, max_doc)
}

/// Samples documents per source without replacement until each source's
/// share of the budget is met, then shuffles the union. Deterministic for a
/// given spec and seed.
pub fn assemble_from(
    spec: &CorpusSpec,
    sources: &[Vec<Document>],
) -> Result<Assembly, CorpusError> {
    spec.validate()?;
    if sources.len() != spec.sources.len() {
        return Err(CorpusError::Spec(format!(
            "{} sources specified but {} document sets given",
            spec.sources.len(),
            sources.len()
        )));
    }
    let sampled: Vec<(Vec<Document>, SourceComposition)> = spec
        .sources
        .par_iter()
        .zip(sources.par_iter())
        .enumerate()
        .map(|(idx, (s, docs))| {
            let target = s.weight * spec.token_budget as f64;
            let mut rng = rng_for(spec.seed, idx as u64 + 1);
            let (picked, tokens, max_doc) = sample_until(docs, target, &mut rng);
            let chosen: Vec<Document> = picked
                .iter()
                .map(|&i| Document::new(&docs[i].text, &s.name))
                .collect();
            let row = SourceComposition {
                name: s.name.clone(),
                weight: s.weight,
                target_tokens: target,
                tokens,
                documents: chosen.len(),
                max_doc_tokens: max_doc,
                shortfall: (tokens as f64) < target,
            };
            (chosen, row)
        })
        .collect();
    let mut documents = Vec::new();
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for (docs, row) in sampled {
        if row.shortfall {
            warnings.push(format!(
                "source `{}` exhausted: {} of {:.0} target tokens from {} documents",
                row.name, row.tokens, row.target_tokens, row.documents
            ));
        }
        documents.extend(docs);
        rows.push(row);
    }
    documents.shuffle(&mut rng_for(spec.seed, 0));
    Ok(Assembly {
        documents,
        report: CompositionReport {
            budget: spec.token_budget,
            sources: rows,
        },
        warnings,
    })
}

/// Reads every source file and assembles.
pub fn assemble(spec: &CorpusSpec) -> Result<Assembly, CorpusError> {
    let sources = spec
        .sources
        .par_iter()
        .map(|s| read_documents(&s.path))
        .collect::<Result<Vec<_>, _>>()?;
    assemble_from(spec, &sources)
}

/// Seeded document subsample down to `new_budget` tokens that keeps each
/// source's current share; kept documents stay in their original order.
/// A budget at or above the current size returns the corpus unchanged with
/// a warning.
pub fn reduce(docs: &[Document], new_budget: u64, seed: u64) -> Assembly {
    let current: u64 = docs.iter().map(Document::tokens).sum();
    let mut names: Vec<&str> = Vec::new();
    for d in docs {
        if !names.contains(&d.source.as_str()) {
            names.push(&d.source);
        }
    }
    let per_source: Vec<Vec<usize>> = names
        .iter()
        .map(|n| (0..docs.len()).filter(|&i| docs[i].source == *n).collect())
        .collect();
    let source_tokens: Vec<u64> = per_source
        .iter()
        .map(|idx| idx.iter().map(|&i| docs[i].tokens()).sum())
        .collect();

    if new_budget >= current || current == 0 {
        let rows = names
            .iter()
            .zip(&per_source)
            .zip(&source_tokens)
            .map(|((n, idx), &t)| SourceComposition {
                name: n.to_string(),
                weight: if current == 0 {
                    0.0
                } else {
                    t as f64 / current as f64
                },
                target_tokens: t as f64,
                tokens: t,
                documents: idx.len(),
                max_doc_tokens: idx.iter().map(|&i| docs[i].tokens()).max().unwrap_or(0),
                shortfall: false,
            })
            .collect();
        return Assembly {
            documents: docs.to_vec(),
            report: CompositionReport {
                budget: current.max(1),
                sources: rows,
            },
            warnings: vec![format!(
                "target {new_budget} tokens is not below the current {current}; corpus left unchanged"
            )],
        };
    }

    let mut keep = vec![false; docs.len()];
    let mut rows = Vec::new();
    for (k, (name, idx)) in names.iter().zip(&per_source).enumerate() {
        let share = source_tokens[k] as f64 / current as f64;
        let target = share * new_budget as f64;
        let subset: Vec<Document> = idx.iter().map(|&i| docs[i].clone()).collect();
        let (picked, tokens, max_doc) =
            sample_until(&subset, target, &mut rng_for(seed, k as u64 + 1));
        for p in &picked {
            keep[idx[*p]] = true;
        }
        rows.push(SourceComposition {
            name: name.to_string(),
            weight: share,
            target_tokens: target,
            tokens,
            documents: picked.len(),
            max_doc_tokens: max_doc,
            shortfall: false,
        });
    }
    Assembly {
        documents: docs
            .iter()
            .zip(&keep)
            .filter(|(_, k)| **k)
            .map(|(d, _)| d.clone())
            .collect(),
        report: CompositionReport {
            budget: new_budget,
            sources: rows,
        },
        warnings: Vec::new(),
    }
}
