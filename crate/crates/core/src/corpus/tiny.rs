use std::fmt::Write as _;

use rayon::prelude::*;

use crate::lexicon::Catalogue;
use crate::rewriter::replace_terms;
use crate::textkit::{Gazetteer, Line, Tagger};

use super::document::{token_count, Document};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TinySource {
    pub name: String,
    pub lines_in: usize,
    pub lines_kept: usize,
    pub tokens_kept: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TinyReport {
    pub sources: Vec<TinySource>,
}

impl TinyReport {
    pub fn tokens_kept(&self) -> u64 {
        self.sources.iter().map(|s| s.tokens_kept).sum()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("source\tlines_in\tlines_kept\ttokens_kept\n");
        for s in &self.sources {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                s.name, s.lines_in, s.lines_kept, s.tokens_kept
            );
        }
        let lines_in: usize = self.sources.iter().map(|s| s.lines_in).sum();
        let kept: usize = self.sources.iter().map(|s| s.lines_kept).sum();
        let _ = writeln!(out, "TOTAL\t{lines_in}\t{kept}\t{}", self.tokens_kept());
        out
    }
}

/// Keeps the source lines (documents split on newlines) where term
/// replacement makes at least one edit, in their original order. Lines are
/// returned unmodified.
pub fn tiny_filter(
    docs: &[Document],
    cat: &Catalogue,
    tagger: &dyn Tagger,
    gazetteer: Option<&Gazetteer>,
) -> (Vec<Document>, TinyReport) {
    let lines: Vec<(&str, &str)> = docs
        .iter()
        .flat_map(|d| d.text.lines().map(move |l| (l, d.source.as_str())))
        .filter(|(l, _)| !l.trim().is_empty())
        .collect();
    let keep: Vec<bool> = lines
        .par_iter()
        .map(|(raw, source)| {
            let line = Line::analyze(raw, source, tagger, gazetteer);
            !replace_terms(&line, cat).edits.is_empty()
        })
        .collect();

    let mut report = TinyReport::default();
    let mut kept = Vec::new();
    for ((raw, source), k) in lines.iter().zip(keep) {
        let idx = match report.sources.iter().position(|s| s.name == *source) {
            Some(i) => i,
            None => {
                report.sources.push(TinySource {
                    name: source.to_string(),
                    ..TinySource::default()
                });
                report.sources.len() - 1
            }
        };
        let row = &mut report.sources[idx];
        row.lines_in += 1;
        if k {
            row.lines_kept += 1;
            row.tokens_kept += token_count(raw);
            kept.push(Document::new(raw, source));
        }
    }
    (kept, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affix::Affix;
    use crate::lexicon::TermPair;
    use crate::textkit::HeuristicTagger;

    #[test]
    fn keeps_only_replacement_lines() {
        let cat = Catalogue::from_pairs(
            [TermPair::singular(
                "spokesman",
                "spokesperson",
                Affix::SuffixMan,
            )],
            "t",
        )
        .unwrap();
        let docs = vec![
            Document::new("He is tall.\nThe spokesman left.", "owt2"),
            Document::new("Nothing here.\n\nA spokesman and a spokesman.", "wiki"),
        ];
        let (kept, report) = tiny_filter(&docs, &cat, &HeuristicTagger, None);
        assert_eq!(
            kept,
            [
                Document::new("The spokesman left.", "owt2"),
                Document::new("A spokesman and a spokesman.", "wiki")
            ]
        );
        assert_eq!(report.sources[0].lines_in, 2);
        assert_eq!(report.sources[1].tokens_kept, 5);
        assert_eq!(report.tokens_kept(), 8);
    }
}
