//! Gender-neutral rewriting: catalogue term replacement and pronoun
//! neutralisation to singular *they*.
//!
//! All edit offsets are byte offsets into the input line, so applying a
//! line's edits to its raw text reproduces the rewritten text.

mod pronouns;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::extraction::normalize_dashes;
use crate::lexicon::Catalogue;
use crate::textkit::Line;

pub use pronouns::{
    is_gendered_pronoun, plural_verb_form, AgreementRule, PronounRule, Role, IRREGULAR_AGREEMENT,
    PRONOUN_RULES,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EditKind {
    Term,
    Pronoun,
    Agreement,
}

/// One replacement within a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteEdit {
    /// Index of the line within its input stream.
    pub line: usize,
    pub start: usize,
    pub end: usize,
    pub original: String,
    pub replacement: String,
    pub kind: EditKind,
    /// Set when a clause boundary separates a subject from the verb whose
    /// agreement was repaired.
    pub agreement_uncertain: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Catalogue term replacement only.
    Replacement,
    /// Term replacement followed by pronoun neutralisation.
    RepNeutral,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Replacement => "rep",
            Mode::RepNeutral => "rep-neutral",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rep" | "replacement" => Ok(Mode::Replacement),
            "rep-neutral" | "rep_neutral" => Ok(Mode::RepNeutral),
            other => Err(format!(
                "unknown mode `{other}` (expected rep or rep-neutral)"
            )),
        }
    }
}

/// Rewritten text and the edits that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub text: String,
    pub edits: Vec<RewriteEdit>,
}

impl Rewrite {
    pub fn count(&self, kind: EditKind) -> usize {
        self.edits.iter().filter(|e| e.kind == kind).count()
    }
}

fn letters(s: &str) -> impl Iterator<Item = char> + '_ {
    s.chars().filter(|c| c.is_alphabetic())
}

/// Copies the casing pattern of `source` onto `target`: all capitals stay
/// all capitals, an initial capital capitalises the first word, anything
/// else yields `target` unchanged.
pub fn transfer_case(source: &str, target: &str) -> String {
    if letters(source).next().is_some() && letters(source).all(char::is_uppercase) {
        return target.to_uppercase();
    }
    if source.chars().next().is_some_and(char::is_uppercase) {
        let mut chars = target.chars();
        return match chars.next() {
            Some(first) => first.to_uppercase().chain(chars).collect(),
            None => String::new(),
        };
    }
    target.to_string()
}

/// Applies non-overlapping edits (any order) to `raw`.
pub fn apply_edits(raw: &str, edits: &[RewriteEdit]) -> String {
    let mut sorted: Vec<&RewriteEdit> = edits.iter().collect();
    sorted.sort_by_key(|e| e.start);
    let mut out = String::with_capacity(raw.len() + 16);
    let mut cursor = 0;
    for e in sorted {
        out.push_str(&raw[cursor..e.start]);
        out.push_str(&e.replacement);
        cursor = e.end;
    }
    out.push_str(&raw[cursor..]);
    out
}

/// Term edits and the token indices they consumed.
fn term_edits(line: &Line, cat: &Catalogue) -> (Vec<RewriteEdit>, HashSet<usize>) {
    let mut edits = Vec::new();
    let mut used = HashSet::new();
    for (i, t) in line.tokens.iter().enumerate() {
        if t.ne {
            continue;
        }
        let key = normalize_dashes(&t.lower);
        if let Some(pair) = cat.lookup(&key) {
            edits.push(RewriteEdit {
                line: 0,
                start: t.start,
                end: t.end,
                original: t.text.clone(),
                replacement: transfer_case(&t.text, &pair.neutral),
                kind: EditKind::Term,
                agreement_uncertain: false,
            });
            used.insert(i);
        }
    }
    (edits, used)
}

fn finish(line: &Line, edits: Vec<RewriteEdit>) -> Rewrite {
    Rewrite {
        text: apply_edits(&line.raw, &edits),
        edits,
    }
}

/// Replaces every catalogue term outside named entities.
pub fn replace_terms(line: &Line, cat: &Catalogue) -> Rewrite {
    finish(line, term_edits(line, cat).0)
}

/// Rewrites gendered pronouns to singular *they*, repairing the agreement
/// of the first finite verb after each rewritten subject.
pub fn neutralize_pronouns(line: &Line) -> Rewrite {
    finish(line, pronouns::pronoun_edits(&line.tokens, &HashSet::new()))
}

/// Term replacement, then (for [`Mode::RepNeutral`]) pronoun rewriting on
/// the tokens the first pass left alone.
pub fn rewrite(line: &Line, cat: &Catalogue, mode: Mode) -> Rewrite {
    let (mut edits, used) = term_edits(line, cat);
    if mode == Mode::RepNeutral {
        edits.extend(pronouns::pronoun_edits(&line.tokens, &used));
        edits.sort_by_key(|e| e.start);
    }
    finish(line, edits)
}

/// Rewrites many lines in parallel; edits carry their line index.
pub fn rewrite_all(lines: &[Line], cat: &Catalogue, mode: Mode) -> Vec<Rewrite> {
    lines
        .par_iter()
        .enumerate()
        .map(|(n, line)| {
            let mut r = rewrite(line, cat, mode);
            for e in &mut r.edits {
                e.line = n;
            }
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affix::Affix;
    use crate::lexicon::{Number, TermPair};
    use crate::textkit::{Gazetteer, HeuristicTagger};

    const NEWSMEN: &str = "He told newsmen at the scene that unknown criminals vandalised MD metres and armoured cables of the transformer.";

    fn catalogue() -> Catalogue {
        Catalogue::from_pairs(
            [
                TermPair::singular("newsman", "reporter", Affix::SuffixMan),
                TermPair::new("newsmen", "reporters", Number::Plural, Affix::SuffixMan),
                TermPair::singular("spokesman", "spokesperson", Affix::SuffixMan),
                TermPair::singular("fireman", "fire fighter", Affix::SuffixMan),
                TermPair::singular("man-cave", "sanctuary", Affix::PrefixMan),
            ],
            "test",
        )
        .unwrap()
    }

    fn line(raw: &str) -> Line {
        Line::analyze(raw, "t", &HeuristicTagger, None)
    }

    fn run(raw: &str, mode: Mode) -> String {
        rewrite(&line(raw), &catalogue(), mode).text
    }

    #[test]
    fn newsmen_sentence_in_both_modes() {
        assert_eq!(
            run(NEWSMEN, Mode::Replacement),
            "He told reporters at the scene that unknown criminals vandalised MD metres and armoured cables of the transformer."
        );
        assert_eq!(
            run(NEWSMEN, Mode::RepNeutral),
            "They told reporters at the scene that unknown criminals vandalised MD metres and armoured cables of the transformer."
        );
    }

    #[test]
    fn case_transfer() {
        assert_eq!(transfer_case("Newsmen", "reporters"), "Reporters");
        assert_eq!(transfer_case("NEWSMEN", "reporters"), "REPORTERS");
        assert_eq!(transfer_case("Fireman", "fire fighter"), "Fire fighter");
        assert_eq!(transfer_case("newsMen", "reporters"), "reporters");
        assert_eq!(transfer_case("S", "re"), "RE");
        assert_eq!(
            run("Newsmen arrived.", Mode::Replacement),
            "Reporters arrived."
        );
        assert_eq!(
            run("THE FIREMAN CAME", Mode::Replacement),
            "THE FIRE FIGHTER CAME"
        );
    }

    #[test]
    fn named_entities_are_protected() {
        let cat = Catalogue::from_pairs(
            [TermPair::singular(
                "spider-man",
                "spider-person",
                Affix::SuffixMan,
            )],
            "t",
        )
        .unwrap();
        let l = line("we watched Spider-Man and a spider-man costume");
        let r = replace_terms(&l, &cat);
        assert_eq!(r.text, "we watched Spider-Man and a spider-person costume");
        let gaz = Gazetteer::parse("spider-man");
        let l = Line::analyze("a spider-man costume", "t", &HeuristicTagger, Some(&gaz));
        assert!(replace_terms(&l, &cat).edits.is_empty());
    }

    #[test]
    fn pronouns_and_agreement() {
        for (src, want) in [
            ("She is here.", "They are here."),
            ("They saw them.", "They saw them."),
            ("He runs fast.", "They run fast."),
            ("She quickly watches TV.", "They quickly watch TV."),
            ("He doesn't care.", "They don't care."),
            ("He has left.", "They have left."),
            ("He's tall.", "They're tall."),
            ("He's been there.", "They've been there."),
            ("She’s here.", "They’re here."),
            ("I gave her the book.", "I gave them the book."),
            ("I like her new car.", "I like their new car."),
            ("The car is his.", "The car is theirs."),
            ("His car is red.", "Their car is red."),
            ("She hurt herself.", "They hurt themselves."),
            ("The prize was hers.", "The prize was theirs."),
            ("HE IS HERE", "THEY ARE HERE"),
            ("He will go.", "They will go."),
        ] {
            assert_eq!(run(src, Mode::RepNeutral), want, "{src}");
        }
    }

    #[test]
    fn clause_boundary_flags_uncertain_agreement() {
        let r = rewrite(&line("He, too, is late."), &catalogue(), Mode::RepNeutral);
        assert_eq!(r.text, "They, too, are late.");
        let agreement: Vec<_> = r
            .edits
            .iter()
            .filter(|e| e.kind == EditKind::Agreement)
            .collect();
        assert_eq!(agreement.len(), 1);
        assert!(agreement[0].agreement_uncertain);
    }

    #[test]
    fn edits_reproduce_output() {
        let raw = "He told the Spokesman that his man-cave was hers.";
        let r = rewrite(&line(raw), &catalogue(), Mode::RepNeutral);
        assert_eq!(apply_edits(raw, &r.edits), r.text);
        assert_eq!(
            r.text,
            "They told the Spokesman that their sanctuary was theirs."
        );
        for w in r.edits.windows(2) {
            assert!(w[0].end <= w[1].start);
        }
    }

    #[test]
    fn no_gendered_content_means_no_edits() {
        let r = rewrite(
            &line("The weather was fine."),
            &catalogue(),
            Mode::RepNeutral,
        );
        assert!(r.edits.is_empty());
        assert_eq!(r.text, "The weather was fine.");
    }

    #[test]
    fn modes_parse() {
        assert_eq!("rep".parse::<Mode>().unwrap(), Mode::Replacement);
        assert_eq!("rep-neutral".parse::<Mode>().unwrap(), Mode::RepNeutral);
        assert!("neutral".parse::<Mode>().is_err());
    }
}
