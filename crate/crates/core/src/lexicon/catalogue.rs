use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::affix::{Affix, AffixKind, Gender};

pub const HEADER: &str = "gendered\tneutral\tnumber\taffix_kind\taffix\taffix_gender";

/// Provenance tag given to pairs read from a catalogue file.
pub const FILE_PROVENANCE: &str = "catalogue-file";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Number {
    Singular,
    Plural,
}

impl Number {
    pub fn as_str(self) -> &'static str {
        match self {
            Number::Singular => "singular",
            Number::Plural => "plural",
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Number {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "singular" => Ok(Number::Singular),
            "plural" => Ok(Number::Plural),
            other => Err(format!("unknown number `{other}`")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogueError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{}duplicate gendered form `{gendered}` ({number})", line_prefix(*.line))]
    Duplicate {
        line: Option<usize>,
        gendered: String,
        number: Number,
    },
    #[error("{}invalid pair `{gendered}` -> `{neutral}`: {reason}", line_prefix(*.line))]
    Invariant {
        line: Option<usize>,
        gendered: String,
        neutral: String,
        reason: String,
    },
    #[error("plural `{plural}` of `{singular}` collides with `{plural}` -> `{existing}`")]
    Collision {
        singular: String,
        plural: String,
        existing: String,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

/// One gendered surface form mapped to one neutral form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermPair {
    pub gendered: String,
    pub neutral: String,
    pub number: Number,
    pub affix: Affix,
}

impl TermPair {
    pub fn new(gendered: &str, neutral: &str, number: Number, affix: Affix) -> Self {
        TermPair {
            gendered: gendered.to_string(),
            neutral: neutral.to_string(),
            number,
            affix,
        }
    }

    pub fn singular(gendered: &str, neutral: &str, affix: Affix) -> Self {
        TermPair::new(gendered, neutral, Number::Singular, affix)
    }

    pub fn affix_kind(&self) -> AffixKind {
        self.affix.kind()
    }

    pub fn affix_gender(&self) -> Gender {
        self.affix.gender()
    }

    /// Checks the pair-level invariants.
    pub fn validate(&self) -> Result<(), String> {
        let g = &self.gendered;
        if g.is_empty() {
            return Err("gendered form is empty".into());
        }
        if g.chars().any(char::is_whitespace) {
            return Err("gendered form contains whitespace".into());
        }
        if self.neutral.trim().is_empty() {
            return Err("neutral form is empty".into());
        }
        if self.neutral != self.neutral.trim() || self.neutral.contains("  ") {
            return Err("neutral form has stray whitespace".into());
        }
        if *g != g.to_lowercase() || self.neutral != self.neutral.to_lowercase() {
            return Err("forms must be lowercase".into());
        }
        let anchored = match (self.affix.kind(), self.number) {
            (AffixKind::Prefix, _) => self.affix.strip(g).is_some(),
            (AffixKind::Suffix, Number::Singular) => g.ends_with(self.affix.stem()),
            (AffixKind::Suffix, Number::Plural) => self.affix.strip_inflected(g).is_some(),
        };
        if !anchored {
            return Err(format!(
                "gendered form does not carry the {} `{}`",
                self.affix.kind(),
                self.affix.display()
            ));
        }
        if let Some(word) = gender_marked_word(&self.neutral) {
            return Err(format!(
                "neutral form carries a gender-marking affix in `{word}`"
            ));
        }
        Ok(())
    }
}

// Words in which -man/-boy is not a gender marker, or which are bare nouns
// rather than affixed forms.
const FREE_ROOTS: &[&str] = &[
    "human", "humans", "humane", "german", "germans", "roman", "romans", "ottoman", "shaman",
    "shamans", "talisman", "caiman", "woman", "women", "man", "men", "boy", "boys", "girl",
    "girls", "manship",
];

/// Returns the first word of a neutral form that carries one of the
/// gender-marking affixes in affix position. Only affix position is
/// checked; gendered substrings inside a free root are allowed.
pub fn gender_marked_word(neutral: &str) -> Option<&str> {
    neutral
        .split(|c: char| c.is_whitespace() || c == '-' || c == '/')
        .filter(|w| !w.is_empty() && !FREE_ROOTS.contains(w))
        .find(|w| {
            Affix::ALL.iter().any(|a| match a.kind() {
                AffixKind::Suffix => a.strip_inflected(w).is_some_and(|stem| !stem.is_empty()),
                // `man-` needs a dash, which the split above removed.
                AffixKind::Prefix => {
                    *a != Affix::PrefixMan
                        && a.strip(w).is_some_and(|rest| !rest.is_empty())
                        && !is_ordinary_prefix_word(w)
                }
            })
        })
}

// Common words that merely start with `boy`/`girl`.
fn is_ordinary_prefix_word(word: &str) -> bool {
    matches!(word, "boycott" | "boycotts" | "boyne")
}

/// Ordered, keyed collection of term pairs.
///
/// Equality compares the pairs only; provenance is in-memory metadata and is
/// not part of the file format.
#[derive(Clone, Debug, Default)]
pub struct Catalogue {
    pairs: Vec<TermPair>,
    provenance: Vec<String>,
    index: HashMap<(String, Number), usize>,
}

impl PartialEq for Catalogue {
    fn eq(&self, other: &Self) -> bool {
        self.pairs == other.pairs
    }
}

impl Eq for Catalogue {}

impl Catalogue {
    pub fn new() -> Self {
        Catalogue::default()
    }

    pub fn from_pairs<I>(pairs: I, provenance: &str) -> Result<Self, CatalogueError>
    where
        I: IntoIterator<Item = TermPair>,
    {
        let mut cat = Catalogue::new();
        for pair in pairs {
            cat.insert(pair, provenance)?;
        }
        Ok(cat)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[TermPair] {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TermPair, &str)> {
        self.pairs
            .iter()
            .zip(self.provenance.iter().map(String::as_str))
    }

    pub fn get(&self, gendered: &str, number: Number) -> Option<&TermPair> {
        self.index
            .get(&(gendered.to_string(), number))
            .map(|&i| &self.pairs[i])
    }

    /// Looks a lowercase surface up regardless of grammatical number.
    pub fn lookup(&self, surface: &str) -> Option<&TermPair> {
        self.get(surface, Number::Singular)
            .or_else(|| self.get(surface, Number::Plural))
    }

    pub fn contains(&self, gendered: &str, number: Number) -> bool {
        self.index.contains_key(&(gendered.to_string(), number))
    }

    pub fn provenance_of(&self, gendered: &str, number: Number) -> Option<&str> {
        self.index
            .get(&(gendered.to_string(), number))
            .map(|&i| self.provenance[i].as_str())
    }

    pub fn insert(&mut self, pair: TermPair, provenance: &str) -> Result<(), CatalogueError> {
        self.insert_at(pair, provenance, None)
    }

    fn insert_at(
        &mut self,
        pair: TermPair,
        provenance: &str,
        line: Option<usize>,
    ) -> Result<(), CatalogueError> {
        pair.validate()
            .map_err(|reason| CatalogueError::Invariant {
                line,
                gendered: pair.gendered.clone(),
                neutral: pair.neutral.clone(),
                reason,
            })?;
        let key = (pair.gendered.clone(), pair.number);
        if self.index.contains_key(&key) {
            return Err(CatalogueError::Duplicate {
                line,
                gendered: pair.gendered,
                number: pair.number,
            });
        }
        self.index.insert(key, self.pairs.len());
        self.pairs.push(pair);
        self.provenance.push(provenance.to_string());
        Ok(())
    }

    /// Rebuilds a catalogue from pairs in a new order, keeping provenance.
    pub(crate) fn from_entries(entries: Vec<(TermPair, String)>) -> Result<Self, CatalogueError> {
        let mut cat = Catalogue::new();
        for (pair, prov) in entries {
            cat.insert(pair, &prov)?;
        }
        Ok(cat)
    }

    pub(crate) fn entries(&self) -> Vec<(TermPair, String)> {
        self.pairs
            .iter()
            .cloned()
            .zip(self.provenance.iter().cloned())
            .collect()
    }

    /// Rejects catalogues in which some neutral word is itself a gendered
    /// key, since rewriting would then not be idempotent.
    pub fn check_closed(&self) -> Result<(), CatalogueError> {
        for pair in &self.pairs {
            let words = std::iter::once(pair.neutral.as_str()).chain(pair.neutral.split(' '));
            for word in words {
                if self.lookup(word).is_some() {
                    return Err(CatalogueError::Invariant {
                        line: None,
                        gendered: pair.gendered.clone(),
                        neutral: pair.neutral.clone(),
                        reason: format!("neutral word `{word}` is itself a gendered key"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn parse_tsv(text: &str) -> Result<Self, CatalogueError> {
        let mut cat = Catalogue::new();
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        match lines.next() {
            None => return Ok(cat),
            Some((_, header)) if header == HEADER => {}
            Some((line, header)) => {
                return Err(CatalogueError::Parse {
                    line,
                    message: format!("expected header `{HEADER}`, found `{header}`"),
                })
            }
        }
        for (line, row) in lines {
            if row.is_empty() {
                continue;
            }
            let pair = parse_row(row).map_err(|message| CatalogueError::Parse { line, message })?;
            cat.insert_at(pair, FILE_PROVENANCE, Some(line))?;
        }
        cat.check_closed()?;
        Ok(cat)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.len() + 1));
        out.push_str(HEADER);
        out.push('\n');
        for p in &self.pairs {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                p.gendered,
                p.neutral,
                p.number,
                p.affix.kind(),
                p.affix.label(),
                p.affix.gender()
            ));
        }
        out
    }

    pub fn write_tsv<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(self.to_tsv().as_bytes())
    }
}

fn parse_row(row: &str) -> Result<TermPair, String> {
    let cols: Vec<&str> = row.split('\t').collect();
    if cols.len() != 6 {
        return Err(format!(
            "expected 6 tab-separated columns, found {}",
            cols.len()
        ));
    }
    let number: Number = cols[2].parse()?;
    let kind: AffixKind = cols[3].parse().map_err(|e| format!("{e}"))?;
    let affix = Affix::parse(kind, cols[4]).map_err(|e| format!("{e}"))?;
    let gender: Gender = cols[5].parse().map_err(|e| format!("{e}"))?;
    if gender != affix.gender() {
        return Err(format!(
            "affix `{}` is {}, row says {gender}",
            affix.label(),
            affix.gender()
        ));
    }
    Ok(TermPair {
        gendered: cols[0].to_string(),
        neutral: cols[1].to_string(),
        number,
        affix,
    })
}

pub fn load_catalogue(path: impl AsRef<Path>) -> Result<Catalogue, CatalogueError> {
    let text = fs::read_to_string(path)?;
    Catalogue::parse_tsv(&text)
}

pub fn write_catalogue(cat: &Catalogue, path: impl AsRef<Path>) -> Result<(), CatalogueError> {
    fs::write(path, cat.to_tsv())?;
    Ok(())
}

/// Suppression list: one surface form per line; blank lines and `#`
/// comments are ignored.
pub fn parse_suppression_list(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}
