use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::affix::{Affix, UnknownAffix};
use crate::textkit::{Line, Pos};

use super::candidate::CandidateTerm;

/// Default review checkpoint interval in megabytes of input.
pub const DEFAULT_CHECKPOINT_MB: u64 = 20;

/// The affixes a mining run looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffixSet(u16);

impl AffixSet {
    pub fn all() -> Self {
        AffixSet((1 << Affix::ALL.len()) - 1)
    }

    pub fn empty() -> Self {
        AffixSet(0)
    }

    fn bit(affix: Affix) -> u16 {
        let idx = Affix::ALL
            .iter()
            .position(|a| *a == affix)
            .expect("affix listed in ALL");
        1 << idx
    }

    pub fn with(mut self, affix: Affix) -> Self {
        self.0 |= Self::bit(affix);
        self
    }

    pub fn contains(self, affix: Affix) -> bool {
        self.0 & Self::bit(affix) != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Affix> {
        Affix::ALL.into_iter().filter(move |a| self.contains(*a))
    }

    /// Parses labels such as `-man`, `man-`, `womanship`.
    pub fn parse<I, S>(labels: I) -> Result<Self, UnknownAffix>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels.into_iter().try_fold(AffixSet::empty(), |set, l| {
            Ok(set.with(Affix::from_label(l.as_ref().trim())?))
        })
    }
}

impl Default for AffixSet {
    fn default() -> Self {
        AffixSet::all()
    }
}

impl FromIterator<Affix> for AffixSet {
    fn from_iter<T: IntoIterator<Item = Affix>>(iter: T) -> Self {
        iter.into_iter().fold(AffixSet::empty(), AffixSet::with)
    }
}

/// Maps Unicode hyphens to ASCII `-`.
pub fn normalize_dashes(word: &str) -> String {
    word.chars()
        .map(|c| {
            if matches!(c, '\u{2010}' | '\u{2011}') {
                '-'
            } else {
                c
            }
        })
        .collect()
}

/// `^[a-z]+(-[a-z]+)*$`
fn is_plain_word(word: &str) -> bool {
    !word.is_empty()
        && word
            .split('-')
            .all(|part| !part.is_empty() && part.bytes().all(|b| b.is_ascii_lowercase()))
}

/// The affix `word` carries, if it is one of `affixes`.
///
/// Suffixes are tried before prefixes and each side takes its longest
/// matching affix, so `chairwoman` is a `-woman` word even when only `-man`
/// is requested.
pub fn match_affix(word: &str, affixes: AffixSet) -> Option<Affix> {
    if !is_plain_word(word) {
        return None;
    }
    let suffix = Affix::SUFFIXES_LONGEST_FIRST
        .into_iter()
        .find(|a| a.strip(word).is_some());
    if let Some(a) = suffix.filter(|a| affixes.contains(*a)) {
        return Some(a);
    }
    Affix::PREFIXES_LONGEST_FIRST
        .into_iter()
        .find(|a| a.strip(word).is_some())
        .filter(|a| affixes.contains(*a))
}

/// Aggregated candidate counts; merging is associative and commutative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MineCounts {
    counts: BTreeMap<String, (Affix, u64)>,
    matched_tokens: u64,
}

impl MineCounts {
    pub fn add(&mut self, surface: &str, affix: Affix) {
        self.counts
            .entry(surface.to_string())
            .or_insert((affix, 0))
            .1 += 1;
        self.matched_tokens += 1;
    }

    pub fn add_line(&mut self, line: &Line, affixes: AffixSet) {
        for t in &line.tokens {
            if t.pos != Pos::NounSg {
                continue;
            }
            let lower = normalize_dashes(&t.lower);
            if let Some(affix) = match_affix(&lower, affixes) {
                self.add(&lower, affix);
            }
        }
    }

    pub fn merge(&mut self, other: MineCounts) {
        for (surface, (affix, n)) in other.counts {
            self.counts.entry(surface).or_insert((affix, 0)).1 += n;
        }
        self.matched_tokens += other.matched_tokens;
    }

    pub fn matched_tokens(&self) -> u64 {
        self.matched_tokens
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, surface: &str) -> u64 {
        self.counts.get(surface).map_or(0, |(_, n)| *n)
    }

    /// Summed counts per affix, in [`Affix::ALL`] order.
    pub fn per_affix(&self) -> BTreeMap<Affix, u64> {
        let mut out = BTreeMap::new();
        for (affix, n) in self.counts.values() {
            *out.entry(*affix).or_insert(0) += n;
        }
        out
    }

    /// One `mined` candidate per distinct surface, sorted by surface.
    pub fn to_candidates(&self) -> Vec<CandidateTerm> {
        self.counts
            .iter()
            .map(|(s, (affix, n))| CandidateTerm::mined(s, *affix, *n))
            .collect()
    }
}

/// Sequential mining over a stream of lines.
pub fn mine<'a, I>(lines: I, affixes: AffixSet) -> MineCounts
where
    I: IntoIterator<Item = &'a Line>,
{
    let mut counts = MineCounts::default();
    for line in lines {
        counts.add_line(line, affixes);
    }
    counts
}

/// Shards `lines` across the rayon pool; equal to [`mine`] on the same input.
pub fn mine_parallel(lines: &[Line], affixes: AffixSet) -> MineCounts {
    lines
        .par_chunks(1024)
        .map(|chunk| mine(chunk, affixes))
        .reduce(MineCounts::default, |mut a, b| {
            a.merge(b);
            a
        })
}

/// Reached when another `interval` bytes of input have been consumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub index: usize,
    pub bytes: u64,
    pub distinct: usize,
}

/// Incremental miner that signals a review checkpoint every N bytes.
#[derive(Debug)]
pub struct Miner {
    affixes: AffixSet,
    counts: MineCounts,
    interval: u64,
    bytes: u64,
    checkpoints: usize,
}

impl Miner {
    pub fn new(affixes: AffixSet, checkpoint_mb: u64) -> Self {
        Miner::with_interval_bytes(affixes, checkpoint_mb.saturating_mul(1 << 20))
    }

    pub fn with_interval_bytes(affixes: AffixSet, interval: u64) -> Self {
        Miner {
            affixes,
            counts: MineCounts::default(),
            interval: interval.max(1),
            bytes: 0,
            checkpoints: 0,
        }
    }

    /// Counts `line`; returns a checkpoint when an interval boundary is crossed.
    pub fn feed(&mut self, line: &Line) -> Option<Checkpoint> {
        self.counts.add_line(line, self.affixes);
        self.bytes += line.raw.len() as u64 + 1;
        if self.bytes / self.interval > self.checkpoints as u64 {
            self.checkpoints = (self.bytes / self.interval) as usize;
            Some(Checkpoint {
                index: self.checkpoints,
                bytes: self.bytes,
                distinct: self.counts.distinct(),
            })
        } else {
            None
        }
    }

    pub fn counts(&self) -> &MineCounts {
        &self.counts
    }

    pub fn finish(self) -> MineCounts {
        self.counts
    }
}

/// The part of `surface` left after removing `affix`, without dashes.
pub fn stem_of(surface: &str, affix: Affix) -> String {
    affix
        .strip(surface)
        .unwrap_or("")
        .chars()
        .filter(|c| *c != '-')
        .collect()
}
