use std::fmt::Write as _;

use crate::affix::{Affix, AffixKind};

use super::candidate::CandidateTerm;

/// Top candidates per affix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    pub columns: Vec<(Affix, Vec<(String, u64)>)>,
}

/// Per affix, the `top_n` candidates by count descending, ties broken
/// lexicographically. Affixes with no candidates are left out.
pub fn frequency_table(candidates: &[CandidateTerm], top_n: usize) -> FrequencyTable {
    let columns = Affix::ALL
        .into_iter()
        .filter_map(|affix| {
            let mut rows: Vec<(String, u64)> = candidates
                .iter()
                .filter(|c| c.affix == affix)
                .map(|c| (c.surface.clone(), c.count))
                .collect();
            if rows.is_empty() {
                return None;
            }
            rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            rows.truncate(top_n);
            Some((affix, rows))
        })
        .collect();
    FrequencyTable { columns }
}

impl FrequencyTable {
    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("affix\trank\tsurface\tcount\n");
        for (affix, rows) in &self.columns {
            for (i, (surface, count)) in rows.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    affix.display(),
                    i + 1,
                    surface,
                    count
                );
            }
        }
        out
    }

    /// Affixes side by side, one `word | #` column pair each.
    pub fn to_markdown(&self) -> String {
        if self.columns.is_empty() {
            return String::new();
        }
        let mut out = String::from("|");
        for (affix, _) in &self.columns {
            let _ = write!(out, " {} | # |", affix.display());
        }
        out.push_str("\n|");
        for _ in &self.columns {
            out.push_str("---|--:|");
        }
        out.push('\n');
        let depth = self.columns.iter().map(|(_, r)| r.len()).max().unwrap_or(0);
        for i in 0..depth {
            out.push('|');
            for (_, rows) in &self.columns {
                match rows.get(i) {
                    Some((s, n)) => {
                        let _ = write!(out, " {s} | {n} |");
                    }
                    None => out.push_str("  |  |"),
                }
            }
            out.push('\n');
        }
        out
    }
}

const PREFIX_ROWS: [Affix; 4] = [
    Affix::PrefixWoman,
    Affix::PrefixGirl,
    Affix::PrefixMan,
    Affix::PrefixBoy,
];
const SUFFIX_ROWS: [Affix; 6] = [
    Affix::SuffixWoman,
    Affix::SuffixGirl,
    Affix::SuffixMan,
    Affix::SuffixBoy,
    Affix::SuffixWomanship,
    Affix::SuffixManship,
];

/// Surviving candidates per affix after each of the three rounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundsReport {
    pub prefix: Vec<(Affix, [u64; 3])>,
    pub suffix: Vec<(Affix, [u64; 3])>,
}

fn sum(rows: &[(Affix, [u64; 3])]) -> [u64; 3] {
    rows.iter().fold([0; 3], |mut acc, (_, r)| {
        for k in 0..3 {
            acc[k] += r[k];
        }
        acc
    })
}

/// A candidate counts in round `r` when it passed that round, whether or
/// not it was rejected later.
pub fn rounds_report(candidates: &[CandidateTerm]) -> RoundsReport {
    let row = |affix: Affix| {
        let mut counts = [0u64; 3];
        for c in candidates.iter().filter(|c| c.affix == affix) {
            for (k, slot) in counts.iter_mut().enumerate() {
                if c.status.survived(k as u8 + 1) {
                    *slot += 1;
                }
            }
        }
        (affix, counts)
    };
    RoundsReport {
        prefix: PREFIX_ROWS.into_iter().map(row).collect(),
        suffix: SUFFIX_ROWS.into_iter().map(row).collect(),
    }
}

impl RoundsReport {
    pub fn prefix_total(&self) -> [u64; 3] {
        sum(&self.prefix)
    }

    pub fn suffix_total(&self) -> [u64; 3] {
        sum(&self.suffix)
    }

    pub fn total(&self) -> [u64; 3] {
        let (p, s) = (self.prefix_total(), self.suffix_total());
        [p[0] + s[0], p[1] + s[1], p[2] + s[2]]
    }

    /// Each round's total as a percentage of the round-1 total.
    pub fn percent(&self) -> Option<[f64; 3]> {
        let t = self.total();
        (t[0] > 0).then(|| t.map(|x| 100.0 * x as f64 / t[0] as f64))
    }

    fn rows(&self) -> Vec<(&'static str, String, [u64; 3])> {
        let mut rows = Vec::new();
        for (kind, affix_rows, total) in [
            (AffixKind::Prefix, &self.prefix, self.prefix_total()),
            (AffixKind::Suffix, &self.suffix, self.suffix_total()),
        ] {
            for (affix, counts) in affix_rows {
                rows.push((kind.as_str(), affix.display(), *counts));
            }
            rows.push((kind.as_str(), "total".to_string(), total));
        }
        rows.push(("", "TOTAL".to_string(), self.total()));
        rows
    }

    fn percent_cells(&self) -> [String; 3] {
        match self.percent() {
            Some(p) => p.map(|x| format!("{x:.2}%")),
            None => ["n/a".to_string(), "n/a".to_string(), "n/a".to_string()],
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("kind\taffix\tround1\tround2\tround3\n");
        for (kind, label, c) in self.rows() {
            let _ = writeln!(out, "{kind}\t{label}\t{}\t{}\t{}", c[0], c[1], c[2]);
        }
        let [a, b, c] = self.percent_cells();
        let _ = writeln!(out, "\tPERCENT\t{a}\t{b}\t{c}");
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out =
            String::from("| kind | affix | round 1 | round 2 | round 3 |\n|---|---|--:|--:|--:|\n");
        for (kind, label, c) in self.rows() {
            let _ = writeln!(out, "| {kind} | {label} | {} | {} | {} |", c[0], c[1], c[2]);
        }
        let [a, b, c] = self.percent_cells();
        let _ = writeln!(out, "|  | PERCENT | {a} | {b} | {c} |");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extraction::{RejectReason, Status};

    fn cand(surface: &str, affix: Affix, count: u64) -> CandidateTerm {
        CandidateTerm::mined(surface, affix, count)
    }

    #[test]
    fn ties_break_lexicographically() {
        let cs = [
            cand("bman", Affix::SuffixMan, 2),
            cand("aman", Affix::SuffixMan, 2),
            cand("cman", Affix::SuffixMan, 1),
        ];
        let t = frequency_table(&cs, 2);
        assert_eq!(
            t.columns,
            [(
                Affix::SuffixMan,
                vec![("aman".into(), 2), ("bman".into(), 2)]
            )]
        );
        assert!(frequency_table(&[], 3).is_empty());
        assert_eq!(frequency_table(&[], 3).to_markdown(), "");
    }

    #[test]
    fn markdown_is_side_by_side() {
        let cs = [
            cand("spokesman", Affix::SuffixMan, 3),
            cand("fireman", Affix::SuffixMan, 1),
            cand("cowgirl", Affix::SuffixGirl, 2),
        ];
        let md = frequency_table(&cs, 10).to_markdown();
        assert_eq!(
            md,
            "| -man | # | -girl | # |\n|---|--:|---|--:|\n| spokesman | 3 | cowgirl | 2 |\n| fireman | 1 |  |  |\n"
        );
    }

    #[test]
    fn rounds_columns() {
        let mut cs: Vec<CandidateTerm> = (0..10)
            .map(|i| cand(&format!("x{i}man"), Affix::SuffixMan, 1))
            .collect();
        for (i, c) in cs.iter_mut().enumerate() {
            c.transition(Status::R1Pass, None).unwrap();
            if i < 4 {
                c.reject(2, RejectReason::NoDictEntry).unwrap();
            } else {
                c.transition(Status::R2Pass, None).unwrap();
            }
        }
        cs[9].reject(3, RejectReason::NotGender).unwrap();
        let r = rounds_report(&cs);
        assert_eq!(r.total(), [10, 6, 0]);
        assert_eq!(r.suffix_total(), [10, 6, 0]);
        let p = r.percent().unwrap();
        assert_eq!(p[1], 60.0);
        assert!(r.to_tsv().contains("suffix\t-man\t10\t6\t0\n"));
    }

    #[test]
    fn all_r3_pass_gives_identical_columns() {
        let mut c = cand("spokeswoman", Affix::SuffixWoman, 4);
        c.transition(Status::R3Pass, None).unwrap();
        let r = rounds_report(&[c]);
        assert_eq!(r.total(), [1, 1, 1]);
    }
}
