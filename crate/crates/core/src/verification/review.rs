use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::{self, Read, Write};
use std::str::FromStr;

use crate::extraction::{CandidateTerm, RejectReason, Status};

pub const REVIEW_HEADER: [&str; 4] = ["surface", "decision", "reason", "reviewer"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Accept,
    Reject,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Decision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "accept" => Ok(Decision::Accept),
            "reject" => Ok(Decision::Reject),
            other => Err(format!("unknown decision `{other}`")),
        }
    }
}

/// One reviewer verdict; a rejection always carries a reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReviewDecision {
    pub surface: String,
    pub decision: Decision,
    pub reason: Option<RejectReason>,
    pub reviewer: String,
}

impl ReviewDecision {
    pub fn accept(surface: &str, reviewer: &str) -> Self {
        ReviewDecision {
            surface: surface.to_string(),
            decision: Decision::Accept,
            reason: None,
            reviewer: reviewer.to_string(),
        }
    }

    pub fn reject(surface: &str, reason: RejectReason, reviewer: &str) -> Self {
        ReviewDecision {
            surface: surface.to_string(),
            decision: Decision::Reject,
            reason: Some(reason),
            reviewer: reviewer.to_string(),
        }
    }
}

/// Which human review a file belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReviewStage {
    /// After the automatic filters; acts on `r1_pass` candidates.
    Round1,
    /// After dictionary verification; acts on `r2_pass` candidates.
    Round3,
}

impl ReviewStage {
    pub fn pending_status(self) -> Status {
        match self {
            ReviewStage::Round1 => Status::R1Pass,
            ReviewStage::Round3 => Status::R2Pass,
        }
    }
}

impl FromStr for ReviewStage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "r1" | "round1" => Ok(ReviewStage::Round1),
            "r3" | "round3" => Ok(ReviewStage::Round3),
            other => Err(format!(
                "unknown review stage `{other}` (expected r1 or r3)"
            )),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReviewError {
    #[error("review file line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Decisions read from a review file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReviewImport {
    /// One decision per surface, in order of first appearance.
    pub decisions: Vec<ReviewDecision>,
    /// Surfaces listed without a decision yet.
    pub undecided: Vec<String>,
    pub warnings: Vec<String>,
}

/// Writes the candidates awaiting `stage` review, decision columns blank.
pub fn export_review<W: Write>(
    w: W,
    candidates: &[CandidateTerm],
    stage: ReviewStage,
) -> Result<usize, ReviewError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(REVIEW_HEADER)?;
    let mut n = 0;
    for c in candidates
        .iter()
        .filter(|c| c.status == stage.pending_status())
    {
        out.write_record([c.surface.as_str(), "", "", ""])?;
        n += 1;
    }
    out.flush()?;
    Ok(n)
}

/// Writes decisions in the review file layout.
pub fn write_decisions<W: Write>(w: W, decisions: &[ReviewDecision]) -> Result<(), ReviewError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(REVIEW_HEADER)?;
    for d in decisions {
        let reason = d.reason.map_or("", RejectReason::as_str);
        out.write_record([
            d.surface.as_str(),
            d.decision.as_str(),
            reason,
            d.reviewer.as_str(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Parses a review CSV. Duplicate surfaces keep the last decision and add a
/// warning; rows with an empty decision are listed as undecided.
pub fn import_review<R: Read>(r: R) -> Result<ReviewImport, ReviewError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(r);
    let mut import = ReviewImport::default();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut undecided_seen = HashSet::new();
    let mut first = true;
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let parse_err = |message: String| ReviewError::Parse { line, message };
        if first {
            first = false;
            let header: Vec<String> = record
                .iter()
                .map(|f| f.trim().to_ascii_lowercase())
                .collect();
            if header != REVIEW_HEADER {
                return Err(parse_err(format!(
                    "expected header `{}`",
                    REVIEW_HEADER.join(",")
                )));
            }
            continue;
        }
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        if record.len() != REVIEW_HEADER.len() {
            return Err(parse_err(format!(
                "expected 4 fields, found {}",
                record.len()
            )));
        }
        let surface = record[0].trim().to_lowercase();
        if surface.is_empty() {
            return Err(parse_err("empty surface".to_string()));
        }
        if record[1].trim().is_empty() {
            if undecided_seen.insert(surface.clone()) {
                import.undecided.push(surface);
            }
            continue;
        }
        let decision: Decision = record[1].parse().map_err(parse_err)?;
        let reason_field = record[2].trim();
        let reason = if reason_field.is_empty() {
            None
        } else {
            Some(reason_field.parse::<RejectReason>().map_err(parse_err)?)
        };
        if decision == Decision::Reject && reason.is_none() {
            return Err(parse_err(format!(
                "rejection of `{surface}` needs a reason"
            )));
        }
        let d = ReviewDecision {
            surface: surface.clone(),
            decision,
            reason: if decision == Decision::Reject {
                reason
            } else {
                None
            },
            reviewer: record[3].trim().to_string(),
        };
        match index.get(&surface) {
            Some(&i) => {
                import.warnings.push(format!(
                    "line {line}: duplicate decision for `{surface}`, keeping the later one"
                ));
                import.decisions[i] = d;
            }
            None => {
                index.insert(surface, import.decisions.len());
                import.decisions.push(d);
            }
        }
    }
    import.undecided.retain(|s| !index.contains_key(s));
    Ok(import)
}

/// Applies decisions to the candidates pending `stage`; returns warnings
/// for decisions that match no pending candidate.
pub fn apply_review(
    candidates: &mut [CandidateTerm],
    decisions: &[ReviewDecision],
    stage: ReviewStage,
) -> Vec<String> {
    let mut warnings = Vec::new();
    let mut by_surface: HashMap<&str, usize> = HashMap::new();
    for (i, c) in candidates.iter().enumerate() {
        by_surface.insert(c.surface.as_str(), i);
    }
    let mut moves = Vec::new();
    for d in decisions {
        match by_surface.get(d.surface.as_str()) {
            None => warnings.push(format!("`{}` is not a known candidate", d.surface)),
            Some(&i) if candidates[i].status != stage.pending_status() => warnings.push(format!(
                "`{}` has status {}, not {}; decision ignored",
                d.surface,
                candidates[i].status,
                stage.pending_status()
            )),
            Some(&i) => moves.push((i, d)),
        }
    }
    for (i, d) in moves {
        let c = &mut candidates[i];
        let result = match (stage, d.decision) {
            (ReviewStage::Round1, Decision::Accept) => Ok(()),
            (ReviewStage::Round1, Decision::Reject) => c.transition(Status::R1Reject, d.reason),
            (ReviewStage::Round3, Decision::Accept) => c.transition(Status::R3Pass, None),
            (ReviewStage::Round3, Decision::Reject) => c.transition(Status::R3Reject, d.reason),
        };
        result.expect("pending candidates move forward");
    }
    warnings
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affix::Affix;

    fn pending(surface: &str, status: Status) -> CandidateTerm {
        let mut c = CandidateTerm::mined(surface, Affix::SuffixGirl, 1);
        c.transition(status, None).unwrap();
        c
    }

    #[test]
    fn export_import_round_trip() {
        let cs = vec![
            pending("batgirl", Status::R2Pass),
            pending("cowgirl", Status::R2Pass),
            pending("girl", Status::R1Reject),
        ];
        let mut buf = Vec::new();
        assert_eq!(
            export_review(&mut buf, &cs, ReviewStage::Round3).unwrap(),
            2
        );
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "surface,decision,reason,reviewer\nbatgirl,,,\ncowgirl,,,\n"
        );
        let imp = import_review(text.as_bytes()).unwrap();
        assert_eq!(imp.undecided, ["batgirl", "cowgirl"]);
        assert!(imp.decisions.is_empty());
    }

    #[test]
    fn duplicate_rows_last_wins() {
        let text = "surface,decision,reason,reviewer\nbatgirl,accept,,ana\nbatgirl,reject,pop_culture,bo\n";
        let imp = import_review(text.as_bytes()).unwrap();
        assert_eq!(
            imp.decisions,
            [ReviewDecision::reject(
                "batgirl",
                RejectReason::PopCulture,
                "bo"
            )]
        );
        assert_eq!(imp.warnings.len(), 1);
        assert!(imp.warnings[0].starts_with("line 3"));
    }

    #[test]
    fn malformed_rows_carry_line_numbers() {
        for (text, line) in [
            ("surface,decision,reason,reviewer\nbatgirl,maybe,,x\n", 2),
            (
                "surface,decision,reason,reviewer\nok,accept,,x\nbatgirl,reject,,x\n",
                3,
            ),
            (
                "surface,decision,reason,reviewer\nbatgirl,reject,boring,x\n",
                2,
            ),
            ("surface,decision,reason,reviewer\nbatgirl,accept\n", 2),
            ("word,verdict\n", 1),
        ] {
            match import_review(text.as_bytes()) {
                Err(ReviewError::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn apply_is_monotone_and_warns() {
        let mut cs = vec![
            pending("batgirl", Status::R2Pass),
            pending("cowgirl", Status::R2Pass),
            pending("xgirl", Status::R2Reject),
        ];
        let ds = [
            ReviewDecision::reject("batgirl", RejectReason::PopCulture, "r"),
            ReviewDecision::accept("cowgirl", "r"),
            ReviewDecision::accept("xgirl", "r"),
            ReviewDecision::accept("nobody", "r"),
        ];
        let w = apply_review(&mut cs, &ds, ReviewStage::Round3);
        assert_eq!(w.len(), 2);
        assert_eq!(cs[0].status, Status::R3Reject);
        assert_eq!(cs[0].reject_reason, Some(RejectReason::PopCulture));
        assert_eq!(cs[1].status, Status::R3Pass);
        assert_eq!(cs[2].status, Status::R2Reject);
    }

    #[test]
    fn round1_review_rejects_word_creations() {
        let mut cs = vec![
            pending("heythereman", Status::R1Pass),
            pending("spokesman", Status::R1Pass),
        ];
        let ds = [
            ReviewDecision::reject("heythereman", RejectReason::Other, "r"),
            ReviewDecision::accept("spokesman", "r"),
        ];
        assert!(apply_review(&mut cs, &ds, ReviewStage::Round1).is_empty());
        assert_eq!(cs[0].status, Status::R1Reject);
        assert_eq!(cs[1].status, Status::R1Pass);
    }
}
