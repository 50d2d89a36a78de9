use std::fmt;
use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::affix::{Affix, AffixKind};

/// Verification status; rounds only move forward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Mined,
    R1Pass,
    R1Reject,
    R2Pass,
    R2Reject,
    R3Pass,
    R3Reject,
}

impl Status {
    pub fn round(self) -> u8 {
        match self {
            Status::Mined => 0,
            Status::R1Pass | Status::R1Reject => 1,
            Status::R2Pass | Status::R2Reject => 2,
            Status::R3Pass | Status::R3Reject => 3,
        }
    }

    pub fn is_reject(self) -> bool {
        matches!(self, Status::R1Reject | Status::R2Reject | Status::R3Reject)
    }

    /// Whether a candidate with this status survived the given round.
    pub fn survived(self, round: u8) -> bool {
        !self.is_reject() && self.round() >= round || self.is_reject() && self.round() > round
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Mined => "mined",
            Status::R1Pass => "r1_pass",
            Status::R1Reject => "r1_reject",
            Status::R2Pass => "r2_pass",
            Status::R2Reject => "r2_reject",
            Status::R3Pass => "r3_pass",
            Status::R3Reject => "r3_reject",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    NotGender,
    Spelling,
    Name,
    PopCulture,
    Slang,
    NoDictEntry,
    Other,
}

impl RejectReason {
    pub const ALL: [RejectReason; 7] = [
        RejectReason::NotGender,
        RejectReason::Spelling,
        RejectReason::Name,
        RejectReason::PopCulture,
        RejectReason::Slang,
        RejectReason::NoDictEntry,
        RejectReason::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RejectReason::NotGender => "not_gender",
            RejectReason::Spelling => "spelling",
            RejectReason::Name => "name",
            RejectReason::PopCulture => "pop_culture",
            RejectReason::Slang => "slang",
            RejectReason::NoDictEntry => "no_dict_entry",
            RejectReason::Other => "other",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RejectReason {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RejectReason::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown reject reason `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{surface}` cannot move from {from} back to {to}")]
pub struct BackwardTransition {
    pub surface: String,
    pub from: Status,
    pub to: Status,
}

/// A mined surface form and its verification state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CandidateRecord", into = "CandidateRecord")]
pub struct CandidateTerm {
    pub surface: String,
    pub affix: Affix,
    pub count: u64,
    pub status: Status,
    pub reject_reason: Option<RejectReason>,
}

impl CandidateTerm {
    pub fn mined(surface: &str, affix: Affix, count: u64) -> Self {
        CandidateTerm {
            surface: surface.to_string(),
            affix,
            count,
            status: Status::Mined,
            reject_reason: None,
        }
    }

    pub fn affix_kind(&self) -> AffixKind {
        self.affix.kind()
    }

    /// Moves to `to`; refuses to go back to an earlier round.
    pub fn transition(
        &mut self,
        to: Status,
        reason: Option<RejectReason>,
    ) -> Result<(), BackwardTransition> {
        if to.round() < self.status.round() {
            return Err(BackwardTransition {
                surface: self.surface.clone(),
                from: self.status,
                to,
            });
        }
        self.status = to;
        self.reject_reason = if to.is_reject() {
            reason.or(Some(RejectReason::Other))
        } else {
            None
        };
        Ok(())
    }

    pub fn reject(&mut self, round: u8, reason: RejectReason) -> Result<(), BackwardTransition> {
        let to = match round {
            1 => Status::R1Reject,
            2 => Status::R2Reject,
            _ => Status::R3Reject,
        };
        self.transition(to, Some(reason))
    }
}

#[derive(Serialize, Deserialize)]
struct CandidateRecord {
    surface: String,
    affix_kind: AffixKind,
    affix: String,
    count: u64,
    status: Status,
    reject_reason: Option<RejectReason>,
}

impl TryFrom<CandidateRecord> for CandidateTerm {
    type Error = String;

    fn try_from(r: CandidateRecord) -> Result<Self, Self::Error> {
        let affix = Affix::parse(r.affix_kind, &r.affix).map_err(|e| e.to_string())?;
        if r.status != Status::Mined && r.count == 0 {
            return Err(format!("candidate `{}` has zero count", r.surface));
        }
        Ok(CandidateTerm {
            surface: r.surface,
            affix,
            count: r.count,
            status: r.status,
            reject_reason: r.reject_reason,
        })
    }
}

impl From<CandidateTerm> for CandidateRecord {
    fn from(c: CandidateTerm) -> Self {
        CandidateRecord {
            surface: c.surface,
            affix_kind: c.affix.kind(),
            affix: c.affix.label().to_string(),
            count: c.count,
            status: c.status,
            reject_reason: c.reject_reason,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CandidateIoError {
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn read_candidates(path: impl AsRef<Path>) -> Result<Vec<CandidateTerm>, CandidateIoError> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let c = serde_json::from_str(&line).map_err(|source| CandidateIoError::Parse {
            line: i + 1,
            source,
        })?;
        out.push(c);
    }
    Ok(out)
}

pub fn write_candidates<W: Write>(mut w: W, candidates: &[CandidateTerm]) -> io::Result<()> {
    for c in candidates {
        serde_json::to_writer(&mut w, c)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
