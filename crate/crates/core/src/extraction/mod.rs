//! Mining affixed singular nouns from corpora, the automatic first-round
//! filters, and frequency / verification-round reports.

mod candidate;
mod filter;
mod mine;
mod report;

pub use candidate::{
    read_candidates, write_candidates, BackwardTransition, CandidateIoError, CandidateTerm,
    RejectReason, Status,
};
pub use filter::{looks_like_junk, round1_filter};
pub use mine::{
    match_affix, mine, mine_parallel, normalize_dashes, stem_of, AffixSet, Checkpoint, MineCounts,
    Miner, DEFAULT_CHECKPOINT_MB,
};
pub use report::{frequency_table, rounds_report, FrequencyTable, RoundsReport};
