//! Mining, cataloguing and rewriting gender-marked English nouns, plus the
//! statistics used to score language models for gender bias.
//!
//! The pipeline runs in stages, each with its own module:
//!
//! - [`extraction`] mines affixed singular nouns from corpora and reports
//!   their frequencies.
//! - [`verification`] checks candidates against a dictionary service and
//!   round-trips human review files.
//! - [`lexicon`] holds the gendered -> neutral catalogue and its
//!   construction steps (masculine completion, plural expansion).
//! - [`rewriter`] replaces catalogue terms and rewrites gendered pronouns to
//!   singular *they*.
//! - [`corpus`] assembles weighted multi-source corpora, shrinks them, and
//!   keeps only lines that carry a term replacement.
//! - [`biasmetrics`] computes CrowS-Pairs, RedditBias and HONEST scores from
//!   model score files.
//!
//! [`textkit`] provides the tokeniser and tagger shared by the text stages,
//! and [`cli`] wires everything into the `neutralex` binary.

pub mod affix;
pub mod biasmetrics;
pub mod cli;
pub mod corpus;
pub mod extraction;
pub mod lexicon;
pub mod rewriter;
pub mod textkit;
pub mod verification;
pub mod wordlist;
