//! Weighted multi-source corpus assembly, proportional reduction, and the
//! replacement-line filter.

mod assemble;
mod document;
mod tiny;

pub use assemble::{
    assemble, assemble_from, reduce, Assembly, CompositionReport, CorpusError, CorpusSpec,
    SourceComposition, SourceSpec,
};
pub use document::{
    parse_documents, read_documents, token_count, write_documents, DocFormat, Document,
    DocumentError,
};
pub use tiny::{tiny_filter, TinyReport, TinySource};
