//! Term catalogue: gendered -> neutral pairs, the TSV file format, English
//! pluralisation, and the construction steps applied after verification.

mod build;
mod catalogue;
mod inflect;

pub use build::{
    complete_masculine, expand_plurals, masculine_form, skew_report, Share, SkewReport,
    MASCULINE_PROVENANCE, PLURAL_PROVENANCE,
};
pub use catalogue::{
    gender_marked_word, load_catalogue, parse_suppression_list, write_catalogue, Catalogue,
    CatalogueError, Number, TermPair, FILE_PROVENANCE, HEADER,
};
pub use inflect::{pluralize, Guard, InflectionRule, Inflector};
