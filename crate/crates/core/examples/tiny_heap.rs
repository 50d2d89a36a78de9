//! Keeps only the lines that contain a catalogue term.

use neutralex::corpus::{tiny_filter, Document};
use neutralex::lexicon::Catalogue;
use neutralex::textkit::HeuristicTagger;

const CATALOGUE: &str = include_str!("../data/catalogue.tsv");
const TEXT: &str = "The weather was mild.\nA spokesman declined to comment.\nPrices rose again.\nTwo firemen were hurt.";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cat = Catalogue::parse_tsv(CATALOGUE)?;
    let (kept, report) = tiny_filter(&[Document::new(TEXT, "news")], &cat, &HeuristicTagger, None);
    for d in &kept {
        println!("{}", d.text);
    }
    print!("{}", report.to_tsv());
    Ok(())
}
