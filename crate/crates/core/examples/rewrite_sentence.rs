//! Rewrites one sentence with the bundled catalogue in both modes and
//! lists the edits.

use neutralex::lexicon::Catalogue;
use neutralex::rewriter::{rewrite, Mode};
use neutralex::textkit::{HeuristicTagger, Line};

const CATALOGUE: &str = include_str!("../data/catalogue.tsv");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cat = Catalogue::parse_tsv(CATALOGUE)?;
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "The chairman said he thinks the firemen did well.".to_string());
    let line = Line::analyze(&text, "example", &HeuristicTagger, None);
    for mode in [Mode::Replacement, Mode::RepNeutral] {
        let r = rewrite(&line, &cat, mode);
        println!("{:<12} {}", mode.as_str(), r.text);
        for e in &r.edits {
            println!(
                "{:>14} {:?}: {} -> {}",
                "", e.kind, e.original, e.replacement
            );
        }
    }
    Ok(())
}
