//! Mines gender-marked affixed nouns from a few sentences and prints the
//! per-affix frequency table.

use neutralex::extraction::{frequency_table, mine, AffixSet};
use neutralex::textkit::{HeuristicTagger, Line};

const CORPUS: &[&str] = &[
    "The spokesman said the chairwoman would resign.",
    "A fireman and a businesswoman met at the man-cave.",
    "The manager thanked the paperboy and the cowgirl.",
    "Another spokesman praised the seamanship of the crew.",
];

fn main() {
    let lines: Vec<Line> = CORPUS
        .iter()
        .map(|s| Line::analyze(s, "example", &HeuristicTagger, None))
        .collect();
    let counts = mine(&lines, AffixSet::all());
    println!(
        "{} matched tokens, {} distinct surfaces",
        counts.matched_tokens(),
        counts.distinct()
    );
    let candidates = counts.to_candidates();
    for c in &candidates {
        println!("{:<16} {:<10} {}", c.surface, c.affix.display(), c.count);
    }
    print!("{}", frequency_table(&candidates, 5).to_markdown());
}
