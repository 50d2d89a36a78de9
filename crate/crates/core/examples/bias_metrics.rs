//! Scores the bundled test fixtures for all three bias benchmarks and
//! prints the results table.

use std::path::Path;

use neutralex::biasmetrics::{
    crows_metric, honest_score, read_honest, read_scores, reddit_pairs, reddit_report,
    results_table, HonestLexicon, ResultsRow, TTestKind,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let crows = crows_metric(&read_scores(fixtures.join("crows_scores.jsonl"))?)?;
    let (gender, queer) = reddit_pairs(&read_scores(fixtures.join("reddit_scores.jsonl"))?)?;
    let reddit = reddit_report(&gender, &queer, TTestKind::Paired)?;
    let lexicon = HonestLexicon::load(fixtures.join("honest_lexicon.tsv"))?;
    let honest = honest_score(
        &read_honest(fixtures.join("honest_completions.jsonl"))?,
        &lexicon,
    )?;
    let row = ResultsRow {
        model: "fixture".into(),
        reddit: Some(reddit),
        crows: Some(crows),
        honest_binary: honest.per_group.get("binary").copied(),
        honest_queer: honest.per_group.get("queer").copied(),
        ..ResultsRow::default()
    };
    print!("{}", results_table(&[row]));
    println!("gender t={:.4} p={:.4}", reddit.gender.t, reddit.gender.p);
    Ok(())
}
