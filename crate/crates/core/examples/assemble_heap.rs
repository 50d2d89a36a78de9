//! Assembles a weighted corpus from three synthetic sources, then reduces
//! it to a smaller budget with the same seed.

use neutralex::corpus::{assemble_from, reduce, CorpusSpec, Document, SourceSpec};

fn source(name: &str, n: usize) -> Vec<Document> {
    (0..n)
        .map(|i| {
            Document::new(
                &format!("{name} document {i} {}", "text ".repeat(i % 40 + 5)),
                name,
            )
        })
        .collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let names = [("web", 0.5), ("news", 0.3), ("wiki", 0.2)];
    let spec = CorpusSpec {
        token_budget: 20_000,
        seed: 7,
        sources: names
            .iter()
            .map(|(n, w)| SourceSpec {
                name: n.to_string(),
                path: format!("{n}.jsonl").into(),
                weight: *w,
            })
            .collect(),
    };
    let sources: Vec<Vec<Document>> = names.iter().map(|(n, _)| source(n, 1000)).collect();
    let assembly = assemble_from(&spec, &sources)?;
    print!("{}", assembly.report.to_tsv());
    let reduced = reduce(&assembly.documents, 5_000, 7);
    print!("{}", reduced.report.to_tsv());
    Ok(())
}
