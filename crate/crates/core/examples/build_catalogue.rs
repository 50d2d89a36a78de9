//! Builds a small catalogue from singular seed pairs: masculine completion,
//! then plural expansion, then the affix skew table.

use neutralex::lexicon::{complete_masculine, expand_plurals, skew_report, Catalogue, Inflector};

const SEED: &str = "gendered\tneutral\tnumber\taffix_kind\taffix\taffix_gender
chairwoman\tchairperson\tsingular\tsuffix\twoman\tfeminine
spokeswoman\tspokesperson\tsingular\tsuffix\twoman\tfeminine
cowgirl\tcow herder\tsingular\tsuffix\tgirl\tfeminine
man-cave\tsanctuary\tsingular\tprefix\tman-\tmasculine
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = Catalogue::parse_tsv(SEED)?;
    let completed = complete_masculine(&seed)?;
    let full = expand_plurals(&completed, &[], &Inflector::english())?;
    print!("{}", full.to_tsv());
    print!("{}", skew_report(&full).to_markdown());
    Ok(())
}
