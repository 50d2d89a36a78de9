//! Dictionary verification against an offline wordlist with an in-memory
//! cache; dashed terms also try their spaced variant.

use neutralex::verification::{DictCache, Verifier};
use neutralex::wordlist::parse_wordlist;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let words = parse_wordlist("chairman\nfireman\nman cave\n");
    let verifier = Verifier::new(DictCache::in_memory()).with_offline(words);
    for term in ["chairman", "fireman", "man-cave", "heythereman"] {
        let v = verifier.lookup(term)?;
        println!(
            "{term:<12} found={:<5} via {:?} ({})",
            v.found, v.source, v.matched_form
        );
    }
    Ok(())
}
