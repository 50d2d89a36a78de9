//! One-word-per-line lists (known words, names, offline dictionaries).

use std::collections::HashSet;
use std::fs;
use std::io;
use std::path::Path;

/// Lowercased, trimmed entries; blank lines and `#` comments are skipped.
pub fn parse_wordlist(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

pub fn load_wordlist(path: impl AsRef<Path>) -> io::Result<HashSet<String>> {
    Ok(parse_wordlist(&fs::read_to_string(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_comments_and_blanks() {
        let words = parse_wordlist("# names\nZimmerman\n\n  mrfredman \n");
        assert_eq!(words.len(), 2);
        assert!(words.contains("zimmerman"));
        assert!(words.contains("mrfredman"));
    }
}
