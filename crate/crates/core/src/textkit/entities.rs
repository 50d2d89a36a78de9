use std::collections::HashSet;
use std::fs;
use std::io;
use std::path::Path;

use super::tokenize::{tokenize, Pos, TaggedToken};

/// User-supplied entity surface forms, matched case-insensitively as token
/// sequences.
#[derive(Clone, Debug, Default)]
pub struct Gazetteer {
    entries: Vec<Vec<String>>,
    heads: HashSet<String>,
}

impl Gazetteer {
    pub fn new<I, S>(forms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut gaz = Gazetteer::default();
        for form in forms {
            let toks: Vec<String> = tokenize(form.as_ref())
                .into_iter()
                .map(|t| t.lower)
                .collect();
            if let Some(head) = toks.first() {
                gaz.heads.insert(head.clone());
                gaz.entries.push(toks);
            }
        }
        // Longest entries first so that overlapping matches prefer the longer one.
        gaz.entries
            .sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        gaz.entries.dedup();
        gaz
    }

    /// One entity per line; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Self {
        Gazetteer::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> io::Result<Self> {
        Ok(Gazetteer::parse(&fs::read_to_string(path)?))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn mark(&self, tokens: &mut [TaggedToken]) {
        let mut i = 0;
        while i < tokens.len() {
            if !self.heads.contains(&tokens[i].lower) {
                i += 1;
                continue;
            }
            let hit = self.entries.iter().find(|entry| {
                entry.len() <= tokens.len() - i
                    && entry.iter().zip(&tokens[i..]).all(|(e, t)| *e == t.lower)
            });
            match hit {
                Some(entry) => {
                    for t in &mut tokens[i..i + entry.len()] {
                        t.ne = true;
                    }
                    i += entry.len();
                }
                None => i += 1,
            }
        }
    }
}

fn is_capitalised_word(t: &TaggedToken) -> bool {
    t.is_word()
        && t.text.chars().next().is_some_and(char::is_uppercase)
        && !matches!(t.pos, Pos::Pron | Pos::Det | Pos::Aux | Pos::Other)
}

/// Flags maximal runs of proper nouns as named entities, plus gazetteer
/// hits. A run absorbs a dash between two of its members and a capitalised
/// word directly before it (a sentence-initial first name).
pub fn mark_named_entities(
    mut tokens: Vec<TaggedToken>,
    gazetteer: Option<&Gazetteer>,
) -> Vec<TaggedToken> {
    let n = tokens.len();
    for t in tokens.iter_mut() {
        if t.pos == Pos::Propn {
            t.ne = true;
        }
    }
    for i in 0..n {
        if tokens[i].ne {
            continue;
        }
        let between_entities = i > 0
            && i + 1 < n
            && tokens[i].text == "-"
            && tokens[i - 1].pos == Pos::Propn
            && tokens[i + 1].pos == Pos::Propn;
        let leads_entity = i + 1 < n
            && tokens[i + 1].pos == Pos::Propn
            && tokens[i + 1].start == tokens[i].end + 1
            && is_capitalised_word(&tokens[i]);
        if between_entities || leads_entity {
            tokens[i].ne = true;
        }
    }
    if let Some(gaz) = gazetteer {
        gaz.mark(&mut tokens);
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textkit::{HeuristicTagger, Tagger};

    fn ne_words(line: &str, gaz: Option<&Gazetteer>) -> Vec<String> {
        mark_named_entities(HeuristicTagger.tokenize_and_tag(line), gaz)
            .into_iter()
            .filter(|t| t.ne)
            .map(|t| t.text)
            .collect()
    }

    #[test]
    fn proper_noun_runs() {
        assert_eq!(
            ne_words("we watched Spider-Man again", None),
            ["Spider-Man"]
        );
        assert_eq!(
            ne_words("we watched Spider - Man again", None),
            ["Spider", "-", "Man"]
        );
        assert_eq!(
            ne_words("Bruce Wayne met the chairman", None),
            ["Bruce", "Wayne"]
        );
        assert!(ne_words("the chairman spoke to the newsmen", None).is_empty());
    }

    #[test]
    fn gazetteer_hits() {
        let gaz = Gazetteer::parse("# pop culture\nbatgirl\nrain man\n");
        assert_eq!(gaz.len(), 2);
        assert_eq!(
            ne_words("the batgirl comic sold out", Some(&gaz)),
            ["batgirl"]
        );
        assert_eq!(
            ne_words("she loved rain man as a kid", Some(&gaz)),
            ["rain", "man"]
        );
        assert!(ne_words("a rainy man", Some(&gaz)).is_empty());
    }
}
