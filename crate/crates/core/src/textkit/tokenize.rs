use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Coarse part-of-speech classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pos {
    #[serde(rename = "NOUN_SG")]
    NounSg,
    #[serde(rename = "NOUN_PL")]
    NounPl,
    #[serde(rename = "PROPN")]
    Propn,
    #[serde(rename = "VERB_3SG")]
    Verb3sg,
    #[serde(rename = "VERB_OTHER")]
    VerbOther,
    #[serde(rename = "AUX")]
    Aux,
    #[serde(rename = "DET")]
    Det,
    #[serde(rename = "ADJ")]
    Adj,
    #[serde(rename = "PRON")]
    Pron,
    #[serde(rename = "PUNCT")]
    Punct,
    #[serde(rename = "OTHER")]
    Other,
}

impl Pos {
    pub fn as_str(self) -> &'static str {
        match self {
            Pos::NounSg => "NOUN_SG",
            Pos::NounPl => "NOUN_PL",
            Pos::Propn => "PROPN",
            Pos::Verb3sg => "VERB_3SG",
            Pos::VerbOther => "VERB_OTHER",
            Pos::Aux => "AUX",
            Pos::Det => "DET",
            Pos::Adj => "ADJ",
            Pos::Pron => "PRON",
            Pos::Punct => "PUNCT",
            Pos::Other => "OTHER",
        }
    }

    pub fn is_noun(self) -> bool {
        matches!(self, Pos::NounSg | Pos::NounPl | Pos::Propn)
    }

    pub fn is_verb(self) -> bool {
        matches!(self, Pos::Verb3sg | Pos::VerbOther | Pos::Aux)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| format!("unknown part of speech `{s}`"))
    }
}

/// A token with its byte span in the source line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub text: String,
    pub lower: String,
    pub pos: Pos,
    pub ne: bool,
    pub start: usize,
    pub end: usize,
}

impl TaggedToken {
    pub fn new(text: &str, start: usize) -> Self {
        TaggedToken {
            text: text.to_string(),
            lower: text.to_lowercase(),
            pos: Pos::Other,
            ne: false,
            start,
            end: start + text.len(),
        }
    }

    pub fn is_word(&self) -> bool {
        self.text.chars().next().is_some_and(char::is_alphanumeric)
    }
}

pub(crate) fn is_dash(c: char) -> bool {
    matches!(c, '-' | '\u{2010}' | '\u{2011}')
}

pub(crate) fn is_apostrophe(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}')
}

const CLITICS: [&str; 6] = ["s", "ll", "d", "re", "ve", "m"];

/// Splits a line into word and punctuation tokens.
///
/// Words are runs of alphanumerics joined by internal dashes or apostrophes;
/// every other non-space character is its own token. A trailing clitic
/// (`'s`, `'ll`, `'d`, `'re`, `'ve`, `'m`) is split off as a separate token.
/// Offsets are byte offsets into `line`.
pub fn tokenize(line: &str) -> Vec<TaggedToken> {
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (start, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if !c.is_alphanumeric() {
            let end = start + c.len_utf8();
            tokens.push(TaggedToken::new(&line[start..end], start));
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < chars.len() {
            let cj = chars[j].1;
            let joiner = (is_dash(cj) || is_apostrophe(cj))
                && chars.get(j + 1).is_some_and(|(_, n)| n.is_alphanumeric());
            if cj.is_alphanumeric() {
                j += 1;
            } else if joiner {
                j += 2;
            } else {
                break;
            }
        }
        let end = chars.get(j).map_or(line.len(), |(o, _)| *o);
        push_word(line, start, end, &mut tokens);
        i = j;
    }
    tokens
}

fn push_word(line: &str, start: usize, end: usize, tokens: &mut Vec<TaggedToken>) {
    let word = &line[start..end];
    let split = word
        .char_indices()
        .rev()
        .find(|(_, c)| is_apostrophe(*c))
        .and_then(|(idx, c)| {
            let tail = &word[idx + c.len_utf8()..];
            let lower = tail.to_lowercase();
            (idx > 0 && CLITICS.contains(&lower.as_str())).then_some(idx)
        });
    match split {
        Some(idx) => {
            tokens.push(TaggedToken::new(&word[..idx], start));
            tokens.push(TaggedToken::new(&word[idx..], start + idx));
        }
        None => tokens.push(TaggedToken::new(word, start)),
    }
}
