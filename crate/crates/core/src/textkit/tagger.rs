//! Closed-class lexicon plus suffix and context heuristics.

use super::tokenize::{tokenize, Pos, TaggedToken};

/// Assigns parts of speech to an already tokenised line.
pub trait Tagger: Send + Sync {
    fn tag(&self, tokens: Vec<TaggedToken>) -> Vec<TaggedToken>;

    fn tokenize_and_tag(&self, line: &str) -> Vec<TaggedToken> {
        self.tag(tokenize(line))
    }
}

pub const PRONOUNS: &[&str] = &[
    "he",
    "she",
    "him",
    "her",
    "his",
    "hers",
    "himself",
    "herself",
    "they",
    "them",
    "their",
    "theirs",
    "themselves",
];

const DETERMINERS: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "my", "your", "our", "its", "every",
    "each", "some", "any", "no", "another", "either", "neither", "all", "both",
];

const AUXILIARIES: &[&str] = &[
    "is",
    "was",
    "are",
    "were",
    "am",
    "be",
    "been",
    "being",
    "has",
    "have",
    "had",
    "does",
    "do",
    "did",
    "will",
    "would",
    "shall",
    "should",
    "can",
    "could",
    "may",
    "might",
    "must",
    "'re",
    "'ve",
    "'d",
    "'ll",
    "'m",
    "’re",
    "’ve",
    "’d",
    "’ll",
    "’m",
    "isn't",
    "wasn't",
    "aren't",
    "weren't",
    "hasn't",
    "haven't",
    "hadn't",
    "doesn't",
    "don't",
    "didn't",
    "won't",
    "wouldn't",
    "can't",
    "cannot",
    "couldn't",
    "shouldn't",
    "mustn't",
];

const FUNCTION_WORDS: &[&str] = &[
    "i",
    "you",
    "we",
    "it",
    "me",
    "us",
    "myself",
    "yourself",
    "ourselves",
    "itself",
    "mine",
    "yours",
    "ours",
    "at",
    "in",
    "on",
    "of",
    "to",
    "for",
    "from",
    "with",
    "by",
    "about",
    "into",
    "over",
    "under",
    "after",
    "before",
    "between",
    "through",
    "during",
    "without",
    "within",
    "against",
    "among",
    "across",
    "along",
    "around",
    "behind",
    "beyond",
    "near",
    "off",
    "onto",
    "out",
    "up",
    "down",
    "upon",
    "toward",
    "towards",
    "via",
    "per",
    "than",
    "as",
    "and",
    "or",
    "but",
    "nor",
    "so",
    "yet",
    "if",
    "because",
    "while",
    "although",
    "though",
    "unless",
    "whether",
    "when",
    "where",
    "why",
    "how",
    "what",
    "which",
    "who",
    "whom",
    "whose",
    "there",
    "here",
    "then",
    "also",
    "not",
    "never",
    "very",
    "too",
    "just",
    "only",
    "even",
    "still",
    "already",
    "again",
    "ever",
    "always",
    "often",
    "sometimes",
    "now",
    "soon",
    "yesterday",
    "today",
    "tomorrow",
    "once",
    "twice",
    "away",
    "back",
    "else",
    "instead",
    "rather",
    "quite",
    "almost",
    "perhaps",
    "maybe",
    "yes",
    "oh",
    "please",
];

const VERBS: &[&str] = &[
    "told",
    "said",
    "saw",
    "went",
    "came",
    "made",
    "took",
    "gave",
    "got",
    "knew",
    "thought",
    "found",
    "ran",
    "wrote",
    "spoke",
    "left",
    "felt",
    "kept",
    "held",
    "brought",
    "bought",
    "began",
    "became",
    "sat",
    "stood",
    "heard",
    "meant",
    "met",
    "paid",
    "sent",
    "built",
    "lost",
    "won",
    "sold",
    "taught",
    "caught",
    "fought",
    "drove",
    "rode",
    "ate",
    "drank",
    "fell",
    "flew",
    "grew",
    "threw",
    "wore",
    "broke",
    "chose",
    "forgot",
    "hid",
    "led",
    "let",
    "put",
    "read",
    "rose",
    "set",
    "shot",
    "shut",
    "sang",
    "slept",
    "spent",
    "stole",
    "struck",
    "swam",
    "understood",
    "woke",
    "gone",
    "done",
    "seen",
    "taken",
    "given",
    "known",
    "written",
    "spoken",
    "eaten",
    "driven",
    "ridden",
    "fallen",
    "flown",
    "grown",
    "thrown",
    "worn",
    "broken",
    "chosen",
    "forgotten",
    "hidden",
    "stolen",
    "woken",
    "sung",
    "swum",
    "begun",
    "become",
    "want",
    "like",
    "need",
    "think",
    "know",
    "say",
    "go",
    "get",
    "make",
    "take",
    "see",
    "come",
    "give",
    "tell",
    "work",
    "seem",
    "feel",
    "try",
    "ask",
    "leave",
    "call",
];

const ADJECTIVES: &[&str] = &[
    "tall",
    "short",
    "big",
    "small",
    "good",
    "bad",
    "new",
    "old",
    "young",
    "happy",
    "sad",
    "great",
    "little",
    "long",
    "high",
    "low",
    "large",
    "strong",
    "weak",
    "unknown",
    "red",
    "blue",
    "black",
    "white",
    "green",
    "other",
    "same",
    "different",
    "important",
    "early",
    "late",
    "hard",
    "easy",
    "real",
    "best",
    "better",
    "worse",
    "worst",
    "free",
    "full",
    "whole",
    "own",
    "sure",
    "clear",
    "certain",
    "local",
    "public",
    "private",
    "social",
    "national",
    "political",
    "human",
    "nice",
    "kind",
    "rich",
    "poor",
    "brave",
    "proud",
    "smart",
    "quiet",
    "loud",
    "busy",
    "ready",
    "right",
    "wrong",
    "true",
    "false",
    "first",
    "last",
    "next",
    "many",
    "much",
    "few",
    "several",
    "such",
    "more",
    "most",
    "less",
    "fine",
    "dead",
    "alive",
    "famous",
    "angry",
    "tired",
    "new",
    "main",
    "major",
    "minor",
    "single",
    "male",
    "female",
    "fellow",
];

// Words that end in -ing/-s but are nouns.
const NOUN_EXCEPTIONS: &[&str] = &[
    "thing",
    "king",
    "ring",
    "string",
    "morning",
    "evening",
    "building",
    "nothing",
    "something",
    "anything",
    "everything",
    "wedding",
    "ceiling",
    "sibling",
    "spring",
    "wing",
    "bus",
    "gas",
    "boss",
    "news",
    "series",
    "species",
    "class",
    "glass",
    "grass",
    "business",
    "process",
    "success",
    "address",
    "crisis",
    "analysis",
    "basis",
    "status",
    "campus",
    "virus",
    "bonus",
    "census",
    "chorus",
    "focus",
    "genius",
    "apparatus",
    "walrus",
    "octopus",
    "cactus",
    "lens",
    "atlas",
    "canvas",
    "christmas",
    "bias",
    "iris",
    "axis",
    "thesis",
    "mathematics",
    "physics",
    "politics",
    "economics",
    "ethics",
];

const PLURAL_NOUNS: &[&str] = &[
    "people", "children", "feet", "teeth", "mice", "geese", "lice", "oxen", "police",
];

const PARTICIPLES: &[&str] = &[
    "been",
    "had",
    "got",
    "gone",
    "done",
    "seen",
    "taken",
    "given",
    "known",
    "written",
    "spoken",
    "eaten",
    "driven",
    "ridden",
    "fallen",
    "flown",
    "grown",
    "thrown",
    "worn",
    "broken",
    "chosen",
    "forgotten",
    "hidden",
    "stolen",
    "woken",
    "sung",
    "swum",
    "begun",
    "become",
    "told",
    "said",
    "made",
    "found",
    "left",
    "kept",
    "held",
    "brought",
    "bought",
    "sent",
    "built",
    "lost",
    "won",
    "sold",
    "taught",
    "caught",
    "fought",
    "met",
    "paid",
    "heard",
    "felt",
    "come",
    "run",
    "put",
    "read",
    "set",
    "let",
];

fn in_list(list: &[&str], word: &str) -> bool {
    list.contains(&word)
}

pub fn is_pronoun(lower: &str) -> bool {
    in_list(PRONOUNS, lower)
}

/// Past participle heuristic used for the `'s` = has reading.
pub fn looks_like_participle(lower: &str) -> bool {
    in_list(PARTICIPLES, lower)
        || lower.len() > 4 && (lower.ends_with("ed") || lower.ends_with("en"))
}

fn is_sentence_end(t: &TaggedToken) -> bool {
    matches!(t.text.as_str(), "." | "!" | "?" | ":" | ";" | "…")
}

fn is_quote_or_bracket(t: &TaggedToken) -> bool {
    matches!(
        t.text.as_str(),
        "\"" | "'" | "“" | "”" | "‘" | "’" | "(" | "[" | "{" | "«" | "»" | "-" | "–" | "—" | "*"
    )
}

fn is_capitalised(text: &str) -> bool {
    text.chars().next().is_some_and(char::is_uppercase)
}

fn is_all_caps(text: &str) -> bool {
    let mut letters = text.chars().filter(|c| c.is_alphabetic()).peekable();
    letters.peek().is_some() && letters.all(char::is_uppercase)
}

fn is_plural_noun_shape(lower: &str) -> bool {
    if in_list(PLURAL_NOUNS, lower) || lower.ends_with("men") && lower.len() > 3 {
        return !matches!(
            lower,
            "amen" | "omen" | "ramen" | "semen" | "abdomen" | "specimen"
        );
    }
    lower.len() > 2
        && lower.ends_with('s')
        && !lower.ends_with("ss")
        && !lower.ends_with("us")
        && !lower.ends_with("is")
        && !lower.ends_with("'s")
        && !in_list(NOUN_EXCEPTIONS, lower)
}

/// Lexicon and suffix-driven tag, before context rules.
fn lexical_tag(lower: &str) -> Pos {
    if in_list(PRONOUNS, lower) {
        return Pos::Pron;
    }
    if in_list(DETERMINERS, lower) {
        return Pos::Det;
    }
    if in_list(AUXILIARIES, lower) {
        return Pos::Aux;
    }
    if in_list(FUNCTION_WORDS, lower) {
        return Pos::Other;
    }
    if in_list(VERBS, lower) {
        return Pos::VerbOther;
    }
    if in_list(ADJECTIVES, lower) {
        return Pos::Adj;
    }
    if in_list(NOUN_EXCEPTIONS, lower) {
        return Pos::NounSg;
    }
    if !lower.chars().any(char::is_alphabetic) {
        return Pos::Other;
    }
    let hyphenated = lower.contains('-');
    if hyphenated && (lower.ends_with("ing") || lower.ends_with("ed")) {
        return Pos::Adj;
    }
    if lower.len() > 4 && lower.ends_with("ly") && lower != "family" {
        return Pos::Other;
    }
    if lower.len() > 4 && lower.ends_with("ing") {
        return Pos::VerbOther;
    }
    if lower.len() > 3 && lower.ends_with("ed") && !lower.ends_with("eed") {
        return Pos::VerbOther;
    }
    const ADJ_SUFFIXES: [&str; 7] = ["ous", "ful", "ive", "able", "ible", "less", "ish"];
    if lower.len() > 4 && ADJ_SUFFIXES.iter().any(|s| lower.ends_with(s)) {
        return Pos::Adj;
    }
    if is_plural_noun_shape(lower) {
        return Pos::NounPl;
    }
    Pos::NounSg
}

const SUBJECT_WORDS: &[&str] = &["he", "she", "it", "who", "which", "that", "this"];
const CLITIC_HOSTS: &[&str] = &[
    "he", "she", "it", "that", "there", "here", "who", "what", "where", "this", "they", "we",
    "you", "i",
];

/// The default, self-contained tagger.
#[derive(Clone, Copy, Debug, Default)]
pub struct HeuristicTagger;

impl Tagger for HeuristicTagger {
    fn tag(&self, mut tokens: Vec<TaggedToken>) -> Vec<TaggedToken> {
        let shouting = {
            let mut words = tokens
                .iter()
                .filter(|t| t.is_word() && t.text.len() > 1)
                .peekable();
            words.peek().is_some() && words.all(|t| is_all_caps(&t.text))
        };

        // Pass 1: lexical classes and capitalisation.
        let mut sentence_start = true;
        for t in tokens.iter_mut() {
            if !t.is_word() {
                let clitic = t.text.chars().count() > 1
                    && super::tokenize::is_apostrophe(t.text.chars().next().unwrap_or(' '));
                if clitic {
                    t.pos = if in_list(AUXILIARIES, &t.lower) {
                        Pos::Aux
                    } else {
                        Pos::Other
                    };
                    continue;
                }
                t.pos = Pos::Punct;
                if is_sentence_end(t) {
                    sentence_start = true;
                } else if !is_quote_or_bracket(t) {
                    sentence_start = false;
                }
                continue;
            }
            let lex = lexical_tag(&t.lower);
            let closed = matches!(lex, Pos::Pron | Pos::Det | Pos::Aux | Pos::Other)
                && !t.lower.chars().any(|c| c.is_ascii_digit());
            let caps_informative = !shouting && !(is_all_caps(&t.text) && t.text.len() > 5);
            t.pos = if !sentence_start && is_capitalised(&t.text) && caps_informative && !closed {
                Pos::Propn
            } else {
                lex
            };
            sentence_start = false;
        }

        // Pass 2: context rules.
        for i in 0..tokens.len() {
            let lower = tokens[i].lower.clone();
            let prev = previous_content(&tokens, i);
            match tokens[i].pos {
                Pos::Other if lower.starts_with('\'') || lower.starts_with('’') => {
                    if (lower == "'s" || lower == "’s")
                        && prev.is_some_and(|p| in_list(CLITIC_HOSTS, &tokens[p].lower))
                    {
                        tokens[i].pos = Pos::Aux;
                    }
                }
                Pos::NounPl if !lower.ends_with("men") && !in_list(PLURAL_NOUNS, &lower) => {
                    if is_third_singular_context(&tokens, i, prev) {
                        tokens[i].pos = Pos::Verb3sg;
                    }
                }
                Pos::NounSg => {
                    let after_subject = prev.is_some_and(|p| {
                        tokens[p].pos == Pos::Pron
                            && matches!(tokens[p].lower.as_str(), "he" | "she" | "they")
                            || matches!(tokens[p].lower.as_str(), "i" | "you" | "we")
                    });
                    if after_subject {
                        tokens[i].pos = Pos::VerbOther;
                    }
                }
                _ => {}
            }
        }
        tokens
    }
}

// Index of the previous token, skipping adverbs.
fn previous_content(tokens: &[TaggedToken], i: usize) -> Option<usize> {
    (0..i).rev().find(|&j| {
        let t = &tokens[j];
        !(t.lower.len() > 4 && t.lower.ends_with("ly") && t.pos == Pos::Other
            || matches!(
                t.lower.as_str(),
                "also"
                    | "never"
                    | "always"
                    | "often"
                    | "still"
                    | "just"
                    | "only"
                    | "even"
                    | "really"
                    | "sometimes"
                    | "already"
                    | "not"
            ))
    })
}

fn is_third_singular_context(tokens: &[TaggedToken], i: usize, prev: Option<usize>) -> bool {
    let Some(p) = prev else { return false };
    let prev_tok = &tokens[p];
    if prev_tok.pos == Pos::Pron || in_list(SUBJECT_WORDS, &prev_tok.lower) {
        return in_list(SUBJECT_WORDS, &prev_tok.lower);
    }
    if matches!(prev_tok.pos, Pos::NounSg | Pos::Propn) {
        let next = tokens.get(i + 1);
        return next.is_some_and(|n| matches!(n.pos, Pos::Det | Pos::Pron | Pos::Adj))
            || next.is_some_and(|n| n.lower == "to" || n.lower == "that");
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tags(line: &str) -> Vec<(String, Pos)> {
        HeuristicTagger
            .tokenize_and_tag(line)
            .into_iter()
            .map(|t| (t.text, t.pos))
            .collect()
    }

    fn pos_of(line: &str, word: &str) -> Pos {
        tags(line).into_iter().find(|(t, _)| t == word).unwrap().1
    }

    #[test]
    fn closed_classes() {
        assert_eq!(pos_of("He told newsmen.", "He"), Pos::Pron);
        assert_eq!(pos_of("He told newsmen.", "."), Pos::Punct);
        assert_eq!(pos_of("the car", "the"), Pos::Det);
        assert_eq!(pos_of("She is here.", "is"), Pos::Aux);
        for p in PRONOUNS {
            assert_eq!(pos_of(&format!("x {p}"), p), Pos::Pron);
            let upper = p.to_uppercase();
            assert_eq!(pos_of(&format!("x {upper} y"), &upper), Pos::Pron);
        }
        assert_eq!(pos_of("and it was", "it"), Pos::Other);
    }

    #[test]
    fn capitalisation_marks_proper_nouns_mid_sentence() {
        assert_eq!(
            pos_of("I met Zimmerman yesterday.", "Zimmerman"),
            Pos::Propn
        );
        assert_eq!(pos_of("Zimmerman arrived.", "Zimmerman"), Pos::NounSg);
        assert_eq!(
            pos_of("He said. Zimmerman arrived.", "Zimmerman"),
            Pos::NounSg
        );
        assert_eq!(pos_of("\"Newsmen came,\" he said.", "Newsmen"), Pos::NounPl);
        assert_eq!(pos_of("we saw Spider-Man there", "Spider-Man"), Pos::Propn);
    }

    #[test]
    fn s_ambiguity() {
        assert_eq!(pos_of("He runs fast.", "runs"), Pos::Verb3sg);
        assert_eq!(pos_of("He quickly runs home.", "runs"), Pos::Verb3sg);
        assert_eq!(pos_of("The dogs bark.", "dogs"), Pos::NounPl);
        assert_eq!(
            pos_of("The spokesman likes the plan.", "likes"),
            Pos::Verb3sg
        );
        assert_eq!(pos_of("He told newsmen.", "newsmen"), Pos::NounPl);
        assert_eq!(pos_of("The spokesman spoke.", "spokesman"), Pos::NounSg);
    }

    #[test]
    fn clitic_s_after_pronoun_is_auxiliary() {
        assert_eq!(pos_of("He's here", "'s"), Pos::Aux);
        assert_eq!(pos_of("the man-cave's door", "'s"), Pos::Other);
    }

    #[test]
    fn deterministic() {
        let line = "She said his spokesman's girlfriend runs the Man-Cave Bar.";
        assert_eq!(tags(line), tags(line));
    }
}
