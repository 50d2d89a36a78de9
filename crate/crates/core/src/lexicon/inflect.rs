//! English noun pluralisation by ordered suffix rules.

use std::collections::HashMap;

/// Extra condition on the character preceding a rule's suffix pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    Always,
    /// The pattern must be preceded by a consonant (`lady` but not `boy`).
    AfterConsonant,
}

/// Rewrites a word ending in `pattern` so that it ends in `replacement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflectionRule {
    pub pattern: String,
    pub replacement: String,
    pub priority: i32,
    pub guard: Guard,
}

impl InflectionRule {
    pub fn new(pattern: &str, replacement: &str, priority: i32) -> Self {
        InflectionRule {
            pattern: pattern.to_string(),
            replacement: replacement.to_string(),
            priority,
            guard: Guard::Always,
        }
    }

    pub fn guarded(mut self, guard: Guard) -> Self {
        self.guard = guard;
        self
    }

    fn matches(&self, word: &str) -> bool {
        let Some(stem) = word.strip_suffix(self.pattern.as_str()) else {
            return false;
        };
        match self.guard {
            Guard::Always => true,
            Guard::AfterConsonant => stem
                .chars()
                .last()
                .is_some_and(|c| c.is_ascii_alphabetic() && !"aeiou".contains(c)),
        }
    }

    fn apply(&self, word: &str) -> String {
        let stem = &word[..word.len() - self.pattern.len()];
        format!("{stem}{}", self.replacement)
    }
}

// Whole-word exceptions, consulted before any rule.
const IRREGULAR: &[(&str, &str)] = &[
    ("chairperson", "chairpersons"),
    ("human", "humans"),
    ("german", "germans"),
    ("roman", "romans"),
    ("shaman", "shamans"),
    ("talisman", "talismans"),
    ("ottoman", "ottomans"),
    ("caiman", "caimans"),
    ("walkman", "walkmans"),
    ("foot", "feet"),
    ("tooth", "teeth"),
    ("goose", "geese"),
    ("mouse", "mice"),
    ("louse", "lice"),
    ("ox", "oxen"),
    ("sheep", "sheep"),
    ("deer", "deer"),
    ("fish", "fish"),
    ("series", "series"),
    ("species", "species"),
    ("aircraft", "aircraft"),
    ("staff", "staff"),
    ("hero", "heroes"),
    ("potato", "potatoes"),
    ("tomato", "tomatoes"),
    ("echo", "echoes"),
    ("veto", "vetoes"),
    ("knife", "knives"),
    ("life", "lives"),
    ("half", "halves"),
    ("wolf", "wolves"),
    ("thief", "thieves"),
    ("leaf", "leaves"),
    ("self", "selves"),
    ("shelf", "shelves"),
    ("calf", "calves"),
    ("elf", "elves"),
    ("criterion", "criteria"),
    ("phenomenon", "phenomena"),
];

/// Ordered rule set plus irregular table. At most one rule fires per word:
/// the matching rule with the highest priority, ties broken by the longer
/// pattern.
#[derive(Clone, Debug)]
pub struct Inflector {
    irregular: HashMap<String, String>,
    rules: Vec<InflectionRule>,
}

impl Default for Inflector {
    fn default() -> Self {
        Inflector::english()
    }
}

impl Inflector {
    pub fn english() -> Self {
        let rules = vec![
            InflectionRule::new("person", "people", 100),
            InflectionRule::new("woman", "women", 90),
            InflectionRule::new("child", "children", 90),
            InflectionRule::new("wife", "wives", 85),
            InflectionRule::new("man", "men", 80),
            InflectionRule::new("y", "ies", 50).guarded(Guard::AfterConsonant),
            InflectionRule::new("ss", "sses", 40),
            InflectionRule::new("sh", "shes", 40),
            InflectionRule::new("ch", "ches", 40),
            InflectionRule::new("s", "ses", 39),
            InflectionRule::new("x", "xes", 40),
            InflectionRule::new("z", "zes", 40),
            InflectionRule::new("", "s", 0),
        ];
        let irregular = IRREGULAR
            .iter()
            .map(|(s, p)| (s.to_string(), p.to_string()))
            .collect();
        Inflector { irregular, rules }
    }

    pub fn with_irregular(mut self, singular: &str, plural: &str) -> Self {
        self.irregular
            .insert(singular.to_string(), plural.to_string());
        self
    }

    pub fn with_rule(mut self, rule: InflectionRule) -> Self {
        self.rules.push(rule);
        self
    }

    pub fn rules(&self) -> &[InflectionRule] {
        &self.rules
    }

    /// Plural of a lowercase singular noun. Multiword input pluralises its
    /// last word.
    pub fn pluralize(&self, phrase: &str) -> String {
        match phrase.rfind(' ') {
            Some(idx) => format!(
                "{}{}",
                &phrase[..=idx],
                self.pluralize_word(&phrase[idx + 1..])
            ),
            None => self.pluralize_word(phrase),
        }
    }

    fn pluralize_word(&self, word: &str) -> String {
        if word.is_empty() {
            return String::new();
        }
        if let Some(plural) = self.irregular.get(word) {
            return plural.clone();
        }
        let rule = self
            .rules
            .iter()
            .filter(|r| r.matches(word))
            .max_by_key(|r| (r.priority, r.pattern.len()));
        match rule {
            Some(rule) => rule.apply(word),
            None => word.to_string(),
        }
    }
}

/// Pluralise with the default English rules.
pub fn pluralize(word: &str) -> String {
    thread_local! {
        static ENGLISH: Inflector = Inflector::english();
    }
    ENGLISH.with(|i| i.pluralize(word))
}
