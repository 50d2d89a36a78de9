//! Gender-marking affixes.
//!
//! Six suffixes (`-man`, `-woman`, `-boy`, `-girl`, `-manship`, `-womanship`)
//! and four prefixes (`man-`, `woman-`, `boy-`, `girl-`). Suffix labels are
//! written without the dash (`woman`), prefix labels with a trailing dash
//! (`woman-`), which is also the textual form used in catalogue and candidate
//! files.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AffixKind {
    Prefix,
    Suffix,
}

impl AffixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AffixKind::Prefix => "prefix",
            AffixKind::Suffix => "suffix",
        }
    }
}

impl fmt::Display for AffixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AffixKind {
    type Err = UnknownAffix;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prefix" => Ok(AffixKind::Prefix),
            "suffix" => Ok(AffixKind::Suffix),
            other => Err(UnknownAffix(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Masculine,
    Feminine,
}

impl Gender {
    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Masculine => "masculine",
            Gender::Feminine => "feminine",
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Gender {
    type Err = UnknownAffix;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "masculine" => Ok(Gender::Masculine),
            "feminine" => Ok(Gender::Feminine),
            other => Err(UnknownAffix(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown affix `{0}`")]
pub struct UnknownAffix(pub String);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Affix {
    SuffixMan,
    SuffixWoman,
    SuffixBoy,
    SuffixGirl,
    SuffixManship,
    SuffixWomanship,
    PrefixMan,
    PrefixWoman,
    PrefixBoy,
    PrefixGirl,
}

impl Affix {
    pub const ALL: [Affix; 10] = [
        Affix::SuffixMan,
        Affix::SuffixWoman,
        Affix::SuffixBoy,
        Affix::SuffixGirl,
        Affix::SuffixManship,
        Affix::SuffixWomanship,
        Affix::PrefixMan,
        Affix::PrefixWoman,
        Affix::PrefixBoy,
        Affix::PrefixGirl,
    ];

    /// Suffixes ordered longest first, so that `-womanship` shadows
    /// `-manship` and `-woman` shadows `-man`.
    pub const SUFFIXES_LONGEST_FIRST: [Affix; 6] = [
        Affix::SuffixWomanship,
        Affix::SuffixManship,
        Affix::SuffixWoman,
        Affix::SuffixGirl,
        Affix::SuffixMan,
        Affix::SuffixBoy,
    ];

    pub const PREFIXES_LONGEST_FIRST: [Affix; 4] = [
        Affix::PrefixWoman,
        Affix::PrefixGirl,
        Affix::PrefixMan,
        Affix::PrefixBoy,
    ];

    pub fn kind(self) -> AffixKind {
        match self {
            Affix::PrefixMan | Affix::PrefixWoman | Affix::PrefixBoy | Affix::PrefixGirl => {
                AffixKind::Prefix
            }
            _ => AffixKind::Suffix,
        }
    }

    /// The bare morpheme, e.g. `man` for both `-man` and `man-`.
    pub fn stem(self) -> &'static str {
        match self {
            Affix::SuffixMan | Affix::PrefixMan => "man",
            Affix::SuffixWoman | Affix::PrefixWoman => "woman",
            Affix::SuffixBoy | Affix::PrefixBoy => "boy",
            Affix::SuffixGirl | Affix::PrefixGirl => "girl",
            Affix::SuffixManship => "manship",
            Affix::SuffixWomanship => "womanship",
        }
    }

    /// File-format label: `woman` for the suffix, `woman-` for the prefix.
    pub fn label(self) -> &'static str {
        match self {
            Affix::PrefixMan => "man-",
            Affix::PrefixWoman => "woman-",
            Affix::PrefixBoy => "boy-",
            Affix::PrefixGirl => "girl-",
            other => other.stem(),
        }
    }

    /// Display form used in report tables: `-man`, `man-`.
    pub fn display(self) -> String {
        match self.kind() {
            AffixKind::Prefix => self.label().to_string(),
            AffixKind::Suffix => format!("-{}", self.stem()),
        }
    }

    pub fn gender(self) -> Gender {
        if self.stem().contains("woman") || self.stem().contains("girl") {
            Gender::Feminine
        } else {
            Gender::Masculine
        }
    }

    /// Plural surface of a suffix (`men` for `-man`); prefixes are unchanged
    /// under pluralisation.
    pub fn plural_suffix(self) -> Option<&'static str> {
        match self {
            Affix::SuffixMan => Some("men"),
            Affix::SuffixWoman => Some("women"),
            Affix::SuffixBoy => Some("boys"),
            Affix::SuffixGirl => Some("girls"),
            Affix::SuffixManship => Some("manships"),
            Affix::SuffixWomanship => Some("womanships"),
            _ => None,
        }
    }

    /// Masculine suffix-swap counterpart of a feminine suffix.
    pub fn masculine_counterpart(self) -> Option<Affix> {
        match self {
            Affix::SuffixWoman => Some(Affix::SuffixMan),
            Affix::SuffixGirl => Some(Affix::SuffixBoy),
            Affix::SuffixWomanship => Some(Affix::SuffixManship),
            _ => None,
        }
    }

    pub fn parse(kind: AffixKind, label: &str) -> Result<Affix, UnknownAffix> {
        let affix = Affix::from_label(label)?;
        if affix.kind() == kind {
            Ok(affix)
        } else {
            Err(UnknownAffix(format!("{label} ({kind})")))
        }
    }

    /// Accepts `man`, `-man`, `man-`, case-insensitively.
    pub fn from_label(label: &str) -> Result<Affix, UnknownAffix> {
        let lower = label.trim().to_lowercase();
        let (prefix, stem) = if let Some(s) = lower.strip_suffix('-') {
            (true, s)
        } else if let Some(s) = lower.strip_prefix('-') {
            (false, s)
        } else {
            (false, lower.as_str())
        };
        let found = Affix::ALL
            .iter()
            .copied()
            .find(|a| a.stem() == stem && (a.kind() == AffixKind::Prefix) == prefix);
        found.ok_or_else(|| UnknownAffix(label.to_string()))
    }

    /// Remainder of `word` once this affix is removed, if the affix sits at
    /// the right edge. Prefix `man-` requires the dash; the other prefixes
    /// match with or without one (the dash is dropped from the remainder).
    pub fn strip(self, word: &str) -> Option<&str> {
        match self.kind() {
            AffixKind::Suffix => word.strip_suffix(self.stem()),
            AffixKind::Prefix => {
                let rest = word.strip_prefix(self.stem())?;
                match (self, rest.strip_prefix('-')) {
                    (_, Some(after_dash)) => Some(after_dash),
                    (Affix::PrefixMan, None) => None,
                    (_, None) => Some(rest),
                }
            }
        }
    }

    /// Like [`Affix::strip`] but also accepts the plural suffix surface.
    pub fn strip_inflected(self, word: &str) -> Option<&str> {
        self.strip(word)
            .or_else(|| self.plural_suffix().and_then(|p| word.strip_suffix(p)))
    }
}

impl fmt::Display for Affix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Affix {
    type Err = UnknownAffix;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Affix::from_label(s)
    }
}

impl Serialize for Affix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for Affix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Affix::from_label(&s).map_err(serde::de::Error::custom)
    }
}
