//! Catalogue construction: masculine completion, plural expansion, skew.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::catalogue::{Catalogue, CatalogueError, Number, TermPair};
use super::inflect::Inflector;
use crate::affix::{Affix, AffixKind, Gender};

pub const PLURAL_PROVENANCE: &str = "plural-expansion";
pub const MASCULINE_PROVENANCE: &str = "masculine-completion";

/// Adds a plural pair after every singular pair, pluralising both sides.
///
/// A singular pair is skipped when its singular or plural gendered form is
/// on the suppression list, or when the catalogue already holds a plural
/// pair with that key (an explicit override). A generated plural that would
/// map an existing key to a different neutral is a collision.
pub fn expand_plurals(
    cat: &Catalogue,
    suppress: &[String],
    inflector: &Inflector,
) -> Result<Catalogue, CatalogueError> {
    let suppressed: HashSet<&str> = suppress.iter().map(String::as_str).collect();
    let mut generated: HashMap<String, String> = HashMap::new();
    let mut out = Vec::with_capacity(cat.len() * 2);

    for (pair, prov) in cat.entries() {
        let plural = (pair.number == Number::Singular).then(|| TermPair {
            gendered: inflector.pluralize(&pair.gendered),
            neutral: inflector.pluralize(&pair.neutral),
            number: Number::Plural,
            affix: pair.affix,
        });
        out.push((pair.clone(), prov));
        let Some(plural) = plural else { continue };

        if suppressed.contains(pair.gendered.as_str())
            || suppressed.contains(plural.gendered.as_str())
        {
            continue;
        }
        if cat.contains(&plural.gendered, Number::Plural) {
            continue;
        }
        if let Some(existing) = cat.get(&plural.gendered, Number::Singular) {
            if existing.neutral != plural.neutral {
                return Err(collision(&pair, &plural, &existing.neutral));
            }
        }
        match generated.get(&plural.gendered) {
            Some(neutral) if *neutral != plural.neutral => {
                return Err(collision(&pair, &plural, neutral));
            }
            Some(_) => continue,
            None => {
                generated.insert(plural.gendered.clone(), plural.neutral.clone());
            }
        }
        out.push((plural, PLURAL_PROVENANCE.to_string()));
    }
    Catalogue::from_entries(out)
}

fn collision(singular: &TermPair, plural: &TermPair, existing: &str) -> CatalogueError {
    CatalogueError::Collision {
        singular: singular.gendered.clone(),
        plural: plural.gendered.clone(),
        existing: existing.to_string(),
    }
}

/// Masculine suffix-swap of a feminine suffix form (`noblewoman` ->
/// `nobleman`, `cowgirls` -> `cowboys`).
pub fn masculine_form(pair: &TermPair) -> Option<(String, Affix)> {
    let masc = pair.affix.masculine_counterpart()?;
    let (stem, tail) = match pair.number {
        Number::Singular => (pair.gendered.strip_suffix(pair.affix.stem())?, masc.stem()),
        Number::Plural => (
            pair.gendered.strip_suffix(pair.affix.plural_suffix()?)?,
            masc.plural_suffix()?,
        ),
    };
    Some((format!("{stem}{tail}"), masc))
}

/// For every feminine-suffix pair whose masculine counterpart is absent,
/// adds the masculine pair with the same neutral right after it.
pub fn complete_masculine(cat: &Catalogue) -> Result<Catalogue, CatalogueError> {
    let mut added: HashSet<(String, Number)> = HashSet::new();
    let mut out = Vec::with_capacity(cat.len());
    for (pair, prov) in cat.entries() {
        let masc = masculine_form(&pair);
        let number = pair.number;
        let neutral = pair.neutral.clone();
        out.push((pair, prov));
        let Some((gendered, affix)) = masc else {
            continue;
        };
        if cat.contains(&gendered, number) || !added.insert((gendered.clone(), number)) {
            continue;
        }
        let masc_pair = TermPair {
            gendered,
            neutral,
            number,
            affix,
        };
        out.push((masc_pair, MASCULINE_PROVENANCE.to_string()));
    }
    Catalogue::from_entries(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Share {
    pub count: usize,
    /// Absent for an empty catalogue.
    pub share: Option<f64>,
}

/// Counts and shares of pairs by affix gender and by affix kind.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkewReport {
    pub total: usize,
    pub masculine: Share,
    pub feminine: Share,
    pub prefix: Share,
    pub suffix: Share,
    /// Per-affix counts in `Affix::ALL` order.
    pub per_affix: Vec<(String, usize)>,
}

pub fn skew_report(cat: &Catalogue) -> SkewReport {
    let total = cat.len();
    let count = |f: &dyn Fn(&TermPair) -> bool| cat.pairs().iter().filter(|p| f(p)).count();
    let share = |n: usize| Share {
        count: n,
        share: (total > 0).then(|| n as f64 / total as f64),
    };
    let per_affix = Affix::ALL
        .iter()
        .map(|a| (a.display(), count(&|p| p.affix == *a)))
        .collect();
    SkewReport {
        total,
        masculine: share(count(&|p| p.affix_gender() == Gender::Masculine)),
        feminine: share(count(&|p| p.affix_gender() == Gender::Feminine)),
        prefix: share(count(&|p| p.affix_kind() == AffixKind::Prefix)),
        suffix: share(count(&|p| p.affix_kind() == AffixKind::Suffix)),
        per_affix,
    }
}

impl SkewReport {
    pub fn to_markdown(&self) -> String {
        let fmt_share = |s: &Share| match s.share {
            Some(v) => format!("{:.2}%", v * 100.0),
            None => "n/a".to_string(),
        };
        let mut out = String::from("| partition | pairs | share |\n|---|---:|---:|\n");
        for (name, s) in [
            ("masculine", &self.masculine),
            ("feminine", &self.feminine),
            ("prefix", &self.prefix),
            ("suffix", &self.suffix),
        ] {
            out.push_str(&format!("| {name} | {} | {} |\n", s.count, fmt_share(s)));
        }
        out.push_str(&format!(
            "| total | {} | |\n\n| affix | pairs |\n|---|---:|\n",
            self.total
        ));
        for (affix, n) in &self.per_affix {
            out.push_str(&format!("| {affix} | {n} |\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(pairs: &[(&str, &str, Affix)]) -> Catalogue {
        Catalogue::from_pairs(
            pairs.iter().map(|(g, n, a)| TermPair::singular(g, n, *a)),
            "test",
        )
        .unwrap()
    }

    #[test]
    fn expand_adds_plural_pair() {
        let c = cat(&[("chairman", "chairperson", Affix::SuffixMan)]);
        let out = expand_plurals(&c, &[], &Inflector::english()).unwrap();
        assert_eq!(out.len(), 2);
        let pl = out.get("chairmen", Number::Plural).unwrap();
        assert_eq!(pl.neutral, "chairpersons");
        assert_eq!(
            out.provenance_of("chairmen", Number::Plural),
            Some(PLURAL_PROVENANCE)
        );
    }

    #[test]
    fn expand_empty_and_suppressed() {
        let empty = Catalogue::new();
        assert!(expand_plurals(&empty, &[], &Inflector::english())
            .unwrap()
            .is_empty());
        let c = cat(&[("chairman", "chairperson", Affix::SuffixMan)]);
        let out = expand_plurals(&c, &["chairmen".to_string()], &Inflector::english()).unwrap();
        assert_eq!(out, c);
    }

    #[test]
    fn expand_respects_existing_plural_override() {
        let mut c = cat(&[("fisherman", "fisher", Affix::SuffixMan)]);
        c.insert(
            TermPair::new(
                "fishermen",
                "fishing crews",
                Number::Plural,
                Affix::SuffixMan,
            ),
            "manual",
        )
        .unwrap();
        let out = expand_plurals(&c, &[], &Inflector::english()).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(
            out.get("fishermen", Number::Plural).unwrap().neutral,
            "fishing crews"
        );
    }

    #[test]
    fn expand_reports_collisions() {
        // Both singulars pluralise to the same gendered surface.
        let c = cat(&[
            ("batboy", "bat person", Affix::SuffixBoy),
            ("ballboy", "ball person", Affix::SuffixBoy),
        ]);
        let inflector = Inflector::english().with_irregular("batboy", "ballboys");
        let err = expand_plurals(&c, &[], &inflector).unwrap_err();
        assert!(matches!(err, CatalogueError::Collision { .. }), "{err}");
    }

    #[test]
    fn completion_adds_missing_masculine() {
        let c = cat(&[("noblewoman", "noble", Affix::SuffixWoman)]);
        let out = complete_masculine(&c).unwrap();
        let masc = out.get("nobleman", Number::Singular).unwrap();
        assert_eq!(masc.neutral, "noble");
        assert_eq!(masc.affix, Affix::SuffixMan);
        assert_eq!(
            out.provenance_of("nobleman", Number::Singular),
            Some(MASCULINE_PROVENANCE)
        );
    }

    #[test]
    fn completion_keeps_existing_counterpart() {
        let c = cat(&[
            ("chairwoman", "chairperson", Affix::SuffixWoman),
            ("chairman", "chairperson", Affix::SuffixMan),
        ]);
        assert_eq!(complete_masculine(&c).unwrap(), c);
        assert!(complete_masculine(&Catalogue::new()).unwrap().is_empty());
    }

    #[test]
    fn completion_swaps_girl_and_womanship() {
        let c = cat(&[
            ("cowgirl", "cow herder", Affix::SuffixGirl),
            (
                "stateswomanship",
                "statespersonship",
                Affix::SuffixWomanship,
            ),
        ]);
        let out = complete_masculine(&c).unwrap();
        assert!(out.contains("cowboy", Number::Singular));
        assert!(out.contains("statesmanship", Number::Singular));
        let plural = TermPair::new("cowgirls", "cow herders", Number::Plural, Affix::SuffixGirl);
        assert_eq!(
            masculine_form(&plural),
            Some(("cowboys".into(), Affix::SuffixBoy))
        );
    }

    #[test]
    fn skew_shares() {
        let c = cat(&[
            ("chairman", "chairperson", Affix::SuffixMan),
            ("fireman", "firefighter", Affix::SuffixMan),
            ("cowboy", "cow herder", Affix::SuffixBoy),
            ("boyfriend", "partner", Affix::PrefixBoy),
            ("hitwoman", "assassin", Affix::SuffixWoman),
        ]);
        let r = skew_report(&c);
        assert_eq!(r.feminine.count, 1);
        assert_eq!(r.feminine.share, Some(0.2));
        assert_eq!(r.masculine.share, Some(0.8));
        assert_eq!(r.prefix.share.unwrap() + r.suffix.share.unwrap(), 1.0);

        let fem = cat(&[("hitwoman", "assassin", Affix::SuffixWoman)]);
        assert_eq!(skew_report(&fem).feminine.share, Some(1.0));

        let empty = skew_report(&Catalogue::new());
        assert_eq!(empty.total, 0);
        assert_eq!(empty.feminine.share, None);
        assert!(empty.to_markdown().contains("n/a"));
    }
}
