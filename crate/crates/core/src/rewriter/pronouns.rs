use std::collections::HashSet;

use crate::textkit::{looks_like_participle, Pos, TaggedToken};

use super::{transfer_case, EditKind, RewriteEdit};

/// Grammatical role of a gendered pronoun.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Subject,
    Object,
    DetPossessive,
    PronPossessive,
    Reflexive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PronounRule {
    pub source: &'static str,
    pub role: Role,
    pub target: &'static str,
}

const fn rule(source: &'static str, role: Role, target: &'static str) -> PronounRule {
    PronounRule {
        source,
        role,
        target,
    }
}

/// Every gendered pronoun reading and its singular *they* form.
pub const PRONOUN_RULES: [PronounRule; 10] = [
    rule("he", Role::Subject, "they"),
    rule("she", Role::Subject, "they"),
    rule("him", Role::Object, "them"),
    rule("her", Role::Object, "them"),
    rule("his", Role::DetPossessive, "their"),
    rule("her", Role::DetPossessive, "their"),
    rule("his", Role::PronPossessive, "theirs"),
    rule("hers", Role::PronPossessive, "theirs"),
    rule("himself", Role::Reflexive, "themselves"),
    rule("herself", Role::Reflexive, "themselves"),
];

pub fn is_gendered_pronoun(lower: &str) -> bool {
    PRONOUN_RULES.iter().any(|r| r.source == lower)
}

/// Third-person singular form and the form that agrees with *they*.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AgreementRule {
    pub verb_form: &'static str,
    pub plural_form: &'static str,
}

const fn agree(verb_form: &'static str, plural_form: &'static str) -> AgreementRule {
    AgreementRule {
        verb_form,
        plural_form,
    }
}

pub const IRREGULAR_AGREEMENT: [AgreementRule; 9] = [
    agree("is", "are"),
    agree("was", "were"),
    agree("has", "have"),
    agree("does", "do"),
    agree("goes", "go"),
    agree("isn't", "aren't"),
    agree("wasn't", "weren't"),
    agree("hasn't", "haven't"),
    agree("doesn't", "don't"),
];

/// Base form of a third-person singular verb, if it has one.
pub fn plural_verb_form(lower: &str) -> Option<String> {
    let normalized = lower.replace('’', "'");
    if let Some(r) = IRREGULAR_AGREEMENT
        .iter()
        .find(|r| r.verb_form == normalized)
    {
        return Some(if lower.contains('’') {
            r.plural_form.replace('\'', "’")
        } else {
            r.plural_form.to_string()
        });
    }
    if !lower.chars().all(|c| c.is_ascii_lowercase()) || lower.len() < 3 || !lower.ends_with('s') {
        return None;
    }
    if lower.ends_with("ss") || lower.ends_with("us") || lower.ends_with("is") {
        return None;
    }
    if lower.len() > 4 && lower.ends_with("ies") {
        return Some(format!("{}y", &lower[..lower.len() - 3]));
    }
    const ES_ENDINGS: [&str; 6] = ["sses", "shes", "ches", "xes", "zes", "oes"];
    if ES_ENDINGS.iter().any(|e| lower.ends_with(e)) {
        return Some(lower[..lower.len() - 2].to_string());
    }
    Some(lower[..lower.len() - 1].to_string())
}

fn is_adverb(t: &TaggedToken) -> bool {
    t.pos == Pos::Other && t.lower.len() > 4 && t.lower.ends_with("ly")
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
                | "usually"
                | "then"
                | "now"
                | "soon"
                | "quickly"
        )
}

const OTHER_SUBJECTS: [&str; 9] = ["i", "you", "we", "it", "me", "us", "this", "these", "those"];

fn is_clause_boundary(t: &TaggedToken) -> bool {
    matches!(t.lower.as_str(), "," | "that" | "who" | "which" | "whom")
}

fn is_sentence_end(t: &TaggedToken) -> bool {
    matches!(t.text.as_str(), "." | "!" | "?" | ";" | ":" | "…")
}

fn next_non_punct(tokens: &[TaggedToken], i: usize) -> Option<&TaggedToken> {
    tokens[i + 1..].iter().find(|t| t.pos != Pos::Punct)
}

fn role_of(tokens: &[TaggedToken], i: usize) -> Option<Role> {
    match tokens[i].lower.as_str() {
        "he" | "she" => Some(Role::Subject),
        "him" => Some(Role::Object),
        "hers" => Some(Role::PronPossessive),
        "himself" | "herself" => Some(Role::Reflexive),
        "her" => {
            let possessive = next_non_punct(tokens, i).is_some_and(|n| {
                matches!(n.pos, Pos::NounSg | Pos::NounPl | Pos::Propn | Pos::Adj)
            });
            Some(if possessive {
                Role::DetPossessive
            } else {
                Role::Object
            })
        }
        "his" => {
            let standalone = tokens
                .get(i + 1)
                .is_none_or(|n| n.pos == Pos::Punct || n.pos.is_verb());
            Some(if standalone {
                Role::PronPossessive
            } else {
                Role::DetPossessive
            })
        }
        _ => None,
    }
}

fn target_of(lower: &str, role: Role) -> &'static str {
    PRONOUN_RULES
        .iter()
        .find(|r| r.source == lower && r.role == role)
        .map(|r| r.target)
        .expect("every pronoun reading has a rule")
}

fn edit(t: &TaggedToken, replacement: String, kind: EditKind, uncertain: bool) -> RewriteEdit {
    RewriteEdit {
        line: 0,
        start: t.start,
        end: t.end,
        original: t.text.clone(),
        replacement,
        kind,
        agreement_uncertain: uncertain,
    }
}

/// Agreement edit for the finite verb governed by the subject at `i`.
fn agreement_edit(tokens: &[TaggedToken], i: usize, skip: &HashSet<usize>) -> Option<RewriteEdit> {
    let mut uncertain = false;
    for j in i + 1..tokens.len() {
        let t = &tokens[j];
        if skip.contains(&j)
            || is_sentence_end(t)
            || t.pos.is_noun()
            || t.pos == Pos::Pron
            || t.pos == Pos::VerbOther
            || OTHER_SUBJECTS.contains(&t.lower.as_str())
        {
            return None;
        }
        if is_clause_boundary(t) {
            uncertain = true;
            continue;
        }
        if matches!(t.lower.as_str(), "'s" | "’s") {
            let apostrophe = &t.text[..t.text.len() - 1];
            let participle = tokens[j + 1..]
                .iter()
                .find(|n| !is_adverb(n))
                .is_some_and(|n| looks_like_participle(&n.lower));
            let clitic = if participle { "ve" } else { "re" };
            let replacement = transfer_case(&t.text[apostrophe.len()..], clitic);
            return Some(edit(
                t,
                format!("{apostrophe}{replacement}"),
                EditKind::Agreement,
                uncertain,
            ));
        }
        if matches!(t.pos, Pos::Verb3sg | Pos::Aux) {
            return plural_verb_form(&t.lower)
                .filter(|p| *p != t.lower)
                .map(|p| {
                    edit(
                        t,
                        transfer_case(&t.text, &p),
                        EditKind::Agreement,
                        uncertain,
                    )
                });
        }
    }
    None
}

/// Pronoun and agreement edits for `tokens`, leaving the indices in `skip`
/// untouched.
pub(crate) fn pronoun_edits(tokens: &[TaggedToken], skip: &HashSet<usize>) -> Vec<RewriteEdit> {
    let mut edits = Vec::new();
    for i in 0..tokens.len() {
        if skip.contains(&i) {
            continue;
        }
        let Some(role) = role_of(tokens, i) else {
            continue;
        };
        let t = &tokens[i];
        edits.push(edit(
            t,
            transfer_case(&t.text, target_of(&t.lower, role)),
            EditKind::Pronoun,
            false,
        ));
        if role == Role::Subject {
            if let Some(e) = agreement_edit(tokens, i, skip) {
                edits.push(e);
            }
        }
    }
    edits.sort_by_key(|e| e.start);
    edits.dedup_by_key(|e| e.start);
    edits
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_table_is_complete() {
        for p in [
            "he", "she", "him", "her", "his", "hers", "himself", "herself",
        ] {
            assert!(is_gendered_pronoun(p));
        }
        for p in ["they", "them", "their", "theirs", "themselves", "it"] {
            assert!(!is_gendered_pronoun(p));
        }
        assert_eq!(target_of("her", Role::DetPossessive), "their");
        assert_eq!(target_of("her", Role::Object), "them");
        assert_eq!(target_of("his", Role::PronPossessive), "theirs");
    }

    #[test]
    fn verb_base_forms() {
        for (v, p) in [
            ("is", "are"),
            ("was", "were"),
            ("has", "have"),
            ("does", "do"),
            ("goes", "go"),
            ("doesn't", "don't"),
            ("doesn’t", "don’t"),
            ("runs", "run"),
            ("tries", "try"),
            ("lies", "lie"),
            ("watches", "watch"),
            ("fixes", "fix"),
            ("echoes", "echo"),
            ("uses", "use"),
            ("misses", "miss"),
        ] {
            assert_eq!(plural_verb_form(v).as_deref(), Some(p), "{v}");
        }
        for v in ["will", "can", "told", "'s", "focus"] {
            assert_eq!(plural_verb_form(v), None, "{v}");
        }
    }
}
