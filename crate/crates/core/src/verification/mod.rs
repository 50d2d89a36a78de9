//! Dictionary verification of mined candidates and the human review rounds.
//!
//! Lookups consult the on-disk cache first, then the remote dictionary, and
//! finally a bundled offline wordlist. A dashed term that is not found is
//! retried with the dash replaced by a space.

mod cache;
mod client;
mod review;

use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::extraction::{CandidateTerm, RejectReason, Status};

pub use cache::{CacheEntry, CacheError, DictCache};
pub use client::{
    ClientError, DictionaryClient, HttpDictionary, RateLimiter, RemoteConfig, Throttled,
    DEFAULT_KEY_ENV,
};
pub use review::{
    apply_review, export_review, import_review, write_decisions, Decision, ReviewDecision,
    ReviewError, ReviewImport, ReviewStage, REVIEW_HEADER,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictSource {
    Remote,
    Cache,
    OfflineWordlist,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DictVerdict {
    pub term: String,
    pub found: bool,
    /// The form that matched: the term itself or its dash-to-space variant.
    pub matched_form: String,
    pub source: VerdictSource,
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("dictionary unavailable for `{term}` and no cached or offline entry: {cause}")]
    LookupUnavailable { term: String, cause: ClientError },
    #[error("no dictionary configured: supply a remote client or an offline wordlist")]
    NoDictionary,
    #[error("lookup term must be lowercase and nonempty, got `{0}`")]
    BadTerm(String),
    #[error("could not write dictionary cache: {0}")]
    Cache(#[from] std::io::Error),
    #[error("review incomplete; no decision for: {}", missing.join(", "))]
    IncompleteReview { missing: Vec<String> },
}

/// The forms tried for `term`: itself, then the dash-to-space variant.
pub fn lookup_forms(term: &str) -> Vec<String> {
    let mut forms = vec![term.to_string()];
    if term.contains('-') {
        forms.push(term.replace('-', " "));
    }
    forms
}

/// Cache, remote client and offline wordlist behind one lookup.
pub struct Verifier {
    cache: Mutex<DictCache>,
    remote: Option<Box<dyn DictionaryClient>>,
    offline: Option<HashSet<String>>,
    remote_calls: AtomicU64,
}

impl Verifier {
    pub fn new(cache: DictCache) -> Self {
        Verifier {
            cache: Mutex::new(cache),
            remote: None,
            offline: None,
            remote_calls: AtomicU64::new(0),
        }
    }

    pub fn with_remote(mut self, client: impl DictionaryClient + 'static) -> Self {
        self.remote = Some(Box::new(client));
        self
    }

    pub fn with_offline(mut self, words: HashSet<String>) -> Self {
        self.offline = Some(words);
        self
    }

    /// Number of remote requests issued so far.
    pub fn remote_calls(&self) -> u64 {
        self.remote_calls.load(Ordering::Relaxed)
    }

    pub fn into_cache(self) -> DictCache {
        self.cache.into_inner().expect("cache lock")
    }

    fn offline_match(&self, forms: &[String]) -> Option<Option<String>> {
        let words = self.offline.as_ref()?;
        Some(forms.iter().find(|f| words.contains(f.as_str())).cloned())
    }

    /// Looks `term` up. Remote verdicts are cached; with no remote client the
    /// offline wordlist decides.
    pub fn lookup(&self, term: &str) -> Result<DictVerdict, VerifyError> {
        if term.is_empty() || term.chars().any(char::is_uppercase) {
            return Err(VerifyError::BadTerm(term.to_string()));
        }
        if let Some(e) = self.cache.lock().expect("cache lock").get(term) {
            return Ok(DictVerdict {
                term: term.to_string(),
                found: e.found,
                matched_form: e.matched_form.clone(),
                source: VerdictSource::Cache,
            });
        }
        let forms = lookup_forms(term);
        let offline = |forms: &[String]| {
            self.offline_match(forms).map(|hit| DictVerdict {
                term: term.to_string(),
                found: hit.is_some(),
                matched_form: hit.unwrap_or_else(|| term.to_string()),
                source: VerdictSource::OfflineWordlist,
            })
        };
        let Some(remote) = &self.remote else {
            return offline(&forms).ok_or(VerifyError::NoDictionary);
        };
        let mut failure = None;
        let mut hit = None;
        for form in &forms {
            self.remote_calls.fetch_add(1, Ordering::Relaxed);
            match remote.lookup(form) {
                Ok(true) => {
                    hit = Some(form.clone());
                    break;
                }
                Ok(false) => {}
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        if let Some(cause) = failure {
            return match offline(&forms) {
                Some(v) if v.found => Ok(v),
                _ => Err(VerifyError::LookupUnavailable {
                    term: term.to_string(),
                    cause,
                }),
            };
        }
        let verdict = DictVerdict {
            term: term.to_string(),
            found: hit.is_some(),
            matched_form: hit.unwrap_or_else(|| term.to_string()),
            source: VerdictSource::Remote,
        };
        self.cache.lock().expect("cache lock").record(
            term,
            verdict.found,
            &verdict.matched_form,
        )?;
        Ok(verdict)
    }
}

/// Second round: `r1_pass` candidates become `r2_pass` when the dictionary
/// knows them and `r2_reject(no_dict_entry)` otherwise. Lookups run in
/// parallel; on any failure no status changes and the error is returned
/// (verdicts gathered so far stay cached).
pub fn round2_verify(
    candidates: &mut [CandidateTerm],
    verifier: &Verifier,
) -> Result<Vec<DictVerdict>, VerifyError> {
    let pending: Vec<usize> = (0..candidates.len())
        .filter(|&i| candidates[i].status == Status::R1Pass)
        .collect();
    let verdicts = pending
        .par_iter()
        .map(|&i| verifier.lookup(&candidates[i].surface))
        .collect::<Result<Vec<_>, _>>()?;
    for (&i, v) in pending.iter().zip(&verdicts) {
        let c = &mut candidates[i];
        let result = if v.found {
            c.transition(Status::R2Pass, None)
        } else {
            c.reject(2, RejectReason::NoDictEntry)
        };
        result.expect("r1_pass candidates move forward");
    }
    Ok(verdicts)
}

/// Third round: every `r2_pass` candidate needs a decision. Returns the
/// accepted surfaces (all `r3_pass` candidates afterwards).
pub fn round3_finalize(
    candidates: &mut [CandidateTerm],
    decisions: &[ReviewDecision],
) -> Result<BTreeSet<String>, VerifyError> {
    let decided: HashSet<&str> = decisions.iter().map(|d| d.surface.as_str()).collect();
    let missing: Vec<String> = candidates
        .iter()
        .filter(|c| c.status == Status::R2Pass && !decided.contains(c.surface.as_str()))
        .map(|c| c.surface.clone())
        .collect();
    if !missing.is_empty() {
        return Err(VerifyError::IncompleteReview { missing });
    }
    for w in apply_review(candidates, decisions, ReviewStage::Round3) {
        log::warn!("{w}");
    }
    Ok(candidates
        .iter()
        .filter(|c| c.status == Status::R3Pass)
        .map(|c| c.surface.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affix::Affix;
    use std::sync::Arc;

    #[derive(Clone, Default)]
    struct Fake {
        known: Arc<HashSet<String>>,
        calls: Arc<Mutex<Vec<String>>>,
        down: bool,
    }

    impl Fake {
        fn new(words: &[&str]) -> Self {
            Fake {
                known: Arc::new(words.iter().map(|w| w.to_string()).collect()),
                ..Fake::default()
            }
        }
    }

    impl DictionaryClient for Fake {
        fn lookup(&self, form: &str) -> Result<bool, ClientError> {
            self.calls.lock().unwrap().push(form.to_string());
            if self.down {
                return Err(ClientError::Transient("connection refused".into()));
            }
            Ok(self.known.contains(form))
        }
    }

    #[test]
    fn dash_retry_finds_spaced_form() {
        let fake = Fake::new(&["man bun"]);
        let v = Verifier::new(DictCache::in_memory()).with_remote(fake.clone());
        let verdict = v.lookup("man-bun").unwrap();
        assert!(verdict.found);
        assert_eq!(verdict.matched_form, "man bun");
        assert_eq!(verdict.source, VerdictSource::Remote);
        assert_eq!(*fake.calls.lock().unwrap(), ["man-bun", "man bun"]);
    }

    #[test]
    fn no_retry_without_dash() {
        let fake = Fake::new(&[]);
        let v = Verifier::new(DictCache::in_memory()).with_remote(fake.clone());
        let verdict = v.lookup("sopkesman").unwrap();
        assert!(!verdict.found);
        assert_eq!(*fake.calls.lock().unwrap(), ["sopkesman"]);
    }

    #[test]
    fn cache_hits_make_no_calls() {
        let mut cache = DictCache::in_memory();
        cache.record("spokesman", true, "spokesman").unwrap();
        let fake = Fake::new(&[]);
        let v = Verifier::new(cache).with_remote(fake.clone());
        let verdict = v.lookup("spokesman").unwrap();
        assert_eq!(
            (verdict.found, verdict.source),
            (true, VerdictSource::Cache)
        );
        assert_eq!(v.remote_calls(), 0);
        assert!(fake.calls.lock().unwrap().is_empty());
    }

    #[test]
    fn outage_falls_back_or_errors() {
        let fake = Fake {
            down: true,
            ..Fake::default()
        };
        let offline: HashSet<String> = ["fireman".to_string()].into();
        let v = Verifier::new(DictCache::in_memory())
            .with_remote(fake)
            .with_offline(offline);
        assert_eq!(
            v.lookup("fireman").unwrap().source,
            VerdictSource::OfflineWordlist
        );
        assert!(matches!(
            v.lookup("madeupman"),
            Err(VerifyError::LookupUnavailable { .. })
        ));
    }

    #[test]
    fn offline_only_is_authoritative() {
        let offline: HashSet<String> = ["man bun".to_string()].into();
        let v = Verifier::new(DictCache::in_memory()).with_offline(offline);
        let verdict = v.lookup("man-bun").unwrap();
        assert_eq!(
            (verdict.found, verdict.matched_form.as_str()),
            (true, "man bun")
        );
        assert!(!v.lookup("sopkesman").unwrap().found);
        assert!(matches!(
            Verifier::new(DictCache::in_memory()).lookup("x"),
            Err(VerifyError::NoDictionary)
        ));
    }

    fn r1(surface: &str) -> CandidateTerm {
        let mut c = CandidateTerm::mined(surface, Affix::SuffixMan, 1);
        c.transition(Status::R1Pass, None).unwrap();
        c
    }

    #[test]
    fn round2_statuses() {
        let mut cs = vec![
            r1("spokesman"),
            r1("sopkesman"),
            r1("man-bun"),
            CandidateTerm::mined("german", Affix::SuffixMan, 1),
        ];
        cs[2].affix = Affix::PrefixMan;
        let v =
            Verifier::new(DictCache::in_memory()).with_remote(Fake::new(&["spokesman", "man bun"]));
        let verdicts = round2_verify(&mut cs, &v).unwrap();
        assert_eq!(verdicts.len(), 3);
        let got: Vec<_> = cs.iter().map(|c| c.status).collect();
        assert_eq!(
            got,
            [
                Status::R2Pass,
                Status::R2Reject,
                Status::R2Pass,
                Status::Mined
            ]
        );
        assert_eq!(cs[1].reject_reason, Some(RejectReason::NoDictEntry));
        assert!(round2_verify(&mut [], &v).unwrap().is_empty());
    }

    #[test]
    fn round3_needs_complete_review() {
        let mut cs: Vec<CandidateTerm> = ["boycott", "cowboy"]
            .iter()
            .map(|s| {
                let mut c = CandidateTerm::mined(s, Affix::PrefixBoy, 1);
                c.transition(Status::R2Pass, None).unwrap();
                c
            })
            .collect();
        let partial = [ReviewDecision::accept("cowboy", "r")];
        match round3_finalize(&mut cs, &partial) {
            Err(VerifyError::IncompleteReview { missing }) => assert_eq!(missing, ["boycott"]),
            other => panic!("{other:?}"),
        }
        let full = [
            ReviewDecision::reject("boycott", RejectReason::NotGender, "r"),
            ReviewDecision::accept("cowboy", "r"),
        ];
        let accepted = round3_finalize(&mut cs, &full).unwrap();
        assert_eq!(accepted.into_iter().collect::<Vec<_>>(), ["cowboy"]);
    }
}
