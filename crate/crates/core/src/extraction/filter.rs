use std::collections::HashSet;

use super::candidate::{CandidateTerm, RejectReason, Status};
use super::mine::stem_of;

/// Concatenation junk: a digit anywhere or a letter repeated three times
/// in a row.
pub fn looks_like_junk(surface: &str) -> bool {
    let bytes = surface.as_bytes();
    surface.bytes().any(|b| b.is_ascii_digit())
        || bytes
            .windows(3)
            .any(|w| w[0] == w[1] && w[1] == w[2] && w[0].is_ascii_alphabetic())
}

/// Automatic part of the first verification round.
///
/// Only `mined` candidates are touched. In order, a candidate is rejected
/// when its stem is shorter than two letters (`other`), it is on
/// `name_list` (`name`), it is on `known_words`, a list of words known not
/// to carry gender (`not_gender`), or it looks like concatenation junk
/// (`spelling`). Everything else becomes `r1_pass` and awaits human review.
pub fn round1_filter(
    candidates: &mut [CandidateTerm],
    known_words: &HashSet<String>,
    name_list: &HashSet<String>,
) {
    for c in candidates.iter_mut().filter(|c| c.status == Status::Mined) {
        let reason = if stem_of(&c.surface, c.affix).chars().count() < 2 {
            Some(RejectReason::Other)
        } else if name_list.contains(&c.surface) {
            Some(RejectReason::Name)
        } else if known_words.contains(&c.surface) {
            Some(RejectReason::NotGender)
        } else if looks_like_junk(&c.surface) {
            Some(RejectReason::Spelling)
        } else {
            None
        };
        let result = match reason {
            Some(r) => c.reject(1, r),
            None => c.transition(Status::R1Pass, None),
        };
        result.expect("mined candidates can always advance");
    }
}
