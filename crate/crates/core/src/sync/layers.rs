use std::collections::BTreeSet;

use super::segment::{skeleton, Boundary, Segment, SegmentedWord, MAQEF};
use crate::error::Error;
use crate::model::TokenId;

/// Segments that may stand before a stem as a prefix, compared on their
/// unpointed letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixInventory(BTreeSet<String>);

impl PrefixInventory {
    pub fn new<I, S>(prefixes: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        PrefixInventory(prefixes.into_iter().map(|p| skeleton(p.as_ref())).collect())
    }

    /// One prefix per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        PrefixInventory::new(text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')))
    }

    pub fn contains(&self, segment: &str) -> bool {
        self.0.contains(&skeleton(segment))
    }
}

impl Default for PrefixInventory {
    fn default() -> Self {
        PrefixInventory::new(["ו", "ה", "ב", "כ", "ל", "מ", "ש"])
    }
}

/// Layer 1: every maqef ends a token.
pub fn insert_maqef_space(word: &SegmentedWord) -> SegmentedWord {
    let last = word.segments().len() - 1;
    word.map_boundaries(|i, segs| {
        let seg = &segs[i];
        if i < last && seg.text.ends_with(MAQEF) {
            Boundary::Space
        } else {
            seg.boundary
        }
    })
}

/// Whether the `/` after segment `i` is prefixal: every segment from the
/// start of its token through `i` is a known prefix.
fn split_is_prefixal(segs: &[Segment], i: usize, prefixes: &PrefixInventory) -> bool {
    let start = segs[..i]
        .iter()
        .rposition(|s| matches!(s.boundary, Boundary::Space | Boundary::Maqef))
        .map_or(0, |p| p + 1);
    segs[start..=i].iter().all(|s| prefixes.contains(&s.text))
}

/// Layer 2: reclassifies each `/` as a prefix or a suffix boundary.
pub fn classify_split(word: &SegmentedWord, prefixes: &PrefixInventory) -> SegmentedWord {
    let original = word.segments();
    word.map_boundaries(|i, _| match original[i].boundary {
        Boundary::Split if split_is_prefixal(original, i, prefixes) => Boundary::Prefix,
        Boundary::Split => Boundary::Suffix,
        other => other,
    })
}

/// Layer 3: suffixal `/` boundaries become internal `=` annotations, so
/// suffixes never count as subtokens. Prefixal `/` is left as it is.
pub fn merge_suffixes(word: &SegmentedWord, prefixes: &PrefixInventory) -> SegmentedWord {
    let original = word.segments();
    word.map_boundaries(|i, _| match original[i].boundary {
        Boundary::Split if !split_is_prefixal(original, i, prefixes) => Boundary::Suffix,
        other => other,
    })
}

/// The three layers in order.
pub fn normalize(word: &SegmentedWord, prefixes: &PrefixInventory) -> SegmentedWord {
    merge_suffixes(&classify_split(&insert_maqef_space(word), prefixes), prefixes)
}

/// Token ids of one token: a bare id for a single subtoken, letters `a`,
/// `b`, ... otherwise. Suffix boundaries do not start a subtoken.
pub fn letter_subtokens(word: &SegmentedWord, word_index: u32) -> Result<Vec<(TokenId, String)>, Error> {
    let segments = word.segments();
    let mut texts: Vec<String> = vec![String::new()];
    for (i, seg) in segments.iter().enumerate() {
        texts.last_mut().expect("non-empty").push_str(&seg.text);
        if i + 1 == segments.len() {
            break;
        }
        match seg.boundary {
            Boundary::Suffix => {}
            Boundary::Space | Boundary::Maqef => {
                return Err(Error::MalformedSegmentation {
                    text: word.to_string(),
                    reason: "spans more than one token".into(),
                })
            }
            _ => texts.push(String::new()),
        }
    }
    if texts.len() == 1 {
        return Ok(vec![(TokenId::word(word_index), texts.pop().expect("one"))]);
    }
    if texts.len() > 26 {
        return Err(Error::TooManySubtokens(word_index));
    }
    Ok(texts.into_iter().zip('a'..='z').map(|(text, c)| (TokenId::lettered(word_index, c), text)).collect())
}

/// Splits a word at token boundaries and letters each token, numbering
/// tokens from `first_index`.
pub fn number_tokens(word: &SegmentedWord, first_index: u32) -> Result<Vec<(TokenId, String)>, Error> {
    let mut out = Vec::new();
    let mut current: Vec<Segment> = Vec::new();
    let mut index = first_index;
    for seg in word.segments() {
        let ends_token = matches!(seg.boundary, Boundary::Space | Boundary::Maqef | Boundary::None);
        current.push(Segment {
            text: seg.text.clone(),
            boundary: if ends_token { Boundary::None } else { seg.boundary },
        });
        if ends_token {
            let token = SegmentedWord::new(std::mem::take(&mut current))?;
            out.extend(letter_subtokens(&token, index)?);
            index += 1;
        }
    }
    Ok(out)
}
