use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::layers::{normalize, PrefixInventory};
use super::segment::{Boundary, Segment, SegmentedWord};
use crate::error::Error;
use crate::model::VerseRef;

/// A word of a verse: the verse reference and the word index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Location {
    pub verse: VerseRef,
    pub word: u32,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.verse, self.word)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscrepancyKind {
    MaqefSpace,
    PrefixMarker,
    MissingPrefixSplit,
    SuffixSplit,
    SuffixMarker,
    InconsistentMorphology,
}

impl DiscrepancyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiscrepancyKind::MaqefSpace => "maqef-space",
            DiscrepancyKind::PrefixMarker => "prefix-marker",
            DiscrepancyKind::MissingPrefixSplit => "missing-prefix-split",
            DiscrepancyKind::SuffixSplit => "suffix-split",
            DiscrepancyKind::SuffixMarker => "suffix-marker",
            DiscrepancyKind::InconsistentMorphology => "inconsistent-morphology",
        }
    }
}

impl fmt::Display for DiscrepancyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub layer: u8,
    pub location: Location,
    pub kind: DiscrepancyKind,
    pub description: String,
}

impl Discrepancy {
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.layer, self.location.verse, self.location.word, self.kind, self.description
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Harmonized {
    pub unified: SegmentedWord,
    pub discrepancies: Vec<Discrepancy>,
}

fn rank(b: Boundary) -> u8 {
    match b {
        Boundary::None => 0,
        Boundary::Suffix => 1,
        Boundary::Split => 2,
        Boundary::Prefix => 3,
        Boundary::Maqef => 4,
        Boundary::Space => 5,
    }
}

fn describe(b: Boundary) -> &'static str {
    match b {
        Boundary::None => "no boundary",
        Boundary::Maqef => "maqef without space",
        Boundary::Prefix => "`+`",
        Boundary::Suffix => "`=`",
        Boundary::Split => "`/`",
        Boundary::Space => "space",
    }
}

/// Classifies one boundary position given what each side has there and
/// what the unified word has.
fn classify(a: Boundary, b: Boundary, unified: Boundary) -> Option<(u8, DiscrepancyKind)> {
    let token_level = |x: Boundary| matches!(x, Boundary::Space | Boundary::Maqef);
    if token_level(a) || token_level(b) {
        return (a != b).then_some((1, DiscrepancyKind::MaqefSpace));
    }
    // A prefixal `/` and `+` say the same thing; a suffixal `/` does not
    // say what `=` says, since it would make the suffix a subtoken.
    let resolved = |x: Boundary| match x {
        Boundary::Split if unified == Boundary::Prefix => Boundary::Prefix,
        other => other,
    };
    let (ra, rb) = (resolved(a), resolved(b));
    if ra == rb {
        return None;
    }
    let missing = ra == Boundary::None || rb == Boundary::None;
    let split = a == Boundary::Split || b == Boundary::Split;
    Some(match unified {
        Boundary::Prefix if missing => (2, DiscrepancyKind::MissingPrefixSplit),
        Boundary::Prefix => (2, DiscrepancyKind::PrefixMarker),
        _ if split => (3, DiscrepancyKind::SuffixSplit),
        _ => (3, DiscrepancyKind::SuffixMarker),
    })
}

/// Merges two segmentations of the same letters. The unified word takes
/// every boundary found in either input, then runs the three layers; its
/// text comes from the input with more boundaries.
pub fn harmonize(
    a: &SegmentedWord,
    b: &SegmentedWord,
    location: &Location,
    prefixes: &PrefixInventory,
) -> Result<Harmonized, Error> {
    if a.skeleton() != b.skeleton() {
        return Err(Error::TextMismatch { left: a.text(), right: b.text() });
    }
    let side = |w: &SegmentedWord| -> BTreeMap<usize, Boundary> { w.boundaries_by_letter().into_iter().collect() };
    let (ma, mb) = (side(a), side(b));
    let mut combined: BTreeMap<usize, Boundary> = BTreeMap::new();
    for (&at, &boundary) in ma.iter().chain(mb.iter()) {
        let slot = combined.entry(at).or_insert(Boundary::None);
        if rank(boundary) > rank(*slot) {
            *slot = boundary;
        }
    }

    let richer = match ma.len().cmp(&mb.len()) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => std::cmp::min_by_key(a, b, |w| w.text()),
    };
    let last = |w: &SegmentedWord| w.segments().last().map_or(Boundary::None, |s| s.boundary);
    let final_boundary = if last(a) == Boundary::Space || last(b) == Boundary::Space {
        Boundary::Space
    } else {
        Boundary::None
    };
    let positions: Vec<(usize, Boundary)> = combined.iter().map(|(&at, &b)| (at, b)).collect();
    let union = SegmentedWord::from_letter_boundaries(&richer.text(), &positions, final_boundary)?;
    let unified = normalize(&union, prefixes);

    let unified_at: BTreeMap<usize, Boundary> = unified.boundaries_by_letter().into_iter().collect();
    let mut discrepancies = Vec::new();
    for &at in combined.keys() {
        let ba = ma.get(&at).copied().unwrap_or(Boundary::None);
        let bb = mb.get(&at).copied().unwrap_or(Boundary::None);
        let u = unified_at.get(&at).copied().unwrap_or(Boundary::None);
        if let Some((layer, kind)) = classify(ba, bb, u) {
            discrepancies.push(Discrepancy {
                layer,
                location: location.clone(),
                kind,
                description: format!(
                    "after letter {at}: {} versus {}, unified as {}",
                    describe(ba),
                    describe(bb),
                    describe(u)
                ),
            });
        }
    }
    Ok(Harmonized { unified, discrepancies })
}

/// Reports a word whose lemma count does not match its subtokens.
pub fn morphology_discrepancy(word: &SegmentedWord, lemmas: usize, location: &Location) -> Option<Discrepancy> {
    let subtokens = word.subtoken_count();
    if lemmas == subtokens {
        return None;
    }
    let has_suffix = word.segments().iter().any(|s: &Segment| s.boundary == Boundary::Suffix);
    Some(Discrepancy {
        layer: if has_suffix { 3 } else { 2 },
        location: location.clone(),
        kind: DiscrepancyKind::InconsistentMorphology,
        description: format!("{lemmas} lemmas for {subtokens} subtokens in `{word}`"),
    })
}
