use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::model::{Corpus, LinkKind, StrongCode, TargetLemma, TokenId, VerseAlignment, VerseRef};

/// A source token a headword occurrence is linked to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkedSource {
    pub id: TokenId,
    pub strong: Option<StrongCode>,
    pub concord: Option<u32>,
    pub lemma: Option<String>,
    pub kind: LinkKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub verse: VerseRef,
    pub position: usize,
    pub headword: String,
    pub sources: Vec<LinkedSource>,
    /// Detokenized target text of the verse.
    pub context: String,
    /// Character range of the keyword in `context`.
    pub span: Range<usize>,
}

impl Occurrence {
    /// Strong code of the first core-linked source, the grouping key.
    pub fn primary_strong(&self) -> Option<StrongCode> {
        self.sources.iter().find(|s| s.kind == LinkKind::Core).and_then(|s| s.strong)
    }

    pub fn keyword(&self) -> String {
        self.context.chars().skip(self.span.start).take(self.span.len()).collect()
    }
}

/// Headwords to occurrences, in codepoint order of the headword.
/// Multiword periphery lemmas are kept apart in `periphery`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConcordanceIndex {
    pub headwords: BTreeMap<String, Vec<Occurrence>>,
    pub periphery: BTreeMap<String, Vec<Occurrence>>,
}

impl ConcordanceIndex {
    pub fn occurrence_count(&self) -> usize {
        self.headwords.values().map(Vec::len).sum()
    }
}

enum Slot {
    Main,
    Periphery,
}

fn verse_occurrences(verse: &VerseAlignment) -> Result<Vec<(Slot, Occurrence)>, Error> {
    let resolved = verse.resolve_links()?;
    let (context, spans) = verse.target_text();
    let mut out = Vec::new();
    for (position, row) in verse.target.iter().enumerate() {
        let (slot, headword) = match &row.lemma {
            TargetLemma::Plain(lemma) => (Slot::Main, lemma),
            TargetLemma::Periphery(lemma) if lemma.contains('_') => (Slot::Periphery, lemma),
            _ => continue,
        };
        let Some(span) = spans[position].clone() else { continue };
        let sources = resolved
            .iter()
            .filter(|l| l.position == position)
            .map(|l| LinkedSource {
                id: l.source.id,
                strong: l.source.lemma.strong,
                concord: l.source.lemma.concord,
                lemma: l.source.lemma.lemma.clone(),
                kind: l.kind,
            })
            .collect();
        let occ = Occurrence {
            verse: verse.verse_ref.clone(),
            position,
            headword: headword.clone(),
            sources,
            context: context.clone(),
            span,
        };
        out.push((slot, occ));
    }
    Ok(out)
}

/// One occurrence per plain-lemma target row, verses in canonical order.
pub fn build_index(corpus: &Corpus) -> Result<ConcordanceIndex, Error> {
    let verses = corpus.canonical_verses();
    let per_verse: Vec<Vec<(Slot, Occurrence)>> =
        verses.par_iter().map(|v| verse_occurrences(v)).collect::<Result<_, _>>()?;
    let mut index = ConcordanceIndex::default();
    for (slot, occ) in per_verse.into_iter().flatten() {
        let map = match slot {
            Slot::Main => &mut index.headwords,
            Slot::Periphery => &mut index.periphery,
        };
        map.entry(occ.headword.clone()).or_default().push(occ);
    }
    Ok(index)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongGroup {
    pub strong: Option<StrongCode>,
    pub count: usize,
    pub occurrences: Vec<Occurrence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeadwordEntry {
    pub headword: String,
    pub total: usize,
    pub groups: Vec<StrongGroup>,
}

fn entry(headword: &str, occurrences: &[Occurrence]) -> HeadwordEntry {
    let mut by_strong: BTreeMap<Option<StrongCode>, Vec<Occurrence>> = BTreeMap::new();
    for occ in occurrences {
        by_strong.entry(occ.primary_strong()).or_default().push(occ.clone());
    }
    let mut groups: Vec<StrongGroup> = by_strong
        .into_iter()
        .map(|(strong, occurrences)| StrongGroup { strong, count: occurrences.len(), occurrences })
        .collect();
    // most frequent first; rows without a core source last among equals
    groups.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then_with(|| a.strong.is_none().cmp(&b.strong.is_none()))
            .then_with(|| a.strong.cmp(&b.strong))
    });
    HeadwordEntry { headword: headword.to_string(), total: occurrences.len(), groups }
}

impl ConcordanceIndex {
    /// Entry for one headword, looked up in the main index and then the
    /// periphery appendix.
    pub fn entry(&self, headword: &str) -> Option<HeadwordEntry> {
        self.headwords.get(headword).or_else(|| self.periphery.get(headword)).map(|occ| entry(headword, occ))
    }
}

pub fn headword_entries(index: &ConcordanceIndex) -> Vec<HeadwordEntry> {
    index.headwords.iter().map(|(h, occ)| entry(h, occ)).collect()
}

pub fn periphery_entries(index: &ConcordanceIndex) -> Vec<HeadwordEntry> {
    index.periphery.iter().map(|(h, occ)| entry(h, occ)).collect()
}
