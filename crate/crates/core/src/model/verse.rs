use std::collections::BTreeSet;
use std::ops::Range;

use serde::Serialize;

use super::{LinkKind, LinkRef, SourceToken, TargetToken, TokenId, VerseRef};
use crate::error::Error;

/// One verse of bitext: source subtokens followed by target rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerseAlignment {
    #[serde(rename = "ref")]
    pub verse_ref: VerseRef,
    pub source: Vec<SourceToken>,
    pub target: Vec<TargetToken>,
}

/// A link resolved against the verse's own source tokens.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedLink<'a> {
    pub position: usize,
    pub source: &'a SourceToken,
    pub kind: LinkKind,
}

/// Target-row and source-token tallies of one verse.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub core_linked: usize,
    pub aux_only: usize,
    pub no_source: usize,
    pub extractor_rows: usize,
    pub unlinked_source: usize,
}

impl std::ops::AddAssign for Coverage {
    fn add_assign(&mut self, rhs: Self) {
        self.core_linked += rhs.core_linked;
        self.aux_only += rhs.aux_only;
        self.no_source += rhs.no_source;
        self.extractor_rows += rhs.extractor_rows;
        self.unlinked_source += rhs.unlinked_source;
    }
}

impl VerseAlignment {
    pub fn new(verse_ref: VerseRef) -> Self {
        VerseAlignment { verse_ref, source: Vec::new(), target: Vec::new() }
    }

    pub fn source_token(&self, id: &TokenId) -> Option<&SourceToken> {
        self.source.iter().find(|t| t.id == *id)
    }

    /// Every link of every target row, in row order.
    pub fn links(&self) -> impl Iterator<Item = (usize, &LinkRef)> {
        self.target
            .iter()
            .enumerate()
            .flat_map(|(pos, row)| row.links.links().iter().map(move |l| (pos, l)))
    }

    /// Violations of source-id well-formedness: strictly increasing ids,
    /// lettered subtokens contiguous from `a`, no bare id sharing a word with
    /// lettered ones.
    pub fn source_id_problems(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for pair in self.source.windows(2) {
            if pair[0].id >= pair[1].id {
                problems.push(format!("source id {} follows {}", pair[1].id, pair[0].id));
            }
        }
        let mut words: Vec<(u32, Vec<Option<char>>)> = Vec::new();
        for token in &self.source {
            match words.iter_mut().find(|(w, _)| *w == token.id.word) {
                Some((_, subs)) => subs.push(token.id.sub),
                None => words.push((token.id.word, vec![token.id.sub])),
            }
        }
        for (word, subs) in words {
            if subs.len() > 1 && subs.contains(&None) {
                problems.push(format!("word {word} has both a bare and a lettered id"));
                continue;
            }
            let letters: Vec<char> = subs.into_iter().flatten().collect();
            let expected = ('a'..='z').take(letters.len());
            if !letters.is_empty() && !letters.iter().copied().eq(expected) {
                let found: String = letters.iter().collect();
                problems.push(format!("subtokens of word {word} are `{found}`, expected a contiguous run from `a`"));
            }
        }
        problems
    }

    /// Resolves verse-local links; cross-verse links are resolved at corpus
    /// level and are skipped here.
    pub fn resolve_links(&self) -> Result<Vec<ResolvedLink<'_>>, Error> {
        self.links()
            .filter(|(_, link)| !link.is_cross_verse())
            .map(|(position, link)| {
                let source = self.source_token(&link.target).ok_or_else(|| Error::DanglingLink {
                    verse: self.verse_ref.clone(),
                    position,
                    id: link.target,
                })?;
                Ok(ResolvedLink { position, source, kind: link.kind })
            })
            .collect()
    }

    pub fn coverage_stats(&self) -> Coverage {
        let mut cov = Coverage::default();
        for row in &self.target {
            if row.is_extractor() {
                cov.extractor_rows += 1;
            } else if row.links.is_no_source() {
                cov.no_source += 1;
            } else if row.links.links().iter().any(|l| l.kind == LinkKind::Core) {
                cov.core_linked += 1;
            } else {
                cov.aux_only += 1;
            }
        }
        let referenced: BTreeSet<TokenId> = self
            .links()
            .filter(|(_, l)| !l.is_cross_verse())
            .map(|(_, l)| l.target)
            .collect();
        cov.unlinked_source = self.source.iter().filter(|t| !referenced.contains(&t.id)).count();
        cov
    }

    /// Running target text rebuilt from word forms and trailing-space flags.
    pub fn detokenize_target(&self) -> String {
        self.target_text().0
    }

    /// The detokenized text together with the character range each target
    /// row occupies in it (`None` for extractor rows).
    pub fn target_text(&self) -> (String, Vec<Option<Range<usize>>>) {
        let mut text = String::new();
        let mut chars = 0;
        let mut spans = Vec::with_capacity(self.target.len());
        for row in &self.target {
            if row.is_extractor() {
                spans.push(None);
                continue;
            }
            let len = row.surface.chars().count();
            spans.push(Some(chars..chars + len));
            text.push_str(&row.surface);
            chars += len;
            if row.trailing_space {
                text.push(' ');
                chars += 1;
            }
        }
        (text, spans)
    }
}
