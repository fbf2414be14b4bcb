use std::fmt;

use serde::Serialize;

use crate::model::{Corpus, VerseAlignment, VerseRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EditionDiffKind {
    MissingInA,
    MissingInB,
    SurfaceDiffers,
}

impl fmt::Display for EditionDiffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EditionDiffKind::MissingInA => "missing-in-a",
            EditionDiffKind::MissingInB => "missing-in-b",
            EditionDiffKind::SurfaceDiffers => "surface-differs",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EditionDiffEntry {
    pub verse: VerseRef,
    pub kind: EditionDiffKind,
    pub detail: String,
}

fn source_words(v: &VerseAlignment) -> Vec<&str> {
    v.source.iter().map(|t| t.surface.as_str()).collect()
}

fn target_words(v: &VerseAlignment) -> Vec<&str> {
    v.target.iter().filter(|t| !t.is_extractor()).map(|t| t.surface.as_str()).collect()
}

fn first_difference(a: &[&str], b: &[&str]) -> Option<String> {
    let at = (0..a.len().max(b.len())).find(|&i| a.get(i) != b.get(i))?;
    let show = |w: Option<&&str>| w.map_or("(none)".to_string(), |w| format!("`{w}`"));
    Some(format!("word {}: {} versus {}", at + 1, show(a.get(at)), show(b.get(at))))
}

/// Verses found in only one edition and verses whose word forms differ,
/// in canonical order. Trailing-space flags are not compared.
pub fn edition_diff(a: &Corpus, b: &Corpus) -> Vec<EditionDiffEntry> {
    let order = a.book_order();
    let mut refs = a.canonical_refs();
    refs.extend(b.canonical_refs().into_iter().filter(|r| a.get(r).is_none()));
    refs.sort_by(|x, y| order.cmp_refs(x, y));

    let mut out = Vec::new();
    for verse in refs {
        let entry = match (a.get(&verse), b.get(&verse)) {
            (Some(_), None) => Some((EditionDiffKind::MissingInB, "verse only in A".to_string())),
            (None, Some(_)) => Some((EditionDiffKind::MissingInA, "verse only in B".to_string())),
            (Some(va), Some(vb)) => first_difference(&source_words(va), &source_words(vb))
                .map(|d| format!("source {d}"))
                .or_else(|| first_difference(&target_words(va), &target_words(vb)).map(|d| format!("target {d}")))
                .map(|d| (EditionDiffKind::SurfaceDiffers, d)),
            (None, None) => None,
        };
        if let Some((kind, detail)) = entry {
            out.push(EditionDiffEntry { verse, kind, detail });
        }
    }
    out
}

pub fn render_diff_tsv(entries: &[EditionDiffEntry]) -> String {
    let mut out = String::from("verse\tkind\tdetail\n");
    for e in entries {
        out.push_str(&format!("{}\t{}\t{}\n", e.verse, e.kind, e.detail));
    }
    out
}
