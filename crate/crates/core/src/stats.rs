//! Per-book token, link and coverage tallies.

use serde::Serialize;

use crate::model::{Corpus, Coverage, LinkKind};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BookStats {
    pub book: String,
    pub verses: usize,
    pub source_tokens: usize,
    pub target_rows: usize,
    pub core_links: usize,
    pub aux_links: usize,
    pub coverage: Coverage,
}

/// One row per book in canonical order; duplicate verse blocks count once.
pub fn book_stats(corpus: &Corpus) -> Vec<BookStats> {
    let mut out: Vec<BookStats> = Vec::new();
    for verse in corpus.canonical_verses() {
        let book = &verse.verse_ref.book;
        if out.last().map(|s| &s.book) != Some(book) {
            out.push(BookStats { book: book.clone(), ..Default::default() });
        }
        let s = out.last_mut().expect("pushed above");
        s.verses += 1;
        s.source_tokens += verse.source.len();
        s.target_rows += verse.target.len();
        for (_, link) in verse.links() {
            match link.kind {
                LinkKind::Core => s.core_links += 1,
                LinkKind::Aux => s.aux_links += 1,
            }
        }
        s.coverage += verse.coverage_stats();
    }
    out
}

pub const STATS_HEADER: &str =
    "book\tverses\tsource_tokens\ttarget_rows\tcore_links\taux_links\tno_source\textractor_rows\tunlinked_source";

pub fn render_stats_tsv(stats: &[BookStats]) -> String {
    let mut out = format!("{STATS_HEADER}\n");
    for s in stats {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            s.book,
            s.verses,
            s.source_tokens,
            s.target_rows,
            s.core_links,
            s.aux_links,
            s.coverage.no_source,
            s.coverage.extractor_rows,
            s.coverage.unlinked_source
        ));
    }
    out
}
