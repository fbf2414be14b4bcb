//! Analytical concordance: target headwords with keyword-in-context lines,
//! grouped by the Strong code of their core-linked source.

mod index;
mod render;

pub use index::{
    build_index, headword_entries, periphery_entries, ConcordanceIndex, HeadwordEntry, LinkedSource, Occurrence,
    StrongGroup,
};
pub use render::{kwic_line, render_printable, render_tsv, KwicLayout};
