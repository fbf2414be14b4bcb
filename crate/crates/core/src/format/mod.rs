//! Reader and writer for the tab-separated alignment format.
//!
//! Every verse is a block of rows sharing the verse column. Source rows
//! carry a token ID; target rows carry linked IDs and keep their order.
//!
//! ```text
//! ps001:001	6b		-/6098/5817	N.FEM.SG.CSTR	עֲשָׂת	ʿāšat
//! ps001:001		6b	neuvo	SG.INE	neuvossa _␣
//! ```

#![allow(clippy::tabs_in_doc_comments)]

mod profile;
mod read;
mod write;

pub use profile::{FormatProfile, COLUMNS, HEADER};
pub use read::{
    parse_corpus, parse_corpus_bytes, parse_corpus_str, parse_link_field, parse_source_lemma, parse_target_lemma,
    parse_token_id, parse_verse_block, split_lines, Line, ParseOptions,
};
pub use write::{canonicalize, serialize_corpus, serialize_verse, serialize_verse_into};
