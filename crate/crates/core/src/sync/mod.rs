//! Harmonizing two segmentations of the same Hebrew text, and comparing
//! two editions verse by verse.
//!
//! Segmented words use the marker notation: `+` prefix boundary, `=`
//! suffix boundary, `/` unclassified split, white space a token boundary,
//! and a maqef followed directly by a letter a maqef boundary.

mod edition;
mod harmonize;
mod interchange;
mod layers;
mod segment;

pub use edition::{edition_diff, render_diff_tsv, EditionDiffEntry, EditionDiffKind};
pub use harmonize::{harmonize, morphology_discrepancy, Discrepancy, DiscrepancyKind, Harmonized, Location};
pub use interchange::{
    parse_interchange, render_interchange, render_report_tsv, sync_words, InterchangeWord, SyncReport, REPORT_HEADER,
};
pub use layers::{
    classify_split, insert_maqef_space, letter_subtokens, merge_suffixes, normalize, number_tokens, PrefixInventory,
};
pub use segment::{is_mark, skeleton, Boundary, Segment, SegmentedWord, MAQEF};
