//! Morpheme-level alignments of source texts and their translation: the
//! data model, the column format, validation, tokenization harmonizing and
//! concordance building.

pub mod concord;
pub mod config;
pub mod diagnostic;
pub mod error;
pub mod format;
pub mod model;
pub mod stats;
pub mod sync;
pub mod validate;

pub use diagnostic::{Diagnostic, Severity};
pub use error::{Error, Result};
