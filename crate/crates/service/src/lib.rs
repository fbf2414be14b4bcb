//! Editing back end for aligned corpora: verse navigation, batched link
//! edits with per-session undo, validation on save, and an HTTP+JSON API.
//!
//! All state lives in a [`Store`]. Every accepted batch bumps the corpus
//! revision by one; clients send the revision they edited against and get
//! a conflict when it is stale.

mod api;
mod edit;
mod error;
mod save;
mod store;

pub use api::{router, serve, DEFAULT_SESSION};
pub use edit::{apply_batch, apply_edit, Edit};
pub use error::ServiceError;
pub use save::{atomic_write, write_all, Writer};
pub use store::{Applied, Hit, Meta, Neighbors, Saved, SearchKind, Session, Side, Snapshot, Store, StoreOptions};
