//! In-memory model of an aligned bitext.

mod corpus;
mod groups;
mod lemma;
mod link;
mod refs;
mod token;
mod verse;

pub use corpus::{Corpus, Inventories, MorphInventory};
pub use groups::AlignmentGroup;
pub use lemma::{ExtractorInventory, SourceLemma, StrongCode, TargetLemma};
pub use link::{LinkField, LinkKind, LinkRef};
pub use refs::{BookOrder, TokenId, VerseRef};
pub use token::{MorphTags, SourceToken, TargetToken};
pub use verse::{Coverage, ResolvedLink, VerseAlignment};

/// Serialize through the canonical text rendering.
macro_rules! serde_as_string {
    ($($ty:ty),*) => {$(
        impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let text = <std::borrow::Cow<'de, str>>::deserialize(d)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    )*};
}

serde_as_string!(VerseRef, TokenId, StrongCode, SourceLemma, TargetLemma, LinkRef, LinkField, MorphTags);
