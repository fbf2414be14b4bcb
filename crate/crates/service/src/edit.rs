use helfi_core::model::{LinkField, LinkKind, LinkRef, TargetLemma, TokenId, VerseAlignment};
use serde::{Deserialize, Serialize};

use crate::error::ServiceError;

/// A single change to one verse's target rows. Positions index
/// `VerseAlignment::target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum Edit {
    AddLink {
        position: usize,
        id: TokenId,
        kind: LinkKind,
        /// Neighbouring verse, for cross-verse links.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        verse_offset: Option<i32>,
        /// Slot in the row's link list; when absent the link goes before the
        /// first link with a greater address.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        index: Option<usize>,
    },
    RemoveLink {
        position: usize,
        id: TokenId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        verse_offset: Option<i32>,
    },
    SetLinkKind {
        position: usize,
        id: TokenId,
        kind: LinkKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        verse_offset: Option<i32>,
    },
    SetTargetLemma {
        position: usize,
        lemma: TargetLemma,
    },
    SetNoSource {
        position: usize,
    },
}

impl Edit {
    pub fn position(&self) -> usize {
        match *self {
            Edit::AddLink { position, .. }
            | Edit::RemoveLink { position, .. }
            | Edit::SetLinkKind { position, .. }
            | Edit::SetTargetLemma { position, .. }
            | Edit::SetNoSource { position } => position,
        }
    }

    fn invalid(&self, reason: impl Into<String>) -> ServiceError {
        ServiceError::InvalidEdit(format!("{} at row {}: {}", self.name(), self.position(), reason.into()))
    }

    fn name(&self) -> &'static str {
        match self {
            Edit::AddLink { .. } => "AddLink",
            Edit::RemoveLink { .. } => "RemoveLink",
            Edit::SetLinkKind { .. } => "SetLinkKind",
            Edit::SetTargetLemma { .. } => "SetTargetLemma",
            Edit::SetNoSource { .. } => "SetNoSource",
        }
    }
}

/// Applies `edit` in place and returns the edits that undo it, to be
/// applied in order. On error the verse is untouched.
pub fn apply_edit(verse: &mut VerseAlignment, edit: &Edit) -> Result<Vec<Edit>, ServiceError> {
    let position = edit.position();
    let Some(row) = verse.target.get_mut(position) else {
        return Err(edit.invalid(format!("the verse has {} target rows", verse.target.len())));
    };
    let find = |links: &[LinkRef], id: TokenId, offset: Option<i32>| {
        links.iter().position(|l| l.address() == (offset, id))
    };

    match *edit {
        Edit::AddLink { id, kind, verse_offset, index, .. } => {
            let mut links = row.links.links().to_vec();
            if find(&links, id, verse_offset).is_some() {
                return Err(edit.invalid(format!("already linked to {id}")));
            }
            let at = index.unwrap_or_else(|| {
                links.iter().position(|l| l.address() > (verse_offset, id)).unwrap_or(links.len())
            });
            if at > links.len() {
                return Err(edit.invalid(format!("link index {at} out of range")));
            }
            links.insert(at, LinkRef { target: id, kind, verse_offset });
            row.links = LinkField::Links(links);
            Ok(vec![Edit::RemoveLink { position, id, verse_offset }])
        }
        Edit::RemoveLink { id, verse_offset, .. } => {
            let mut links = row.links.links().to_vec();
            let Some(at) = find(&links, id, verse_offset) else {
                return Err(edit.invalid(format!("no link to {id}")));
            };
            let removed = links.remove(at);
            row.links = if links.is_empty() { LinkField::NoSource } else { LinkField::Links(links) };
            Ok(vec![Edit::AddLink { position, id, kind: removed.kind, verse_offset, index: Some(at) }])
        }
        Edit::SetLinkKind { id, kind, verse_offset, .. } => {
            let mut links = row.links.links().to_vec();
            let Some(at) = find(&links, id, verse_offset) else {
                return Err(edit.invalid(format!("no link to {id}")));
            };
            let old = std::mem::replace(&mut links[at].kind, kind);
            row.links = LinkField::Links(links);
            Ok(vec![Edit::SetLinkKind { position, id, kind: old, verse_offset }])
        }
        Edit::SetTargetLemma { ref lemma, .. } => {
            let old = std::mem::replace(&mut row.lemma, lemma.clone());
            Ok(vec![Edit::SetTargetLemma { position, lemma: old }])
        }
        Edit::SetNoSource { .. } => {
            let old = std::mem::replace(&mut row.links, LinkField::NoSource);
            Ok(old
                .links()
                .iter()
                .enumerate()
                .map(|(i, l)| Edit::AddLink {
                    position,
                    id: l.target,
                    kind: l.kind,
                    verse_offset: l.verse_offset,
                    index: Some(i),
                })
                .collect())
        }
    }
}

/// Applies a batch all-or-nothing, returning the updated verse and the
/// inverse batch.
pub fn apply_batch(verse: &VerseAlignment, edits: &[Edit]) -> Result<(VerseAlignment, Vec<Edit>), ServiceError> {
    let mut next = verse.clone();
    let mut inverses: Vec<Vec<Edit>> = Vec::with_capacity(edits.len());
    for edit in edits {
        inverses.push(apply_edit(&mut next, edit)?);
    }
    Ok((next, inverses.into_iter().rev().flatten().collect()))
}
