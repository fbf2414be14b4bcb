use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TokenId;
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkKind {
    Core,
    Aux,
}

/// One link from a target row to a source token. `verse_offset` addresses a
/// token in a neighbouring verse (`+1:3`); such links only parse under a
/// lenient profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinkRef {
    pub target: TokenId,
    pub kind: LinkKind,
    pub verse_offset: Option<i32>,
}

impl LinkRef {
    pub const fn core(target: TokenId) -> Self {
        LinkRef { target, kind: LinkKind::Core, verse_offset: None }
    }

    pub const fn aux(target: TokenId) -> Self {
        LinkRef { target, kind: LinkKind::Aux, verse_offset: None }
    }

    pub fn is_cross_verse(&self) -> bool {
        self.verse_offset.is_some()
    }

    /// Identity of the linked token, ignoring the kind.
    pub fn address(&self) -> (Option<i32>, TokenId) {
        (self.verse_offset, self.target)
    }
}

impl fmt::Display for LinkRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let addr = match self.verse_offset {
            Some(off) => format!("{off:+}:{}", self.target),
            None => self.target.to_string(),
        };
        match self.kind {
            LinkKind::Core => f.write_str(&addr),
            LinkKind::Aux => write!(f, "({addr})"),
        }
    }
}

impl FromStr for LinkRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| Error::MalformedLinkField {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let (kind, addr) = match s.strip_prefix('(') {
            Some(inner) => (LinkKind::Aux, inner.strip_suffix(')').ok_or_else(|| bad("unbalanced parentheses"))?),
            None => (LinkKind::Core, s),
        };
        if addr.contains(['(', ')']) {
            return Err(bad("unbalanced parentheses"));
        }
        let (verse_offset, id) = match addr.split_once(':') {
            Some((off, id)) => {
                let valid = off.len() > 1 && (off.starts_with('+') || off.starts_with('-'));
                let off: i32 = off
                    .parse()
                    .ok()
                    .filter(|&n| valid && n != 0)
                    .ok_or_else(|| bad("bad verse offset"))?;
                (Some(off), id)
            }
            None => (None, addr),
        };
        let target: TokenId = id.parse().map_err(|_| bad("bad token id"))?;
        let link = LinkRef { target, kind, verse_offset };
        if link.to_string() != s {
            return Err(bad("non-canonical link"));
        }
        Ok(link)
    }
}

/// Linked-IDs column of a target row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LinkField {
    Links(Vec<LinkRef>),
    /// `-`: no source support.
    NoSource,
}

impl LinkField {
    pub fn links(&self) -> &[LinkRef] {
        match self {
            LinkField::Links(links) => links,
            LinkField::NoSource => &[],
        }
    }

    pub fn is_no_source(&self) -> bool {
        matches!(self, LinkField::NoSource)
    }

    pub fn has_cross_verse(&self) -> bool {
        self.links().iter().any(LinkRef::is_cross_verse)
    }
}

impl fmt::Display for LinkField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkField::NoSource => f.write_str("-"),
            LinkField::Links(links) => {
                for (i, link) in links.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{link}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for LinkField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| Error::MalformedLinkField {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let items: Vec<&str> = s.split_whitespace().collect();
        if items.is_empty() {
            return Err(bad("empty"));
        }
        if items.contains(&"-") {
            return if items.len() == 1 {
                Ok(LinkField::NoSource)
            } else {
                Err(bad("`-` mixed with token ids"))
            };
        }
        let mut links: Vec<LinkRef> = Vec::with_capacity(items.len());
        for item in items {
            let link: LinkRef = item.parse().map_err(|e| match e {
                Error::MalformedLinkField { reason, .. } => bad(&reason),
                other => other,
            })?;
            if links.iter().any(|l| l.address() == link.address()) {
                return Err(bad("duplicate token id"));
            }
            links.push(link);
        }
        Ok(LinkField::Links(links))
    }
}
