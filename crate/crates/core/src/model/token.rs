use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{LinkField, SourceLemma, TargetLemma, TokenId};
use crate::error::Error;

/// Leipzig-style gloss tags joined with `.`, e.g. `Qal.3MS.PERF`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphTags(Vec<String>);

impl MorphTags {
    pub fn new<I, S>(tags: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tags: Vec<String> = tags.into_iter().map(Into::into).collect();
        let valid = !tags.is_empty()
            && tags
                .iter()
                .all(|t| !t.is_empty() && !t.contains('.') && !t.chars().any(char::is_whitespace));
        if !valid {
            return Err(Error::MalformedMorph(tags.join(".")));
        }
        Ok(MorphTags(tags))
    }

    pub fn atoms(&self) -> &[String] {
        &self.0
    }
}

impl fmt::Display for MorphTags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("."))
    }
}

impl FromStr for MorphTags {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MorphTags::new(s.split('.')).map_err(|_| Error::MalformedMorph(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SourceToken {
    pub id: TokenId,
    pub lemma: SourceLemma,
    pub morph: MorphTags,
    pub surface: String,
    /// SBL romanization; empty when unavailable.
    pub translit: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TargetToken {
    pub links: LinkField,
    pub lemma: TargetLemma,
    pub morph: MorphTags,
    /// Empty only on extractor rows.
    pub surface: String,
    pub trailing_space: bool,
}

impl TargetToken {
    pub fn is_extractor(&self) -> bool {
        self.lemma.is_extractor()
    }
}
