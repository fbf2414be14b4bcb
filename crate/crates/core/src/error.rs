use thiserror::Error;

use crate::model::{TokenId, VerseRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed verse reference `{0}`")]
    MalformedVerseRef(String),
    #[error("malformed token id `{0}`")]
    MalformedTokenId(String),
    #[error("malformed strong code `{0}`")]
    MalformedStrong(String),
    #[error("malformed lemma triple `{text}`: {reason}")]
    MalformedLemmaTriple { text: String, reason: String },
    #[error("malformed target lemma `{0}`")]
    MalformedTargetLemma(String),
    #[error("malformed link field `{text}`: {reason}")]
    MalformedLinkField { text: String, reason: String },
    #[error("malformed morphology `{0}`")]
    MalformedMorph(String),
    #[error("unknown extractor `%{0}`")]
    UnknownExtractor(String),
    #[error("cross-verse link `{0}` not allowed by the strict profile")]
    CrossVerseNotAllowed(String),
    #[error("field `{0}` contains the column separator or a line break")]
    UnencodableField(String),
    #[error("empty verse block")]
    EmptyBlock,
    #[error("{verse}: target row {position} links to missing source token {id}")]
    DanglingLink {
        verse: VerseRef,
        position: usize,
        id: TokenId,
    },
    #[error("word {0} has more than 26 subtokens")]
    TooManySubtokens(u32),
    #[error("segmented word is empty")]
    EmptyWord,
    #[error("malformed segmented word `{text}`: {reason}")]
    MalformedSegmentation { text: String, reason: String },
    #[error("underlying text differs: `{left}` vs `{right}`")]
    TextMismatch { left: String, right: String },
    #[error("line {line}: {reason}")]
    MalformedInterchange { line: usize, reason: String },
    #[error("word {0} occurs in only one input")]
    UnpairedWord(String),
    #[error("bad config line {line}: {reason}")]
    Config { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
