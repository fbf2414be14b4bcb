use serde::Serialize;

use crate::diagnostic::Severity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Line,
    Verse,
    Corpus,
}

/// A checkable guideline or format rule with its default severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub id: &'static str,
    pub severity: Severity,
    pub scope: Scope,
    pub description: &'static str,
}

pub const F1_COLUMNS: &str = "F1-columns";
pub const F2_FIELD: &str = "F2-field";
pub const F3_LAYOUT: &str = "F3-layout";
pub const F4_ORDER: &str = "F4-order";
pub const F5_EXTENSION: &str = "F5-extension";

pub const R1_DANGLING_LINK: &str = "R1-dangling-link";
pub const R2_SOURCE_IDS: &str = "R2-source-ids";
pub const R3_EXTRACTOR: &str = "R3-extractor-row";
pub const R4_EPSILON: &str = "R4-epsilon-lemma";
pub const R5_MORPH: &str = "R5-morph-inventory";
pub const R6_LEMMA_TRIPLE: &str = "R6-lemma-triple";
pub const R7_COVERAGE: &str = "R7-source-coverage";

pub const C1_DUPLICATE: &str = "C1-duplicate-verse";
pub const C2_BOOK_ORDER: &str = "C2-book-order";
pub const C3_CROSS_VERSE: &str = "C3-cross-verse-target";
pub const C4_UNKNOWN_BOOK: &str = "C4-unknown-book";

const fn rule(id: &'static str, severity: Severity, scope: Scope, description: &'static str) -> Rule {
    Rule { id, severity, scope, description }
}

pub const RULES: &[Rule] = &[
    rule(F1_COLUMNS, Severity::Error, Scope::Line, "every row has exactly the profile's column count"),
    rule(F2_FIELD, Severity::Error, Scope::Line, "every field parses under its column's syntax"),
    rule(F3_LAYOUT, Severity::Error, Scope::Line, "source rows carry a token ID, target rows carry links and a word form"),
    rule(F4_ORDER, Severity::Warning, Scope::Line, "verse blocks and source rows appear in canonical order"),
    rule(F5_EXTENSION, Severity::Error, Scope::Line, "comments, cross-verse links and unknown extractors need a lenient profile"),
    rule(R1_DANGLING_LINK, Severity::Error, Scope::Verse, "every link resolves to a source token of the verse or a declared cross-verse target"),
    rule(R2_SOURCE_IDS, Severity::Error, Scope::Verse, "source token ids increase strictly; lettered subtokens start at `a`, are contiguous and never share a word with a bare id"),
    rule(R3_EXTRACTOR, Severity::Error, Scope::Verse, "extractor rows link to source tokens and use a known `%` kind"),
    rule(R4_EPSILON, Severity::Warning, Scope::Verse, "rows without source support carry a parenthesized or empty lemma"),
    rule(R5_MORPH, Severity::Warning, Scope::Verse, "morphology atoms belong to the tag inventory"),
    rule(R6_LEMMA_TRIPLE, Severity::Error, Scope::Verse, "source lemma triples have at least one slot, a whitespace-free lemma and a positive entry number"),
    rule(R7_COVERAGE, Severity::Warning, Scope::Verse, "every source content token is referenced by a link"),
    rule(C1_DUPLICATE, Severity::Error, Scope::Corpus, "each verse reference occurs once"),
    rule(C2_BOOK_ORDER, Severity::Warning, Scope::Corpus, "verses follow the canonical book order"),
    rule(C3_CROSS_VERSE, Severity::Error, Scope::Corpus, "cross-verse links resolve in the neighbouring verse"),
    rule(C4_UNKNOWN_BOOK, Severity::Error, Scope::Corpus, "book codes belong to the configured book order"),
];

pub fn find_rule(id: &str) -> Option<&'static Rule> {
    RULES.iter().find(|r| r.id == id)
}
