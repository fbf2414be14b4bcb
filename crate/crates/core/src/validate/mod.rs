//! Guideline checks over verses and corpora.
//!
//! Verse rules R1-R7 look at one verse at a time; corpus rules C1-C4 look
//! across verses. Diagnostics come out in a fixed order: verses in file
//! order, rules in id order, rows in row order.

pub mod rules;

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{parse_bool, parse_key_values};
use crate::diagnostic::{Diagnostic, Severity};
use crate::error::Error;
use crate::model::{Corpus, Coverage, Inventories, TargetLemma, TokenId, VerseAlignment};
pub use rules::{find_rule, Rule, Scope, RULES};
use rules::*;

/// Enabled rules, severity overrides and guideline switches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    overrides: HashMap<String, Option<Severity>>,
    /// Whether links from `%pro` rows count as covering a source token.
    pub pro_counts_as_coverage: bool,
    /// Whether cross-verse links are acceptable at all.
    pub allow_cross_verse: bool,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig { overrides: HashMap::new(), pro_counts_as_coverage: false, allow_cross_verse: true }
    }
}

impl RuleConfig {
    /// `<rule id> = off|warning|error`, `pro_counts_as_coverage = bool`,
    /// `cross_verse = allow|deny`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut config = RuleConfig::default();
        for (line, key, value) in parse_key_values(text)? {
            let err = |reason: String| Error::Config { line, reason };
            match key.as_str() {
                "pro_counts_as_coverage" => config.pro_counts_as_coverage = parse_bool(line, &value)?,
                "cross_verse" => {
                    config.allow_cross_verse = match value.as_str() {
                        "allow" => true,
                        "deny" => false,
                        other => return Err(err(format!("expected allow|deny, got `{other}`"))),
                    }
                }
                id => {
                    if find_rule(id).is_none() {
                        return Err(err(format!("unknown rule `{id}`")));
                    }
                    let severity = match value.as_str() {
                        "off" => None,
                        "warning" => Some(Severity::Warning),
                        "error" => Some(Severity::Error),
                        other => return Err(err(format!("expected off|warning|error, got `{other}`"))),
                    };
                    config.overrides.insert(id.to_string(), severity);
                }
            }
        }
        Ok(config)
    }

    pub fn set(&mut self, rule: &str, severity: Option<Severity>) {
        self.overrides.insert(rule.to_string(), severity);
    }

    /// Effective severity of a rule, `None` when disabled.
    pub fn severity(&self, rule: &str) -> Option<Severity> {
        match self.overrides.get(rule) {
            Some(s) => *s,
            None => find_rule(rule).map(|r| r.severity),
        }
    }

    fn apply(&self, diagnostics: Vec<Diagnostic>) -> Vec<Diagnostic> {
        diagnostics
            .into_iter()
            .filter_map(|mut d| {
                d.severity = self.severity(d.rule)?;
                Some(d)
            })
            .collect()
    }
}

fn emit(out: &mut Vec<Diagnostic>, rule: &'static str, verse: &VerseAlignment, message: String) {
    out.push(Diagnostic::error(rule, message).at_verse(&verse.verse_ref));
}

/// Runs the verse-scope rules.
pub fn validate_verse(verse: &VerseAlignment, inventories: &Inventories, config: &RuleConfig) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    // R1
    for (pos, link) in verse.links() {
        if link.is_cross_verse() {
            if !config.allow_cross_verse {
                emit(&mut out, R1_DANGLING_LINK, verse, format!("target row {pos}: cross-verse link {link} not allowed"));
            }
        } else if verse.source_token(&link.target).is_none() {
            emit(&mut out, R1_DANGLING_LINK, verse, format!("target row {pos}: link {link} has no source token"));
        }
    }

    // R2
    for problem in verse.source_id_problems() {
        emit(&mut out, R2_SOURCE_IDS, verse, problem);
    }

    // R3
    for (pos, row) in verse.target.iter().enumerate() {
        if let TargetLemma::Extractor(kind) = &row.lemma {
            if row.links.is_no_source() {
                emit(&mut out, R3_EXTRACTOR, verse, format!("target row {pos}: extractor %{kind} has no source link"));
            } else if !inventories.extractors.contains(kind) {
                emit(&mut out, R3_EXTRACTOR, verse, format!("target row {pos}: unknown extractor %{kind}"));
            }
        }
    }

    // R4
    for (pos, row) in verse.target.iter().enumerate() {
        if row.links.is_no_source() {
            if let TargetLemma::Plain(lemma) = &row.lemma {
                emit(
                    &mut out,
                    R4_EPSILON,
                    verse,
                    format!("target row {pos}: `{lemma}` has no source support but is not parenthesized"),
                );
            }
        }
    }

    // R5
    let unknown_atoms = |atoms: &[String]| -> Vec<String> {
        atoms.iter().filter(|a| !inventories.morph_tags.contains(a)).cloned().collect()
    };
    for token in &verse.source {
        let unknown = unknown_atoms(token.morph.atoms());
        if !unknown.is_empty() {
            emit(&mut out, R5_MORPH, verse, format!("source {}: unknown tags {}", token.id, unknown.join(", ")));
        }
    }
    for (pos, row) in verse.target.iter().enumerate() {
        let unknown = unknown_atoms(row.morph.atoms());
        if !unknown.is_empty() {
            emit(&mut out, R5_MORPH, verse, format!("target row {pos}: unknown tags {}", unknown.join(", ")));
        }
    }

    // R6
    for token in &verse.source {
        let lemma = &token.lemma;
        let problem = if lemma.is_empty() {
            Some("all lemma slots are empty")
        } else if lemma.lemma.as_deref().is_some_and(|l| l.is_empty() || l.chars().any(char::is_whitespace)) {
            Some("lemma contains whitespace")
        } else if lemma.concord == Some(0) {
            Some("concordance entry 0")
        } else {
            None
        };
        if let Some(problem) = problem {
            emit(&mut out, R6_LEMMA_TRIPLE, verse, format!("source {}: {problem}", token.id));
        }
    }

    // R7
    let covered: HashSet<TokenId> = verse
        .target
        .iter()
        .filter(|row| config.pro_counts_as_coverage || row.lemma != TargetLemma::Extractor("pro".into()))
        .flat_map(|row| row.links.links())
        .filter(|l| !l.is_cross_verse())
        .map(|l| l.target)
        .collect();
    for token in &verse.source {
        let content = token.lemma.strong.is_some_and(|s| !s.is_particle());
        if content && !covered.contains(&token.id) {
            emit(&mut out, R7_COVERAGE, verse, format!("source {} is not linked", token.id));
        }
    }

    config.apply(out)
}

/// Result of a corpus-wide validation run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationSummary {
    pub verses: usize,
    pub diagnostics: Vec<Diagnostic>,
    /// Per rule id: (errors, warnings).
    pub counts: BTreeMap<&'static str, (usize, usize)>,
    pub coverage: Coverage,
}

impl ValidationSummary {
    pub fn error_count(&self) -> usize {
        self.diagnostics.iter().filter(|d| d.is_error()).count()
    }

    pub fn warning_count(&self) -> usize {
        self.diagnostics.len() - self.error_count()
    }

    pub fn errors_for(&self, rule: &str) -> usize {
        self.counts.get(rule).map_or(0, |c| c.0)
    }

    /// Puts line-level diagnostics from ingestion ahead of the rule findings.
    pub fn with_parse_diagnostics(self, parse: Vec<Diagnostic>) -> Self {
        let mut all = parse;
        all.extend(self.diagnostics);
        ValidationSummary::from_diagnostics(self.verses, all, self.coverage)
    }

    fn from_diagnostics(verses: usize, diagnostics: Vec<Diagnostic>, coverage: Coverage) -> Self {
        let mut counts: BTreeMap<&'static str, (usize, usize)> = RULES
            .iter()
            .filter(|r| r.scope != Scope::Line)
            .map(|r| (r.id, (0, 0)))
            .collect();
        for d in &diagnostics {
            let entry = counts.entry(d.rule).or_default();
            match d.severity {
                Severity::Error => entry.0 += 1,
                Severity::Warning => entry.1 += 1,
            }
        }
        ValidationSummary { verses, diagnostics, counts, coverage }
    }
}

fn corpus_checks(corpus: &Corpus, config: &RuleConfig) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let order = corpus.book_order();

    let mut seen: HashSet<&crate::model::VerseRef> = HashSet::new();
    for verse in corpus.verses() {
        if !seen.insert(&verse.verse_ref) {
            out.push(Diagnostic::error(C1_DUPLICATE, "verse occurs more than once").at_verse(&verse.verse_ref));
        }
    }

    let verses: Vec<&VerseAlignment> = corpus.verses().collect();
    for pair in verses.windows(2) {
        if order.cmp_refs(&pair[1].verse_ref, &pair[0].verse_ref).is_lt() {
            out.push(
                Diagnostic::error(C2_BOOK_ORDER, format!("follows {}", pair[0].verse_ref)).at_verse(&pair[1].verse_ref),
            );
        }
    }

    for verse in corpus.verses() {
        for (pos, link) in verse.links() {
            let Some(offset) = link.verse_offset else { continue };
            let resolved = corpus
                .offset_verse(&verse.verse_ref, offset)
                .is_some_and(|other| other.source_token(&link.target).is_some());
            if !resolved {
                out.push(
                    Diagnostic::error(C3_CROSS_VERSE, format!("target row {pos}: link {link} does not resolve"))
                        .at_verse(&verse.verse_ref),
                );
            }
        }
    }

    let mut reported = HashSet::new();
    for verse in corpus.verses() {
        let book = &verse.verse_ref.book;
        if !order.contains(book) && reported.insert(book.clone()) {
            out.push(Diagnostic::error(C4_UNKNOWN_BOOK, format!("unknown book `{book}`")).at_verse(&verse.verse_ref));
        }
    }

    config.apply(out)
}

/// Verse rules over every verse (in parallel, merged in file order)
/// followed by the corpus rules.
pub fn validate_corpus(corpus: &Corpus, config: &RuleConfig) -> ValidationSummary {
    let verses: Vec<&VerseAlignment> = corpus.verses().collect();
    let per_verse: Vec<(Vec<Diagnostic>, Coverage)> = verses
        .par_iter()
        .map(|v| (validate_verse(v, &corpus.inventories, config), v.coverage_stats()))
        .collect();
    let mut diagnostics = Vec::new();
    let mut coverage = Coverage::default();
    for (d, c) in per_verse {
        diagnostics.extend(d);
        coverage += c;
    }
    diagnostics.extend(corpus_checks(corpus, config));
    ValidationSummary::from_diagnostics(verses.len(), diagnostics, coverage)
}

/// Plain-text report: one line per diagnostic and a closing tally.
pub fn render_text_report(summary: &ValidationSummary) -> String {
    let mut out = String::new();
    for d in &summary.diagnostics {
        out.push_str(&d.to_string());
        out.push('\n');
    }
    out.push_str(&format!(
        "{} verses, {} errors, {} warnings\n",
        summary.verses,
        summary.error_count(),
        summary.warning_count()
    ));
    out
}

pub fn render_tsv_report(summary: &ValidationSummary) -> String {
    let mut out = String::from("severity\trule\tverse\tline\tmessage\n");
    for d in &summary.diagnostics {
        out.push_str(&d.to_tsv());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file() {
        let c = RuleConfig::parse("R5-morph-inventory = off\nR7-source-coverage = error\npro_counts_as_coverage = yes\n")
            .unwrap();
        assert_eq!(c.severity(R5_MORPH), None);
        assert_eq!(c.severity(R7_COVERAGE), Some(Severity::Error));
        assert_eq!(c.severity(R1_DANGLING_LINK), Some(Severity::Error));
        assert!(c.pro_counts_as_coverage);
        assert!(RuleConfig::parse("R99 = off").is_err());
        assert!(RuleConfig::parse("R1-dangling-link = loud").is_err());
    }
}
