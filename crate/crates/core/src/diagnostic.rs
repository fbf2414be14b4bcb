use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::VerseRef;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

/// A finding from parsing or validation. `rule` is an id from
/// [`crate::validate::RULES`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub rule: &'static str,
    pub verse: Option<VerseRef>,
    pub line: Option<usize>,
    pub message: String,
}

impl Diagnostic {
    pub fn error(rule: &'static str, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, rule, verse: None, line: None, message: message.into() }
    }

    pub fn warning(rule: &'static str, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Warning, rule, verse: None, line: None, message: message.into() }
    }

    pub fn at_verse(mut self, verse: &VerseRef) -> Self {
        self.verse = Some(verse.clone());
        self
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = Some(line);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// Tab-separated: severity, rule, verse, line, message.
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.severity,
            self.rule,
            self.verse.as_ref().map(ToString::to_string).unwrap_or_default(),
            self.line.map(|l| l.to_string()).unwrap_or_default(),
            self.message.replace(['\t', '\n'], " "),
        )
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.severity, self.rule)?;
        if let Some(v) = &self.verse {
            write!(f, " {v}")?;
        }
        if let Some(l) = self.line {
            write!(f, " line {l}")?;
        }
        write!(f, ": {}", self.message)
    }
}
