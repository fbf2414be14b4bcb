use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// An (enhanced) Strong number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrongCode {
    /// `834a`
    Numeric { number: u32, suffix: Option<char> },
    /// A particle letter such as `b` or `d`.
    Particle(char),
    /// Greek lemma number paired with a parsing code: `2980&5660`.
    Compound { lemma: u32, parsing: u32 },
}

impl StrongCode {
    pub const fn number(number: u32) -> Self {
        StrongCode::Numeric { number, suffix: None }
    }

    pub fn is_particle(&self) -> bool {
        matches!(self, StrongCode::Particle(_))
    }

    /// Whether a search query names this code, either whole or by one of
    /// its numeric slots.
    pub fn matches_query(&self, query: &str) -> bool {
        if self.to_string() == query {
            return true;
        }
        let Ok(n) = query.parse::<u32>() else {
            return false;
        };
        match *self {
            StrongCode::Numeric { number, .. } => number == n,
            StrongCode::Particle(_) => false,
            StrongCode::Compound { lemma, parsing } => lemma == n || parsing == n,
        }
    }
}

fn parse_number(s: &str) -> Option<u32> {
    if s.is_empty() || s.starts_with('0') || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for StrongCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrongCode::Numeric { number, suffix } => {
                write!(f, "{number}")?;
                if let Some(c) = suffix {
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            StrongCode::Particle(c) => write!(f, "{c}"),
            StrongCode::Compound { lemma, parsing } => write!(f, "{lemma}&{parsing}"),
        }
    }
}

impl FromStr for StrongCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::MalformedStrong(s.to_string());
        if let Some((lemma, parsing)) = s.split_once('&') {
            return match (parse_number(lemma), parse_number(parsing)) {
                (Some(lemma), Some(parsing)) => Ok(StrongCode::Compound { lemma, parsing }),
                _ => Err(bad()),
            };
        }
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_lowercase() => return Ok(StrongCode::Particle(c)),
            (None, _) => return Err(bad()),
            _ => {}
        }
        let digits = s.bytes().take_while(u8::is_ascii_digit).count();
        let number = parse_number(&s[..digits]).ok_or_else(bad)?;
        let mut rest = s[digits..].chars();
        let suffix = match (rest.next(), rest.next()) {
            (None, _) => None,
            (Some(c), None) if c.is_ascii_lowercase() => Some(c),
            _ => return Err(bad()),
        };
        Ok(StrongCode::Numeric { number, suffix })
    }
}

/// The source lemma triple `lemma/strong/concordance-entry`, `-` for absent slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SourceLemma {
    pub lemma: Option<String>,
    pub strong: Option<StrongCode>,
    pub concord: Option<u32>,
}

impl SourceLemma {
    pub fn is_empty(&self) -> bool {
        self.lemma.is_none() && self.strong.is_none() && self.concord.is_none()
    }
}

impl fmt::Display for SourceLemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.lemma.as_deref().unwrap_or("-"))?;
        f.write_str("/")?;
        match &self.strong {
            Some(s) => write!(f, "{s}")?,
            None => f.write_str("-")?,
        }
        f.write_str("/")?;
        match self.concord {
            Some(n) => write!(f, "{n}"),
            None => f.write_str("-"),
        }
    }
}

impl FromStr for SourceLemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| Error::MalformedLemmaTriple {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let slots: Vec<&str> = s.split('/').collect();
        if slots.len() != 3 {
            return Err(bad("expected three `/`-separated slots"));
        }
        if slots.iter().any(|slot| slot.is_empty()) {
            return Err(bad("empty slot"));
        }
        let lemma = match slots[0] {
            "-" => None,
            l => Some(l.to_string()),
        };
        let strong = match slots[1] {
            "-" => None,
            code => Some(code.parse().map_err(|_| bad("unparseable strong code"))?),
        };
        let concord = match slots[2] {
            "-" => None,
            n => Some(
                n.bytes()
                    .all(|b| b.is_ascii_digit())
                    .then(|| n.parse().ok())
                    .flatten()
                    .ok_or_else(|| bad("concordance entry is not a number"))?,
            ),
        };
        let parsed = SourceLemma { lemma, strong, concord };
        if parsed.to_string() != s {
            return Err(bad("non-canonical number"));
        }
        Ok(parsed)
    }
}

/// Lemma column of a target row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TargetLemma {
    Plain(String),
    /// Epsilon-linked or aux token: `(olla)`, multiword joined with `_`.
    Periphery(String),
    /// Extractor pseudo-lemma, stored without the `%` prefix.
    Extractor(String),
    None,
}

impl TargetLemma {
    pub fn is_extractor(&self) -> bool {
        matches!(self, TargetLemma::Extractor(_))
    }

    pub fn text(&self) -> Option<&str> {
        match self {
            TargetLemma::Plain(s) | TargetLemma::Periphery(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for TargetLemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetLemma::Plain(s) => f.write_str(s),
            TargetLemma::Periphery(s) => write!(f, "({s})"),
            TargetLemma::Extractor(k) => write!(f, "%{k}"),
            TargetLemma::None => f.write_str("-"),
        }
    }
}

impl FromStr for TargetLemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::MalformedTargetLemma(s.to_string());
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(bad());
        }
        if s == "-" {
            return Ok(TargetLemma::None);
        }
        if let Some(kind) = s.strip_prefix('%') {
            if kind.is_empty() || !kind.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(bad());
            }
            return Ok(TargetLemma::Extractor(kind.to_string()));
        }
        if let Some(inner) = s.strip_prefix('(') {
            let inner = inner.strip_suffix(')').ok_or_else(bad)?;
            if inner.is_empty() {
                return Err(bad());
            }
            return Ok(TargetLemma::Periphery(inner.to_string()));
        }
        Ok(TargetLemma::Plain(s.to_string()))
    }
}

/// The set of extractor kinds a corpus may use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractorInventory(BTreeSet<String>);

impl ExtractorInventory {
    pub fn new<I, S>(kinds: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        ExtractorInventory(kinds.into_iter().map(Into::into).collect())
    }

    /// One kind per line, with or without the `%` prefix.
    pub fn parse(text: &str) -> Self {
        ExtractorInventory::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| l.trim_start_matches('%')),
        )
    }

    pub fn contains(&self, kind: &str) -> bool {
        self.0.contains(kind)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl Default for ExtractorInventory {
    fn default() -> Self {
        ExtractorInventory::new(["pers", "modus", "tasp", "case", "pro"])
    }
}
