use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

/// Hebrew maqef, the hyphen-like connector of graphic words.
pub const MAQEF: char = '\u{05BE}';

/// Combining points and accents; everything else counts as a letter.
pub fn is_mark(c: char) -> bool {
    matches!(c,
        '\u{0300}'..='\u{036F}'
        | '\u{0591}'..='\u{05BD}'
        | '\u{05BF}'
        | '\u{05C1}'..='\u{05C2}'
        | '\u{05C4}'..='\u{05C5}'
        | '\u{05C7}')
}

/// Letters of a string with pointing and accents removed.
pub fn skeleton(text: &str) -> String {
    text.chars().filter(|&c| !is_mark(c)).collect()
}

/// What follows a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// End of word.
    None,
    /// After a maqef, without white space.
    Maqef,
    /// Prefix boundary (`+`); starts a new subtoken.
    Prefix,
    /// Suffix boundary (`=`); marked but inside the subtoken.
    Suffix,
    /// Unclassified split (`/`).
    Split,
    /// White space: a token boundary.
    Space,
}

impl Boundary {
    pub fn marker(self) -> &'static str {
        match self {
            Boundary::None | Boundary::Maqef => "",
            Boundary::Prefix => "+",
            Boundary::Suffix => "=",
            Boundary::Split => "/",
            Boundary::Space => " ",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Segment {
    pub text: String,
    pub boundary: Boundary,
}

/// A graphic word cut into segments, in the marker notation
/// `כל־ הַ+גּוֹיִם`, `אֵת=כָּם`, `וְ/אֲשֶׁר`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SegmentedWord {
    segments: Vec<Segment>,
}

fn is_marker(c: char) -> bool {
    matches!(c, '+' | '=' | '/')
}

impl SegmentedWord {
    pub fn new(segments: Vec<Segment>) -> Result<Self, Error> {
        let word = SegmentedWord { segments };
        let bad = |reason: &str| Error::MalformedSegmentation { text: word.to_string(), reason: reason.to_string() };
        let Some(last) = word.segments.last() else {
            return Err(Error::EmptyWord);
        };
        if !matches!(last.boundary, Boundary::None | Boundary::Space) {
            return Err(bad("last segment must end the word"));
        }
        for (i, seg) in word.segments.iter().enumerate() {
            if seg.text.is_empty() {
                return Err(bad("empty segment"));
            }
            if seg.text.chars().any(|c| is_marker(c) || c.is_whitespace()) {
                return Err(bad("segment contains a boundary marker"));
            }
            if seg.text.starts_with(is_mark) && i == 0 {
                return Err(bad("word starts with a combining mark"));
            }
            if seg.text.trim_end_matches(MAQEF).contains(MAQEF) {
                return Err(bad("maqef inside a segment"));
            }
            if i + 1 < word.segments.len() && seg.boundary == Boundary::None {
                return Err(bad("missing boundary between segments"));
            }
            if seg.boundary == Boundary::Maqef && !seg.text.ends_with(MAQEF) {
                return Err(bad("maqef boundary without a maqef"));
            }
        }
        Ok(word)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn into_segments(self) -> Vec<Segment> {
        self.segments
    }

    /// Text with all boundaries removed.
    pub fn text(&self) -> String {
        self.segments.iter().map(|s| s.text.as_str()).collect()
    }

    pub fn skeleton(&self) -> String {
        skeleton(&self.text())
    }

    /// Number of subtokens: segments not glued on by a suffix boundary.
    pub fn subtoken_count(&self) -> usize {
        1 + self.segments[..self.segments.len() - 1]
            .iter()
            .filter(|s| s.boundary != Boundary::Suffix)
            .count()
    }

    /// Boundaries keyed by the number of letters (skeleton characters)
    /// before them. The final boundary is not included.
    pub fn boundaries_by_letter(&self) -> Vec<(usize, Boundary)> {
        let mut letters = 0;
        let mut out = Vec::new();
        for seg in &self.segments[..self.segments.len() - 1] {
            letters += seg.text.chars().filter(|&c| !is_mark(c)).count();
            out.push((letters, seg.boundary));
        }
        out
    }

    /// Rebuilds a word from flat `text`, placing `boundaries` after the given
    /// letter counts (a letter keeps its following marks).
    pub fn from_letter_boundaries(text: &str, boundaries: &[(usize, Boundary)], last: Boundary) -> Result<Self, Error> {
        let mut segments = Vec::new();
        let mut current = String::new();
        let mut letters = 0;
        let mut pending = boundaries.iter().peekable();
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            current.push(c);
            if !is_mark(c) {
                letters += 1;
            }
            let cluster_done = chars.peek().is_none_or(|&n| !is_mark(n));
            if cluster_done {
                if let Some(&&(at, boundary)) = pending.peek() {
                    if at == letters && chars.peek().is_some() {
                        segments.push(Segment { text: std::mem::take(&mut current), boundary });
                        pending.next();
                    }
                }
            }
        }
        segments.push(Segment { text: current, boundary: last });
        SegmentedWord::new(segments)
    }

    pub(crate) fn map_boundaries(&self, mut f: impl FnMut(usize, &[Segment]) -> Boundary) -> SegmentedWord {
        let mut segments = self.segments.clone();
        for i in 0..segments.len() {
            let b = f(i, &segments);
            segments[i].boundary = b;
        }
        SegmentedWord { segments }
    }
}

impl fmt::Display for SegmentedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for seg in &self.segments {
            f.write_str(&seg.text)?;
            f.write_str(seg.boundary.marker())?;
        }
        Ok(())
    }
}

impl FromStr for SegmentedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| Error::MalformedSegmentation { text: s.to_string(), reason: reason.to_string() };
        if s.is_empty() {
            return Err(Error::EmptyWord);
        }
        if s.starts_with(char::is_whitespace) {
            return Err(bad("leading white space"));
        }
        let mut segments = Vec::new();
        let mut current = String::new();
        let mut marker: Option<Boundary> = None;
        let mut space = false;
        for c in s.chars() {
            if is_marker(c) {
                if current.is_empty() || marker.is_some() {
                    return Err(bad("misplaced marker"));
                }
                marker = Some(match c {
                    '+' => Boundary::Prefix,
                    '=' => Boundary::Suffix,
                    _ => Boundary::Split,
                });
                space = false;
            } else if c.is_whitespace() {
                if marker.is_none() {
                    space = true;
                }
            } else {
                let boundary = match (marker.take(), space) {
                    (Some(m), _) => Some(m),
                    (None, true) => Some(Boundary::Space),
                    (None, false) if current.ends_with(MAQEF) && !is_mark(c) => Some(Boundary::Maqef),
                    (None, false) => None,
                };
                space = false;
                if let Some(boundary) = boundary {
                    segments.push(Segment { text: std::mem::take(&mut current), boundary });
                }
                current.push(c);
            }
        }
        if marker.is_some() {
            return Err(bad("dangling marker"));
        }
        let last = if space { Boundary::Space } else { Boundary::None };
        segments.push(Segment { text: current, boundary: last });
        SegmentedWord::new(segments)
    }
}
