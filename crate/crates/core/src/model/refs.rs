use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Canonical verse address, rendered `ps001:001`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VerseRef {
    pub book: String,
    pub chapter: u32,
    pub verse: u32,
}

impl VerseRef {
    pub fn new(book: impl Into<String>, chapter: u32, verse: u32) -> Result<Self, Error> {
        let book = book.into();
        let ok = (2..=5).contains(&book.len())
            && book.bytes().all(|b| b.is_ascii_lowercase())
            && chapter > 0
            && verse > 0;
        if !ok {
            return Err(Error::MalformedVerseRef(format!("{book}{chapter:03}:{verse:03}")));
        }
        Ok(VerseRef { book, chapter, verse })
    }
}

impl fmt::Display for VerseRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:03}:{:03}", self.book, self.chapter, self.verse)
    }
}

impl FromStr for VerseRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::MalformedVerseRef(s.to_string());
        let (left, verse) = s.split_once(':').ok_or_else(bad)?;
        let split = left.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (book, chapter) = left.split_at(split);
        if !chapter.bytes().all(|b| b.is_ascii_digit()) || !verse.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let chapter: u32 = chapter.parse().map_err(|_| bad())?;
        let verse: u32 = verse.parse().map_err(|_| bad())?;
        let parsed = VerseRef::new(book, chapter, verse).map_err(|_| bad())?;
        // only the zero-padded rendering is accepted
        if parsed.to_string() != s {
            return Err(bad());
        }
        Ok(parsed)
    }
}

/// Position of a source subtoken within its verse: word index plus an
/// optional subtoken letter (`6b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenId {
    pub word: u32,
    pub sub: Option<char>,
}

impl TokenId {
    pub fn new(word: u32, sub: Option<char>) -> Result<Self, Error> {
        if word == 0 || sub.is_some_and(|c| !c.is_ascii_lowercase()) {
            let mut text = word.to_string();
            text.extend(sub);
            return Err(Error::MalformedTokenId(text));
        }
        Ok(TokenId { word, sub })
    }

    pub const fn word(word: u32) -> Self {
        TokenId { word, sub: None }
    }

    pub const fn lettered(word: u32, sub: char) -> Self {
        TokenId { word, sub: Some(sub) }
    }
}

impl fmt::Display for TokenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)?;
        if let Some(c) = self.sub {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for TokenId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::MalformedTokenId(s.to_string());
        let digits = s.bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 || s.starts_with('0') {
            return Err(bad());
        }
        let word: u32 = s[..digits].parse().map_err(|_| bad())?;
        let mut rest = s[digits..].chars();
        let sub = match (rest.next(), rest.next()) {
            (None, _) => None,
            (Some(c), None) if c.is_ascii_lowercase() => Some(c),
            _ => return Err(bad()),
        };
        TokenId::new(word, sub).map_err(|_| bad())
    }
}

const HEBREW_BIBLE: [&str; 39] = [
    "gen", "ex", "lev", "num", "deut", "josh", "judg", "ruth", "isam", "iisam", "ikgs", "iikgs",
    "ichr", "iichr", "ezra", "neh", "esth", "job", "ps", "prov", "eccl", "song", "isa", "jer",
    "lam", "ezek", "dan", "hos", "joel", "amos", "obad", "jonah", "mic", "nah", "hab", "zeph",
    "hag", "zech", "mal",
];

const GREEK_NT: [&str; 27] = [
    "mt", "mk", "lk", "jn", "acts", "rom", "icor", "iicor", "gal", "eph", "phil", "col", "ithe",
    "iithe", "itim", "iitim", "tit", "phlm", "hb", "jas", "ipe", "iipe", "ijn", "iijn", "iiijn",
    "jude", "rev",
];

/// Canonical ordering of book codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookOrder {
    books: Vec<String>,
    position: HashMap<String, usize>,
}

impl BookOrder {
    pub fn new<I, S>(books: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut order = BookOrder {
            books: Vec::new(),
            position: HashMap::new(),
        };
        for book in books {
            let book = book.into();
            if !order.position.contains_key(&book) {
                order.position.insert(book.clone(), order.books.len());
                order.books.push(book);
            }
        }
        order
    }

    /// Reads one code per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        BookOrder::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    pub fn books(&self) -> &[String] {
        &self.books
    }

    pub fn position(&self, book: &str) -> Option<usize> {
        self.position.get(book).copied()
    }

    pub fn contains(&self, book: &str) -> bool {
        self.position.contains_key(book)
    }

    /// Unknown books sort after every known one, alphabetically.
    pub fn cmp_refs(&self, a: &VerseRef, b: &VerseRef) -> Ordering {
        let key = |r: &VerseRef| (self.position(&r.book).unwrap_or(usize::MAX), r.book.clone());
        key(a)
            .cmp(&key(b))
            .then(a.chapter.cmp(&b.chapter))
            .then(a.verse.cmp(&b.verse))
    }
}

impl Default for BookOrder {
    fn default() -> Self {
        BookOrder::new(HEBREW_BIBLE.iter().chain(GREEK_NT.iter()).copied())
    }
}
