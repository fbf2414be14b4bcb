use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{BookOrder, ExtractorInventory, VerseAlignment, VerseRef};

/// Inventory of permitted morphology tag atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphInventory(BTreeSet<String>);

const LEIPZIG: &[&str] = &[
    "1", "2", "3", "A", "ABL", "ABS", "ACC", "ADJ", "ADV", "AGR", "ALL", "ANTIP", "APPL", "ART",
    "AUX", "BEN", "CAUS", "CLF", "COM", "COMP", "COMPL", "COND", "COP", "CVB", "DAT", "DECL", "DEF",
    "DEM", "DET", "DIST", "DISTR", "DU", "DUR", "ERG", "EXCL", "F", "FOC", "FUT", "GEN", "IMP",
    "INCL", "IND", "INDF", "INF", "INS", "INTR", "IPFV", "IRR", "LOC", "M", "N", "NEG", "NMLZ",
    "NOM", "OBJ", "OBL", "P", "PASS", "PFV", "PL", "POSS", "PRED", "PRF", "PRS", "PROG", "PROH",
    "PROX", "PST", "PTCP", "PURP", "Q", "QUOT", "RECP", "REFL", "REL", "RES", "S", "SBJ", "SBJV",
    "SG", "TOP", "TR", "VOC",
];

// Hebrew, Greek and Finnish analyses as they occur in the released data.
const CORPUS_TAGS: &[&str] = &[
    "MASC", "FEM", "NEUT", "CSTR", "PERF", "IMPF", "WAYY", "WEQ", "IMPV", "JUSS", "COHORT", "PREP",
    "CNJ", "PUNC", "NEGV", "ACT", "MID", "PRES", "PAST", "AOR", "PLUP", "OPT", "PCP", "PCP1", "PCP2",
    "INF1", "INF2", "INF3", "POT", "POS", "CMP", "SUP", "SUB", "INDEF", "INTERJ", "NUM", "PRON",
    "PROP", "SUFF", "PTV", "ESS", "TRA", "INE", "ELA", "ILL", "ADE", "ABE", "Qal", "Niphal", "Piel",
    "Pual", "Hiphil", "Hophal", "Hithpael", "Polel", "Pilpel", "Peal", "Peil", "Haphel", "Aphel",
];

impl MorphInventory {
    pub fn new<I, S>(tags: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        MorphInventory(tags.into_iter().map(Into::into).collect())
    }

    /// Tags separated by whitespace; `#` starts a comment line.
    pub fn parse(text: &str) -> Self {
        MorphInventory::new(
            text.lines().filter(|l| !l.trim_start().starts_with('#')).flat_map(str::split_whitespace),
        )
    }

    pub fn contains(&self, tag: &str) -> bool {
        self.0.contains(tag)
    }
}

impl Default for MorphInventory {
    fn default() -> Self {
        let mut tags: BTreeSet<String> = LEIPZIG.iter().chain(CORPUS_TAGS).map(|s| s.to_string()).collect();
        // person-gender-number bundles: 3MS, 1CP, 3S, ...
        for person in ['1', '2', '3'] {
            for number in ['S', 'P', 'D'] {
                tags.insert(format!("{person}{number}"));
                for gender in ['M', 'F', 'C'] {
                    tags.insert(format!("{person}{gender}{number}"));
                }
            }
        }
        MorphInventory(tags)
    }
}

/// Configuration carried by a corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Inventories {
    pub book_order: BookOrder,
    pub extractors: ExtractorInventory,
    pub morph_tags: MorphInventory,
}

/// An aligned subcorpus. Verses keep their file order; `canonical_refs`
/// gives book-order traversal. Cloning is cheap: verses are shared.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub label: String,
    pub inventories: Arc<Inventories>,
    verses: Vec<Arc<VerseAlignment>>,
    index: HashMap<VerseRef, usize>,
}

impl PartialEq for Corpus {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.verses == other.verses
    }
}

impl Corpus {
    pub fn new(label: impl Into<String>, inventories: Inventories) -> Self {
        Corpus {
            label: label.into(),
            inventories: Arc::new(inventories),
            verses: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn push(&mut self, verse: VerseAlignment) {
        self.index.entry(verse.verse_ref.clone()).or_insert(self.verses.len());
        self.verses.push(Arc::new(verse));
    }

    pub fn len(&self) -> usize {
        self.verses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verses.is_empty()
    }

    /// Verses in file order, duplicates included.
    pub fn verses(&self) -> impl Iterator<Item = &VerseAlignment> {
        self.verses.iter().map(|v| v.as_ref())
    }

    pub fn book_order(&self) -> &BookOrder {
        &self.inventories.book_order
    }

    /// First verse block with this reference.
    pub fn get(&self, verse_ref: &VerseRef) -> Option<&VerseAlignment> {
        self.index.get(verse_ref).map(|&i| self.verses[i].as_ref())
    }

    pub fn get_shared(&self, verse_ref: &VerseRef) -> Option<Arc<VerseAlignment>> {
        self.index.get(verse_ref).map(|&i| Arc::clone(&self.verses[i]))
    }

    /// Replaces the verse with the same reference, returning false when the
    /// corpus has no such verse.
    pub fn replace(&mut self, verse: VerseAlignment) -> bool {
        match self.index.get(&verse.verse_ref) {
            Some(&i) => {
                self.verses[i] = Arc::new(verse);
                true
            }
            None => false,
        }
    }

    /// Distinct references in canonical book order.
    pub fn canonical_refs(&self) -> Vec<VerseRef> {
        let mut refs: Vec<VerseRef> = self.index.keys().cloned().collect();
        let order = self.book_order();
        refs.sort_by(|a, b| order.cmp_refs(a, b));
        refs
    }

    /// Distinct verses in canonical order.
    pub fn canonical_verses(&self) -> Vec<&VerseAlignment> {
        self.canonical_refs().iter().filter_map(|r| self.get(r)).collect()
    }

    /// Books present, in canonical order.
    pub fn books(&self) -> Vec<String> {
        let mut books: Vec<String> = Vec::new();
        for r in self.canonical_refs() {
            if books.last() != Some(&r.book) {
                books.push(r.book);
            }
        }
        books
    }

    /// The verse `offset` steps away from `from` in canonical order.
    pub fn offset_verse(&self, from: &VerseRef, offset: i32) -> Option<&VerseAlignment> {
        let refs = self.canonical_refs();
        let at = refs.iter().position(|r| r == from)? as i64 + offset as i64;
        usize::try_from(at).ok().and_then(|i| refs.get(i)).and_then(|r| self.get(r))
    }
}
