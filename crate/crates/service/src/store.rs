use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, MutexGuard};

use helfi_core::concord::{build_index, ConcordanceIndex};
use helfi_core::format::{
    parse_corpus_bytes, parse_verse_block, serialize_corpus, serialize_verse, split_lines, FormatProfile, ParseOptions,
};
use helfi_core::model::{Corpus, Inventories, TargetLemma, VerseAlignment, VerseRef};
use helfi_core::validate::rules::{C3_CROSS_VERSE, F2_FIELD, F3_LAYOUT, F5_EXTENSION, R1_DANGLING_LINK};
use helfi_core::validate::{validate_corpus, validate_verse, RuleConfig, ValidationSummary};
use helfi_core::{Diagnostic, Severity};
use serde::Serialize;

use crate::edit::{apply_batch, Edit};
use crate::error::ServiceError;
use crate::save::{atomic_write, write_all, Writer};

/// Format profile, rule configuration and inventories of an open corpus.
#[derive(Debug, Clone, Default)]
pub struct StoreOptions {
    pub profile: FormatProfile,
    pub rules: RuleConfig,
    pub inventories: Inventories,
}

/// An immutable corpus state. Never mutated once published.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub corpus: Arc<Corpus>,
    pub revision: u64,
}

#[derive(Debug, Clone)]
struct Step {
    verse: VerseRef,
    forward: Vec<Edit>,
    inverse: Vec<Edit>,
    /// Verse state right after the step, to detect interleaved edits.
    after: Arc<VerseAlignment>,
}

/// Per-client undo history.
#[derive(Debug, Clone, Default)]
pub struct Session {
    undo: Vec<Step>,
    redo: Vec<Step>,
    pub base_revision: u64,
}

impl Session {
    pub fn undo_depth(&self) -> usize {
        self.undo.len()
    }

    pub fn redo_depth(&self) -> usize {
        self.redo.len()
    }
}

struct State {
    snapshot: Snapshot,
    sessions: HashMap<String, Session>,
    path: Option<PathBuf>,
    saved_revision: u64,
    concordance: Option<(u64, Arc<ConcordanceIndex>)>,
}

/// Outcome of an edit, undo or redo.
#[derive(Debug, Clone, Serialize)]
pub struct Applied {
    pub revision: u64,
    #[serde(rename = "ref")]
    pub verse_ref: VerseRef,
    pub undo_depth: usize,
    pub redo_depth: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Neighbors {
    pub prev: VerseRef,
    pub next: VerseRef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchKind {
    Lemma,
    Surface,
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Source,
    Target,
}

/// A search match: a source token (`index` into `source`) or a target row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hit {
    pub verse: VerseRef,
    pub side: Side,
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<helfi_core::model::TokenId>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub label: String,
    pub path: Option<PathBuf>,
    pub books: Vec<String>,
    pub verses: usize,
    pub revision: u64,
    pub saved_revision: u64,
    pub lenient: bool,
    pub extractors: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Saved {
    pub path: PathBuf,
    pub revision: u64,
    pub bytes: usize,
    pub diagnostics: Vec<Diagnostic>,
}

/// The open corpus with its revision counter and sessions. Writes are
/// serialized through one lock; readers get shared snapshots.
pub struct Store {
    state: Mutex<State>,
    options: StoreOptions,
    /// Canonical verse order; edits never add or remove verses.
    order: Vec<VerseRef>,
    writer: Box<Writer>,
}

impl std::fmt::Debug for Store {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Store").field("options", &self.options).finish_non_exhaustive()
    }
}

impl Store {
    pub fn new(corpus: Corpus, options: StoreOptions) -> Self {
        let order = corpus.canonical_refs();
        Store {
            state: Mutex::new(State {
                snapshot: Snapshot { corpus: Arc::new(corpus), revision: 0 },
                sessions: HashMap::new(),
                path: None,
                saved_revision: 0,
                concordance: None,
            }),
            options,
            order,
            writer: Box::new(write_all),
        }
    }

    /// Parses `bytes`; refuses input with error-severity parse diagnostics
    /// since saving would drop the rejected verses.
    pub fn from_bytes(bytes: &[u8], label: &str, options: StoreOptions) -> Result<(Self, Vec<Diagnostic>), ServiceError> {
        let parse = ParseOptions {
            label: label.to_string(),
            profile: options.profile.clone(),
            inventories: options.inventories.clone(),
        };
        let (corpus, diagnostics) = parse_corpus_bytes(bytes, &parse);
        if diagnostics.iter().any(Diagnostic::is_error) {
            return Err(ServiceError::ValidationFailed(diagnostics));
        }
        Ok((Store::new(corpus, options), diagnostics))
    }

    pub fn open(path: &Path, options: StoreOptions) -> Result<(Self, Vec<Diagnostic>), ServiceError> {
        let bytes = std::fs::read(path)?;
        let (store, diagnostics) = Store::from_bytes(&bytes, &path.display().to_string(), options)?;
        store.lock().path = Some(path.to_path_buf());
        Ok((store, diagnostics))
    }

    /// Replaces the function that fills the temp file on save.
    pub fn with_writer(mut self, writer: Box<Writer>) -> Self {
        self.writer = writer;
        self
    }

    pub fn options(&self) -> &StoreOptions {
        &self.options
    }

    fn lock(&self) -> MutexGuard<'_, State> {
        self.state.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
    }

    pub fn snapshot(&self) -> Snapshot {
        self.lock().snapshot.clone()
    }

    pub fn revision(&self) -> u64 {
        self.lock().snapshot.revision
    }

    pub fn session(&self, id: &str) -> Session {
        self.lock().sessions.get(id).cloned().unwrap_or_default()
    }

    pub fn meta(&self) -> Meta {
        let state = self.lock();
        let corpus = &state.snapshot.corpus;
        Meta {
            label: corpus.label.clone(),
            path: state.path.clone(),
            books: corpus.books(),
            verses: self.order.len(),
            revision: state.snapshot.revision,
            saved_revision: state.saved_revision,
            lenient: self.options.profile.lenient,
            extractors: corpus.inventories.extractors.iter().map(str::to_string).collect(),
        }
    }

    pub fn get_verse(&self, verse_ref: &VerseRef) -> Result<(Arc<VerseAlignment>, u64), ServiceError> {
        let snapshot = self.snapshot();
        let verse = snapshot
            .corpus
            .get_shared(verse_ref)
            .ok_or_else(|| ServiceError::UnknownVerse(verse_ref.to_string()))?;
        Ok((verse, snapshot.revision))
    }

    /// Adjacent verses in canonical order, clamped at the corpus ends.
    pub fn neighbors(&self, verse_ref: &VerseRef) -> Result<Neighbors, ServiceError> {
        let at = self
            .order
            .iter()
            .position(|r| r == verse_ref)
            .ok_or_else(|| ServiceError::UnknownVerse(verse_ref.to_string()))?;
        Ok(Neighbors {
            prev: self.order[at.saturating_sub(1)].clone(),
            next: self.order[(at + 1).min(self.order.len() - 1)].clone(),
        })
    }

    /// Applies one batch as one undo step.
    pub fn apply_edits(
        &self,
        session: &str,
        verse_ref: &VerseRef,
        base_revision: u64,
        edits: &[Edit],
    ) -> Result<Applied, ServiceError> {
        let mut state = self.lock();
        let current = state.snapshot.revision;
        if base_revision != current {
            return Err(ServiceError::RevisionConflict { base: base_revision, current });
        }
        let corpus = Arc::clone(&state.snapshot.corpus);
        let before = corpus.get(verse_ref).ok_or_else(|| ServiceError::UnknownVerse(verse_ref.to_string()))?;
        let (after, inverse) = apply_batch(before, edits)?;
        self.check_invariants(&corpus, before, &after)?;

        let after = Arc::new(after);
        let step = Step { verse: verse_ref.clone(), forward: edits.to_vec(), inverse, after: Arc::clone(&after) };
        publish(&mut state, &corpus, after.as_ref().clone());
        let revision = state.snapshot.revision;
        let s = state.sessions.entry(session.to_string()).or_default();
        s.undo.push(step);
        s.redo.clear();
        s.base_revision = revision;
        Ok(applied(s, revision, verse_ref))
    }

    pub fn undo(&self, session: &str) -> Result<Applied, ServiceError> {
        self.replay(session, true)
    }

    pub fn redo(&self, session: &str) -> Result<Applied, ServiceError> {
        self.replay(session, false)
    }

    fn replay(&self, session: &str, undo: bool) -> Result<Applied, ServiceError> {
        let mut state = self.lock();
        let s = state.sessions.entry(session.to_string()).or_default();
        let step = match if undo { s.undo.last() } else { s.redo.last() } {
            Some(step) => step.clone(),
            None if undo => return Err(ServiceError::NothingToUndo),
            None => return Err(ServiceError::NothingToRedo),
        };
        let corpus = Arc::clone(&state.snapshot.corpus);
        let current = corpus.get(&step.verse).ok_or_else(|| ServiceError::UnknownVerse(step.verse.to_string()))?;

        let stale = || ServiceError::StaleHistory { verse: step.verse.clone() };
        let (next, step) = if undo {
            if current != step.after.as_ref() {
                return Err(stale());
            }
            let (next, _) = apply_batch(current, &step.inverse).map_err(|_| stale())?;
            (next, step)
        } else {
            let (next, inverse) = apply_batch(current, &step.forward).map_err(|_| stale())?;
            let after = Arc::new(next.clone());
            (next, Step { inverse, after, ..step })
        };

        let verse_ref = step.verse.clone();
        let after = Arc::new(next);
        publish(&mut state, &corpus, after.as_ref().clone());
        let revision = state.snapshot.revision;
        let s = state.sessions.get_mut(session).expect("session exists");
        if undo {
            s.undo.pop();
            // redo must detect edits made to the restored state
            s.redo.push(Step { after, ..step });
        } else {
            s.redo.pop();
            s.undo.push(step);
        }
        s.base_revision = revision;
        Ok(applied(s, revision, &verse_ref))
    }

    fn check_invariants(
        &self,
        corpus: &Corpus,
        before: &VerseAlignment,
        after: &VerseAlignment,
    ) -> Result<(), ServiceError> {
        let violation = |rule: &'static str, diagnostics: Vec<Diagnostic>| {
            Err(ServiceError::InvariantViolation { rule, diagnostics })
        };
        let at = |rule, message: String| vec![Diagnostic::error(rule, message).at_verse(&after.verse_ref)];

        if let Err(e) = after.resolve_links() {
            return violation(R1_DANGLING_LINK, at(R1_DANGLING_LINK, e.to_string()));
        }
        let lenient = self.options.profile.lenient;
        for (position, row) in after.target.iter().enumerate() {
            if row.links.has_cross_verse() && !lenient && !before.target[position].links.has_cross_verse() {
                return violation(F5_EXTENSION, at(F5_EXTENSION, format!("target row {position}: cross-verse links need the lenient profile")));
            }
            if let TargetLemma::Extractor(kind) = &row.lemma {
                if !lenient && !corpus.inventories.extractors.contains(kind) {
                    return violation(F5_EXTENSION, at(F5_EXTENSION, format!("target row {position}: unknown extractor %{kind}")));
                }
            }
            for link in row.links.links().iter().filter(|l| l.is_cross_verse()) {
                let offset = link.verse_offset.unwrap_or_default();
                let resolves = corpus
                    .offset_verse(&after.verse_ref, offset)
                    .is_some_and(|v| v.source_token(&link.target).is_some());
                if !resolves {
                    return violation(C3_CROSS_VERSE, at(C3_CROSS_VERSE, format!("target row {position}: link {link} does not resolve")));
                }
            }
        }

        // the edited verse must survive a trip through the file format
        let profile = &self.options.profile;
        let text = serialize_verse(after, profile)
            .map_err(|e| ServiceError::InvariantViolation { rule: F2_FIELD, diagnostics: at(F2_FIELD, e.to_string()) })?;
        match parse_verse_block(&split_lines(text.as_bytes()), profile, &corpus.inventories.extractors) {
            Ok((parsed, _)) if parsed == *after => {}
            Ok(_) => return violation(F3_LAYOUT, at(F3_LAYOUT, "edited verse does not re-read as written".into())),
            Err(mut diagnostics) => {
                diagnostics.retain(Diagnostic::is_error);
                for d in &mut diagnostics {
                    d.line = None;
                }
                return violation(diagnostics[0].rule, diagnostics);
            }
        }

        // rules already failing before the edit do not block it
        let config = &self.options.rules;
        let errors = |v: &VerseAlignment| -> Vec<Diagnostic> {
            validate_verse(v, &corpus.inventories, config).into_iter().filter(|d| d.severity == Severity::Error).collect()
        };
        let old = errors(before);
        let new: Vec<Diagnostic> = errors(after);
        for d in &new {
            let count = |list: &[Diagnostic]| list.iter().filter(|x| x.rule == d.rule).count();
            if count(&new) > count(&old) {
                let rule = d.rule;
                return violation(rule, new.into_iter().filter(|x| x.rule == rule).collect());
            }
        }
        Ok(())
    }

    /// Validates the whole corpus, one book, or one verse.
    pub fn validate(&self, scope: Option<&str>) -> Result<ValidationSummary, ServiceError> {
        let corpus = self.snapshot().corpus;
        match scope.filter(|s| !s.is_empty() && *s != "corpus") {
            None => Ok(validate_corpus(&corpus, &self.options.rules)),
            Some(s) if s.contains(':') => {
                let verse_ref: VerseRef = s.parse()?;
                let verse = corpus.get(&verse_ref).ok_or_else(|| ServiceError::UnknownVerse(s.to_string()))?;
                let mut one = Corpus::new(corpus.label.clone(), corpus.inventories.as_ref().clone());
                one.push(verse.clone());
                let mut summary = validate_corpus(&one, &self.options.rules);
                // cross-verse targets live outside the one-verse corpus
                summary.diagnostics.retain(|d| d.rule != C3_CROSS_VERSE);
                Ok(summary)
            }
            Some(book) => {
                let mut part = Corpus::new(corpus.label.clone(), corpus.inventories.as_ref().clone());
                for v in corpus.verses().filter(|v| v.verse_ref.book == book) {
                    part.push(v.clone());
                }
                if part.is_empty() {
                    return Err(ServiceError::UnknownVerse(book.to_string()));
                }
                Ok(validate_corpus(&part, &self.options.rules))
            }
        }
    }

    /// Matches in canonical order. Lemma and surface queries compare whole
    /// strings on both sides; strong queries match any numeric slot.
    pub fn search(&self, query: &str, kind: SearchKind) -> Vec<Hit> {
        let corpus = self.snapshot().corpus;
        let mut hits = Vec::new();
        for verse_ref in &self.order {
            let Some(v) = corpus.get(verse_ref) else { continue };
            for (index, t) in v.source.iter().enumerate() {
                let matched = match kind {
                    SearchKind::Lemma => t.lemma.lemma.as_deref() == Some(query),
                    SearchKind::Surface => t.surface == query,
                    SearchKind::Strong => t.lemma.strong.is_some_and(|s| s.matches_query(query)),
                };
                if matched {
                    hits.push(Hit { verse: verse_ref.clone(), side: Side::Source, index, id: Some(t.id) });
                }
            }
            for (index, row) in v.target.iter().enumerate() {
                let matched = match kind {
                    SearchKind::Lemma => row.lemma.text() == Some(query),
                    SearchKind::Surface => row.surface == query,
                    SearchKind::Strong => false,
                };
                if matched {
                    hits.push(Hit { verse: verse_ref.clone(), side: Side::Target, index, id: None });
                }
            }
        }
        hits
    }

    /// Concordance index of the current revision, rebuilt lazily.
    pub fn concordance(&self) -> Result<Arc<ConcordanceIndex>, ServiceError> {
        let snapshot = {
            let state = self.lock();
            if let Some((rev, index)) = &state.concordance {
                if *rev == state.snapshot.revision {
                    return Ok(Arc::clone(index));
                }
            }
            state.snapshot.clone()
        };
        let index = Arc::new(build_index(&snapshot.corpus)?);
        let mut state = self.lock();
        if state.snapshot.revision == snapshot.revision {
            state.concordance = Some((snapshot.revision, Arc::clone(&index)));
        }
        Ok(index)
    }

    /// Validates, then atomically writes the current revision to `path` or
    /// to the file the corpus was opened from.
    pub fn save(&self, path: Option<&Path>, force: bool) -> Result<Saved, ServiceError> {
        let (snapshot, target) = {
            let state = self.lock();
            let target = path.map(Path::to_path_buf).or_else(|| state.path.clone()).ok_or(ServiceError::NoPath)?;
            (state.snapshot.clone(), target)
        };
        let summary = validate_corpus(&snapshot.corpus, &self.options.rules);
        if summary.error_count() > 0 && !force {
            return Err(ServiceError::ValidationFailed(summary.diagnostics));
        }
        let text = serialize_corpus(&snapshot.corpus, &self.options.profile)?;
        atomic_write(&target, text.as_bytes(), self.writer.as_ref())?;

        let mut state = self.lock();
        state.saved_revision = state.saved_revision.max(snapshot.revision);
        if path.is_some() && state.path.is_none() {
            state.path = Some(target.clone());
        }
        Ok(Saved { path: target, revision: snapshot.revision, bytes: text.len(), diagnostics: summary.diagnostics })
    }
}

fn publish(state: &mut State, base: &Corpus, verse: VerseAlignment) {
    let mut corpus = base.clone();
    corpus.replace(verse);
    state.snapshot = Snapshot { corpus: Arc::new(corpus), revision: state.snapshot.revision + 1 };
}

fn applied(s: &Session, revision: u64, verse_ref: &VerseRef) -> Applied {
    Applied { revision, verse_ref: verse_ref.clone(), undo_depth: s.undo.len(), redo_depth: s.redo.len() }
}
