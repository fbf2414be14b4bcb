use std::borrow::Cow;
use std::io::{self, Read};

use rayon::prelude::*;

use super::profile::{FormatProfile, COLUMNS, HEADER};
use crate::diagnostic::{Diagnostic, Severity};
use crate::error::Error;
use crate::model::{
    Corpus, ExtractorInventory, Inventories, LinkField, MorphTags, SourceLemma, SourceToken, TargetLemma,
    TargetToken, TokenId, VerseAlignment, VerseRef,
};
use crate::validate::rules::{F1_COLUMNS, F2_FIELD, F3_LAYOUT, F4_ORDER, F5_EXTENSION};

pub fn parse_token_id(text: &str) -> Result<TokenId, Error> {
    text.parse()
}

pub fn parse_link_field(text: &str) -> Result<LinkField, Error> {
    text.parse()
}

pub fn parse_source_lemma(text: &str) -> Result<SourceLemma, Error> {
    text.parse()
}

/// Parses a target lemma; an extractor outside the inventory is an error
/// under a strict profile and accepted under a lenient one.
pub fn parse_target_lemma(
    text: &str,
    extractors: &ExtractorInventory,
    profile: &FormatProfile,
) -> Result<TargetLemma, Error> {
    let lemma: TargetLemma = text.parse()?;
    if let TargetLemma::Extractor(kind) = &lemma {
        if !profile.lenient && !extractors.contains(kind) {
            return Err(Error::UnknownExtractor(kind.clone()));
        }
    }
    Ok(lemma)
}

/// One physical line of input.
#[derive(Debug, Clone)]
pub struct Line<'a> {
    pub number: usize,
    pub text: Cow<'a, str>,
    pub valid_utf8: bool,
}

impl<'a> Line<'a> {
    pub fn new(number: usize, text: &'a str) -> Self {
        Line { number, text: Cow::Borrowed(text), valid_utf8: true }
    }
}

enum Row {
    Source(SourceToken),
    Target(TargetToken),
}

fn field_error(line: usize, err: impl ToString) -> Diagnostic {
    Diagnostic::error(F2_FIELD, err.to_string()).at_line(line)
}

fn parse_row(
    line: &Line<'_>,
    profile: &FormatProfile,
    extractors: &ExtractorInventory,
    warnings: &mut Vec<Diagnostic>,
) -> Result<(VerseRef, Row), Diagnostic> {
    let n = line.number;
    if !line.valid_utf8 {
        return Err(Diagnostic::error(F2_FIELD, "line is not valid UTF-8").at_line(n));
    }
    let cols: Vec<&str> = line.text.split(profile.separator).collect();
    if cols.len() != COLUMNS {
        return Err(Diagnostic::error(
            F1_COLUMNS,
            format!("expected {COLUMNS} columns, found {}", cols.len()),
        )
        .at_line(n));
    }
    let verse: VerseRef = cols[0].parse().map_err(|e| field_error(n, e))?;
    let layout = |msg: &str| Diagnostic::error(F3_LAYOUT, msg).at_verse(&verse).at_line(n);
    let morph: MorphTags = cols[4].parse().map_err(|e| field_error(n, e).at_verse(&verse))?;

    if !cols[1].is_empty() {
        if !cols[2].is_empty() {
            return Err(layout("source row with a linked-IDs value"));
        }
        let id: TokenId = cols[1].parse().map_err(|e| field_error(n, e).at_verse(&verse))?;
        let lemma: SourceLemma = cols[3].parse().map_err(|e| field_error(n, e).at_verse(&verse))?;
        if cols[5].is_empty() {
            return Err(layout("source row without a word form"));
        }
        let token = SourceToken {
            id,
            lemma,
            morph,
            surface: cols[5].to_string(),
            translit: cols[6].to_string(),
        };
        return Ok((verse, Row::Source(token)));
    }

    if cols[2].is_empty() {
        return Err(layout("row has neither a token ID nor linked IDs"));
    }
    if !cols[6].is_empty() {
        return Err(layout("target row with a transliteration"));
    }
    let links: LinkField = cols[2].parse().map_err(|e| field_error(n, e).at_verse(&verse))?;
    if links.has_cross_verse() && !profile.lenient {
        return Err(Diagnostic::error(F5_EXTENSION, Error::CrossVerseNotAllowed(cols[2].to_string()).to_string())
            .at_verse(&verse)
            .at_line(n));
    }
    let lemma = parse_target_lemma(cols[3], extractors, profile).map_err(|e| match e {
        Error::UnknownExtractor(_) => Diagnostic::error(F5_EXTENSION, e.to_string()).at_verse(&verse).at_line(n),
        other => field_error(n, other).at_verse(&verse),
    })?;
    if let TargetLemma::Extractor(kind) = &lemma {
        if !extractors.contains(kind) {
            warnings.push(
                Diagnostic::warning(F5_EXTENSION, Error::UnknownExtractor(kind.clone()).to_string())
                    .at_verse(&verse)
                    .at_line(n),
            );
        }
    }
    let (surface, trailing_space) = match cols[5].strip_suffix(profile.trailing_marker.as_str()) {
        Some(surface) => (surface, true),
        None => (cols[5], false),
    };
    if surface.is_empty() && (trailing_space || !lemma.is_extractor()) {
        return Err(layout("target row without a word form"));
    }
    let token = TargetToken { links, lemma, morph, surface: surface.to_string(), trailing_space };
    Ok((verse, Row::Target(token)))
}

/// Parses the rows of one verse. On success returns the verse and any
/// warnings; otherwise every error found, each with its line number.
pub fn parse_verse_block(
    lines: &[Line<'_>],
    profile: &FormatProfile,
    extractors: &ExtractorInventory,
) -> Result<(VerseAlignment, Vec<Diagnostic>), Vec<Diagnostic>> {
    if lines.is_empty() {
        return Err(vec![Diagnostic::error(F3_LAYOUT, Error::EmptyBlock.to_string())]);
    }
    let mut diagnostics = Vec::new();
    let mut verse: Option<VerseAlignment> = None;
    for line in lines {
        let (verse_ref, row) = match parse_row(line, profile, extractors, &mut diagnostics) {
            Ok(parsed) => parsed,
            Err(d) => {
                diagnostics.push(d);
                continue;
            }
        };
        let current = verse.get_or_insert_with(|| VerseAlignment::new(verse_ref.clone()));
        if current.verse_ref != verse_ref {
            diagnostics.push(
                Diagnostic::error(F3_LAYOUT, format!("row of {verse_ref} inside the block of {}", current.verse_ref))
                    .at_verse(&current.verse_ref)
                    .at_line(line.number),
            );
            continue;
        }
        match row {
            Row::Source(token) => {
                if !current.target.is_empty() && !profile.lenient {
                    diagnostics.push(
                        Diagnostic::error(F3_LAYOUT, "source row after target rows")
                            .at_verse(&verse_ref)
                            .at_line(line.number),
                    );
                    continue;
                }
                current.source.push(token);
            }
            Row::Target(token) => current.target.push(token),
        }
    }
    let first_line = lines[0].number;
    let rows_ok = !diagnostics.iter().any(Diagnostic::is_error);
    // id order is only meaningful once every row parsed
    if let (true, Some(verse)) = (rows_ok, &verse) {
        let severity = if profile.lenient { Severity::Warning } else { Severity::Error };
        for problem in verse.source_id_problems() {
            diagnostics.push(Diagnostic {
                severity,
                rule: F4_ORDER,
                verse: Some(verse.verse_ref.clone()),
                line: Some(first_line),
                message: problem,
            });
        }
    }
    match verse {
        Some(verse) if !diagnostics.iter().any(Diagnostic::is_error) => Ok((verse, diagnostics)),
        _ => Err(diagnostics),
    }
}

/// Options for corpus ingestion.
#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    pub label: String,
    pub profile: FormatProfile,
    pub inventories: Inventories,
}

/// Splits raw bytes into numbered lines, tolerating invalid UTF-8 and CRLF.
pub fn split_lines(bytes: &[u8]) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    let mut rest = bytes;
    let mut number = 0;
    while !rest.is_empty() {
        number += 1;
        let (raw, tail) = match rest.iter().position(|&b| b == b'\n') {
            Some(i) => (&rest[..i], &rest[i + 1..]),
            None => (rest, &rest[rest.len()..]),
        };
        rest = tail;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let line = match std::str::from_utf8(raw) {
            Ok(text) => Line::new(number, text),
            Err(_) => Line { number, text: String::from_utf8_lossy(raw), valid_utf8: false },
        };
        lines.push(line);
    }
    lines
}

/// Parses a whole corpus stream. Defective verses are dropped and reported;
/// only I/O failures abort.
pub fn parse_corpus<R: Read>(mut reader: R, options: &ParseOptions) -> io::Result<(Corpus, Vec<Diagnostic>)> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    Ok(parse_corpus_bytes(&bytes, options))
}

pub fn parse_corpus_str(text: &str, options: &ParseOptions) -> (Corpus, Vec<Diagnostic>) {
    parse_corpus_bytes(text.as_bytes(), options)
}

pub fn parse_corpus_bytes(bytes: &[u8], options: &ParseOptions) -> (Corpus, Vec<Diagnostic>) {
    let profile = &options.profile;
    let header = HEADER.join(&profile.separator.to_string());
    let mut diagnostics = Vec::new();
    let mut blocks: Vec<Vec<Line<'_>>> = Vec::new();
    let mut block_key: Option<String> = None;

    for line in split_lines(bytes) {
        let text = line.text.as_ref();
        let skippable = text.starts_with('#') || text == header || text.trim().is_empty();
        if skippable {
            if !profile.lenient {
                let what = if text.trim().is_empty() { "blank line" } else { "comment or header line" };
                diagnostics.push(
                    Diagnostic::error(F5_EXTENSION, format!("{what} not allowed by the strict profile"))
                        .at_line(line.number),
                );
            }
            continue;
        }
        let key = text.split(profile.separator).next().unwrap_or_default().to_string();
        if block_key.as_deref() != Some(key.as_str()) {
            blocks.push(Vec::new());
            block_key = Some(key);
        }
        blocks.last_mut().expect("block pushed").push(line);
    }

    let extractors = &options.inventories.extractors;
    let parsed: Vec<_> = blocks
        .par_iter()
        .map(|block| (block[0].number, parse_verse_block(block, profile, extractors)))
        .collect();

    let mut corpus = Corpus::new(options.label.clone(), options.inventories.clone());
    let mut previous: Option<VerseRef> = None;
    for (first_line, result) in parsed {
        match result {
            Ok((verse, warnings)) => {
                diagnostics.extend(warnings);
                if let Some(prev) = &previous {
                    if corpus.book_order().cmp_refs(&verse.verse_ref, prev).is_lt() {
                        diagnostics.push(
                            Diagnostic::warning(F4_ORDER, format!("{} follows {prev}", verse.verse_ref))
                                .at_verse(&verse.verse_ref)
                                .at_line(first_line),
                        );
                    }
                }
                previous = Some(verse.verse_ref.clone());
                corpus.push(verse);
            }
            Err(errors) => diagnostics.extend(errors),
        }
    }
    diagnostics.sort_by_key(|d| d.line.unwrap_or(0));
    (corpus, diagnostics)
}
