use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::harmonize::{harmonize, morphology_discrepancy, Discrepancy, Location};
use super::layers::PrefixInventory;
use super::segment::SegmentedWord;
use crate::error::Error;

/// One line of segmented-word interchange:
/// `verse<TAB>word index<TAB>segmented form[<TAB>lemma/lemma/...]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterchangeWord {
    pub location: Location,
    pub form: SegmentedWord,
    pub lemmas: Option<Vec<String>>,
}

pub fn parse_interchange(text: &str) -> Result<Vec<InterchangeWord>, Error> {
    let mut words = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::MalformedInterchange { line, reason };
        let cols: Vec<&str> = raw.split('\t').collect();
        if !(3..=4).contains(&cols.len()) {
            return Err(bad(format!("expected 3 or 4 columns, found {}", cols.len())));
        }
        let verse = cols[0].parse().map_err(|e: Error| bad(e.to_string()))?;
        let word = cols[1]
            .parse::<u32>()
            .ok()
            .filter(|&w| w > 0)
            .ok_or_else(|| bad(format!("bad word index `{}`", cols[1])))?;
        let form = cols[2].trim_end().parse().map_err(|e: Error| bad(e.to_string()))?;
        let lemmas = cols.get(3).map(|l| l.split('/').map(str::to_string).collect());
        words.push(InterchangeWord { location: Location { verse, word }, form, lemmas });
    }
    Ok(words)
}

pub fn render_interchange(words: &[InterchangeWord]) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&format!("{}\t{}\t{}", w.location.verse, w.location.word, w.form));
        if let Some(lemmas) = &w.lemmas {
            out.push('\t');
            out.push_str(&lemmas.join("/"));
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyncReport {
    /// Unified words in the order of the first input.
    pub unified: Vec<InterchangeWord>,
    pub discrepancies: Vec<Discrepancy>,
}

/// Pairs the words of two inputs by location and harmonizes each pair.
/// Lemma lists, when given, are checked against the unified segmentation.
pub fn sync_words(
    a: &[InterchangeWord],
    b: &[InterchangeWord],
    prefixes: &PrefixInventory,
) -> Result<SyncReport, Error> {
    let by_location: HashMap<&Location, &InterchangeWord> = b.iter().map(|w| (&w.location, w)).collect();
    let in_a: HashSet<&Location> = a.iter().map(|w| &w.location).collect();
    if let Some(extra) = b.iter().find(|w| !in_a.contains(&w.location)) {
        return Err(Error::UnpairedWord(extra.location.to_string()));
    }
    let pairs: Vec<(&InterchangeWord, &InterchangeWord)> = a
        .iter()
        .map(|wa| {
            by_location
                .get(&wa.location)
                .map(|&wb| (wa, wb))
                .ok_or_else(|| Error::UnpairedWord(wa.location.to_string()))
        })
        .collect::<Result<_, _>>()?;

    let results: Vec<(InterchangeWord, Vec<Discrepancy>)> = pairs
        .par_iter()
        .map(|(wa, wb)| {
            let h = harmonize(&wa.form, &wb.form, &wa.location, prefixes)?;
            let mut found = h.discrepancies;
            for lemmas in [&wa.lemmas, &wb.lemmas].into_iter().flatten() {
                found.extend(morphology_discrepancy(&h.unified, lemmas.len(), &wa.location));
            }
            let lemmas = wa.lemmas.clone().or_else(|| wb.lemmas.clone());
            Ok((InterchangeWord { location: wa.location.clone(), form: h.unified, lemmas }, found))
        })
        .collect::<Result<_, Error>>()?;

    let mut report = SyncReport { unified: Vec::with_capacity(results.len()), discrepancies: Vec::new() };
    for (word, found) in results {
        report.unified.push(word);
        report.discrepancies.extend(found);
    }
    Ok(report)
}

pub const REPORT_HEADER: &str = "layer\tverse\tword\tkind\tdescription";

pub fn render_report_tsv(discrepancies: &[Discrepancy]) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for d in discrepancies {
        out.push_str(&d.to_tsv());
        out.push('\n');
    }
    out
}
