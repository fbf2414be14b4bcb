use super::profile::FormatProfile;
use crate::error::Error;
use crate::model::{Corpus, VerseAlignment};

fn push_row(out: &mut String, fields: [&str; 7], profile: &FormatProfile) -> Result<(), Error> {
    for (i, field) in fields.iter().enumerate() {
        if field.contains(profile.separator) || field.contains(['\n', '\r']) {
            return Err(Error::UnencodableField(field.to_string()));
        }
        if i > 0 {
            out.push(profile.separator);
        }
        out.push_str(field);
    }
    out.push('\n');
    Ok(())
}

/// Writes one verse block: source rows, then target rows.
pub fn serialize_verse_into(out: &mut String, verse: &VerseAlignment, profile: &FormatProfile) -> Result<(), Error> {
    let verse_ref = verse.verse_ref.to_string();
    for token in &verse.source {
        push_row(
            out,
            [
                &verse_ref,
                &token.id.to_string(),
                "",
                &token.lemma.to_string(),
                &token.morph.to_string(),
                &token.surface,
                &token.translit,
            ],
            profile,
        )?;
    }
    for row in &verse.target {
        let links = row.links.to_string();
        if row.links.has_cross_verse() && !profile.lenient {
            return Err(Error::CrossVerseNotAllowed(links));
        }
        let mut word_form = row.surface.clone();
        if row.trailing_space {
            word_form.push_str(&profile.trailing_marker);
        }
        push_row(
            out,
            [&verse_ref, "", &links, &row.lemma.to_string(), &row.morph.to_string(), &word_form, ""],
            profile,
        )?;
    }
    Ok(())
}

pub fn serialize_verse(verse: &VerseAlignment, profile: &FormatProfile) -> Result<String, Error> {
    let mut out = String::new();
    serialize_verse_into(&mut out, verse, profile)?;
    Ok(out)
}

/// Writes every verse in corpus (file) order.
pub fn serialize_corpus(corpus: &Corpus, profile: &FormatProfile) -> Result<String, Error> {
    let mut out = String::new();
    for verse in corpus.verses() {
        serialize_verse_into(&mut out, verse, profile)?;
    }
    Ok(out)
}

/// Rewrites a corpus in canonical layout: verses in book order (first
/// occurrence of duplicates kept) and source rows sorted by id.
pub fn canonicalize(corpus: &Corpus) -> Corpus {
    let mut out = Corpus::new(corpus.label.clone(), (*corpus.inventories).clone());
    for verse in corpus.canonical_verses() {
        let mut verse = verse.clone();
        verse.source.sort_by_key(|t| t.id);
        out.push(verse);
    }
    out
}
