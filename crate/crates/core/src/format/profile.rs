use crate::config::{parse_bool, parse_key_values};
use crate::error::Error;

/// Number of columns: verse, token ID, linked IDs, lemma, morphology,
/// word form, transliteration.
pub const COLUMNS: usize = 7;

pub const HEADER: [&str; COLUMNS] =
    ["verse", "token ID", "linked IDs", "lemma", "morphology", "word form", "transliteration"];

/// Surface-syntax choices of the column format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatProfile {
    pub separator: char,
    /// Literal suffix on a word form marking a following space.
    pub trailing_marker: String,
    /// Accept cross-verse links, unknown extractors, comments and
    /// interleaved rows.
    pub lenient: bool,
}

impl Default for FormatProfile {
    fn default() -> Self {
        FormatProfile { separator: '\t', trailing_marker: " _␣".to_string(), lenient: false }
    }
}

impl FormatProfile {
    pub fn lenient() -> Self {
        FormatProfile { lenient: true, ..Default::default() }
    }

    /// Reads a profile file (`separator`, `marker`, `mode = strict|lenient`),
    /// starting from the defaults.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut profile = FormatProfile::default();
        for (line, key, value) in parse_key_values(text)? {
            let err = |reason: String| Error::Config { line, reason };
            match key.as_str() {
                "separator" => {
                    let mut chars = value.chars();
                    profile.separator = match (chars.next(), chars.next()) {
                        (Some(c), None) => c,
                        _ => return Err(err("separator must be one character".into())),
                    };
                }
                "marker" | "trailing_marker" => {
                    if value.is_empty() {
                        return Err(err("marker must not be empty".into()));
                    }
                    profile.trailing_marker = value;
                }
                "mode" => {
                    profile.lenient = match value.as_str() {
                        "strict" => false,
                        "lenient" => true,
                        other => return Err(err(format!("unknown mode `{other}`"))),
                    }
                }
                "lenient" => profile.lenient = parse_bool(line, &value)?,
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        if profile.trailing_marker.contains(profile.separator) {
            return Err(Error::Config { line: 0, reason: "marker contains the separator".into() });
        }
        Ok(profile)
    }

    pub fn render(&self) -> String {
        let escape = |s: &str| s.replace('\\', "\\\\").replace('\t', "\\t").replace('"', "\\\"");
        format!(
            "separator = \"{}\"\nmarker = \"{}\"\nmode = {}\n",
            escape(&self.separator.to_string()),
            escape(&self.trailing_marker),
            if self.lenient { "lenient" } else { "strict" }
        )
    }
}
