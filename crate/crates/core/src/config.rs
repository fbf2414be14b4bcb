//! `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. A value may be
//! double-quoted to keep surrounding whitespace; quoted values understand
//! the escapes `\t`, `\n`, `\\` and `\"`.

use crate::error::Error;

pub fn parse_key_values(text: &str) -> Result<Vec<(usize, String, String)>, Error> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: &str| Error::Config { line: i + 1, reason: reason.to_string() };
        let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key = value`"))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(err("empty key"));
        }
        let value = value.trim();
        let value = match value.strip_prefix('"') {
            Some(quoted) => unescape(quoted.strip_suffix('"').ok_or_else(|| err("unterminated quote"))?)
                .ok_or_else(|| err("bad escape"))?,
            None => value.to_string(),
        };
        pairs.push((i + 1, key.to_string(), value));
    }
    Ok(pairs)
}

fn unescape(s: &str) -> Option<String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        out.push(match chars.next()? {
            't' => '\t',
            'n' => '\n',
            '\\' => '\\',
            '"' => '"',
            _ => return None,
        });
    }
    Some(out)
}

pub fn parse_bool(line: usize, value: &str) -> Result<bool, Error> {
    match value {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(Error::Config { line, reason: format!("expected a boolean, got `{value}`") }),
    }
}
