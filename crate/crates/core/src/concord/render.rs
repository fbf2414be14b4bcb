use super::index::{HeadwordEntry, Occurrence};

/// Width and keyword markers of KWIC lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KwicLayout {
    pub width: usize,
    pub open: String,
    pub close: String,
}

impl Default for KwicLayout {
    fn default() -> Self {
        KwicLayout { width: 60, open: "[".into(), close: "]".into() }
    }
}

/// `verse` followed by a window of `width` characters in which the
/// keyword's first character sits at column `(width - 1) / 2`. The window
/// shifts left when the marked keyword would not fit.
pub fn kwic_line(occ: &Occurrence, layout: &KwicLayout) -> String {
    let chars: Vec<char> = occ.context.chars().collect();
    let keyword: String = chars[occ.span.clone()].iter().collect();
    let marked = format!("{}{keyword}{}", layout.open, layout.close);
    let m = marked.chars().count();
    let width = layout.width.max(m);
    let center = (width - 1) / 2;
    let start = center.saturating_sub(layout.open.chars().count()).min(width - m);

    let before = &chars[..occ.span.start];
    let left: String = before[before.len().saturating_sub(start)..].iter().collect();
    let after = &chars[occ.span.end..];
    let right: String = after[..after.len().min(width - start - m)].iter().collect();

    let line = format!("{} {left:>start$}{marked}{right}", occ.verse);
    line.trim_end().to_string()
}

/// Headword line, then per group a Strong header and the KWIC lines.
pub fn render_printable(entries: &[HeadwordEntry], layout: &KwicLayout) -> String {
    let mut out = String::new();
    for entry in entries {
        out.push_str(&entry.headword);
        out.push('\n');
        for group in &entry.groups {
            let strong = group.strong.map_or("-".to_string(), |s| s.to_string());
            out.push_str(&format!("  {strong} ({})\n", group.count));
            for occ in &group.occurrences {
                out.push_str("    ");
                out.push_str(&kwic_line(occ, layout));
                out.push('\n');
            }
        }
    }
    out
}

pub fn render_tsv(entries: &[HeadwordEntry], layout: &KwicLayout) -> String {
    let mut out = String::from("headword\tstrong\tverse\tkwic\n");
    for entry in entries {
        for group in &entry.groups {
            let strong = group.strong.map_or("-".to_string(), |s| s.to_string());
            for occ in &group.occurrences {
                let kwic = kwic_line(occ, layout);
                let kwic = kwic.split_once(' ').map_or("", |(_, rest)| rest).replace('\t', " ");
                out.push_str(&format!("{}\t{strong}\t{}\t{kwic}\n", entry.headword, occ.verse));
            }
        }
    }
    out
}
