#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use helfi_core::format::{parse_corpus_str, ParseOptions};
use helfi_core::model::{
    AlignmentGroup, Corpus, LinkField, LinkKind, LinkRef, MorphTags, SourceLemma, SourceToken, StrongCode,
    TargetLemma, TargetToken, TokenId, VerseAlignment, VerseRef,
};
use helfi_core::sync::{Boundary, DiscrepancyKind, Segment, SegmentedWord, MAQEF};
use helfi_core::validate::rules::*;
use helfi_core::Diagnostic;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn load(name: &str) -> (Corpus, Vec<Diagnostic>) {
    parse_corpus_str(&fixture(name), &ParseOptions::default())
}

pub fn verse(corpus: &Corpus, r: &str) -> VerseAlignment {
    corpus.get(&r.parse().unwrap()).unwrap().clone()
}

/// A random well-formed verse with up to `max_words` source words and
/// `max_rows` target rows. Links may be core or aux, and rows may be
/// NoSource or extractors.
pub fn random_verse(rng: &mut impl Rng, max_words: u32, max_rows: usize) -> VerseAlignment {
    let mut v = VerseAlignment::new(VerseRef::new("gen", rng.gen_range(1..=50), rng.gen_range(1..=40)).unwrap());
    let words = rng.gen_range(0..=max_words);
    for word in 1..=words {
        let subs = if rng.gen_bool(0.3) { rng.gen_range(2..=3) } else { 1 };
        for s in 0..subs {
            let id = if subs == 1 { TokenId::word(word) } else { TokenId::lettered(word, (b'a' + s) as char) };
            let strong = match rng.gen_range(0..4) {
                0 => StrongCode::Particle(['b', 'd', 'l', 'c'][rng.gen_range(0..4)]),
                1 => StrongCode::Compound { lemma: rng.gen_range(1..6000), parsing: rng.gen_range(5000..6000) },
                _ => StrongCode::Numeric {
                    number: rng.gen_range(1..9000),
                    suffix: rng.gen_bool(0.2).then_some('a'),
                },
            };
            let lemma = SourceLemma {
                lemma: rng.gen_bool(0.5).then(|| "λόγος".to_string()),
                strong: Some(strong),
                concord: rng.gen_bool(0.8).then(|| rng.gen_range(1..9999)),
            };
            v.source.push(SourceToken {
                id,
                lemma,
                morph: "N.MASC.SG".parse().unwrap(),
                surface: "דָּבָר".into(),
                translit: if rng.gen_bool(0.8) { "dābār".into() } else { String::new() },
            });
        }
    }
    let ids: Vec<TokenId> = v.source.iter().map(|t| t.id).collect();
    let rows = rng.gen_range(0..=max_rows);
    for _ in 0..rows {
        let mut links: Vec<LinkRef> = Vec::new();
        if !ids.is_empty() && rng.gen_bool(0.85) {
            for _ in 0..rng.gen_range(1..=3) {
                let id = ids[rng.gen_range(0..ids.len())];
                if links.iter().all(|l| l.target != id) {
                    links.push(if rng.gen_bool(0.7) { LinkRef::core(id) } else { LinkRef::aux(id) });
                }
            }
        }
        let extractor = !links.is_empty() && rng.gen_bool(0.1);
        let (lemma, surface) = if extractor {
            (TargetLemma::Extractor("case".into()), String::new())
        } else if links.is_empty() {
            (TargetLemma::Periphery(",".into()), ",".into())
        } else if rng.gen_bool(0.2) {
            (TargetLemma::Periphery("olla".into()), "oli".into())
        } else {
            (TargetLemma::Plain("sana".into()), "sanan".into())
        };
        v.target.push(TargetToken {
            links: if links.is_empty() { LinkField::NoSource } else { LinkField::Links(links) },
            lemma,
            morph: MorphTags::new(["SG", "GEN"]).unwrap(),
            trailing_space: !extractor && rng.gen_bool(0.8),
            surface,
        });
    }
    v
}

pub fn core_links(v: &VerseAlignment) -> Vec<(usize, TokenId)> {
    v.links().filter(|(_, l)| l.kind == LinkKind::Core).map(|(p, l)| (p, l.target)).collect()
}

/// Components by Warshall transitive closure over the bipartite core-link
/// graph; no union-find involved.
#[allow(clippy::needless_range_loop)]
pub fn closure_groups(v: &VerseAlignment) -> Vec<AlignmentGroup> {
    let ns = v.source.len();
    let n = ns + v.target.len();
    let mut reach = vec![vec![false; n]; n];
    for (pos, id) in core_links(v) {
        let s = v.source.iter().position(|t| t.id == id).unwrap();
        reach[s][ns + pos] = true;
        reach[ns + pos][s] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut groups = Vec::new();
    for start in 0..ns {
        if seen[start] || !reach[start].iter().any(|&r| r) {
            continue;
        }
        let mut g = AlignmentGroup { source_ids: BTreeSet::new(), target_positions: BTreeSet::new() };
        for node in (0..n).filter(|&j| j == start || reach[start][j]) {
            seen[node] = true;
            if node < ns {
                g.source_ids.insert(v.source[node].id);
            } else {
                g.target_positions.insert(node - ns);
            }
        }
        groups.push(g);
    }
    groups
}

/// (verse, word, unified, layer, kind), one row per example pair.
pub const EXPECTED: &[(&str, u32, &str, u8, DiscrepancyKind)] = &[
    ("mal003:012", 4, "כל־ הַ+גּוֹיִם", 1, DiscrepancyKind::MaqefSpace),
    ("mal003:012", 1, "וְ+אֲשֶׁר", 2, DiscrepancyKind::MissingPrefixSplit),
    ("gen001:005", 5, "הַ+שָּׁמַיִם", 2, DiscrepancyKind::MissingPrefixSplit),
    ("ezra002:061", 6, "הַ+קּוֹץ", 2, DiscrepancyKind::MissingPrefixSplit),
    ("mal003:002", 11, "וְ+אֵשׁ", 2, DiscrepancyKind::MissingPrefixSplit),
    ("iikgs005:008", 16, "לְ+מָה", 2, DiscrepancyKind::PrefixMarker),
    ("isa022:018", 4, "כְּ+דוֹר", 2, DiscrepancyKind::MissingPrefixSplit),
    ("iichr026:008", 8, "לְ+בּוֹא", 2, DiscrepancyKind::MissingPrefixSplit),
    ("eccl004:010", 8, "וְ+אֵי=לַם", 3, DiscrepancyKind::SuffixSplit),
    ("mal003:012", 2, "אֵת=כָּם", 3, DiscrepancyKind::SuffixSplit),
];

const PREFIXES: &[&str] = &["וְ", "וַ", "הַ", "בְּ", "בַּ", "כְּ", "לְ", "לַ", "מִ", "שֶׁ"];
const LETTERS: &[char] = &['א', 'ב', 'ג', 'ד', 'ז', 'ח', 'ט', 'י', 'ק', 'ר', 'ס', 'ע', 'פ', 'צ', 'ת', 'נ'];
const MARKS: &[&str] = &["", "ְ", "ַ", "ָ", "ֵ", "ִ", "ֹ", "ּ", "ּׁ"];
const SUFFIXES: &[&str] = &["כָּם", "הֶם", "נוּ", "ךָ", "ו"];

pub fn stem(rng: &mut impl Rng) -> String {
    let len = rng.gen_range(2..=4);
    (0..len)
        .map(|_| format!("{}{}", LETTERS.choose(rng).unwrap(), MARKS.choose(rng).unwrap()))
        .collect()
}

/// A fully segmented word: tokens of prefixes, a stem and maybe a suffix,
/// joined by maqef. Prefix boundaries are `+` or `/`, suffix boundaries
/// `=` or `/`, and a maqef is followed by a space or not.
pub fn random_word(rng: &mut impl Rng) -> SegmentedWord {
    let tokens = rng.gen_range(1..=3);
    let mut segments = Vec::new();
    for t in 0..tokens {
        for _ in 0..rng.gen_range(0..=2) {
            let boundary = if rng.gen_bool(0.5) { Boundary::Prefix } else { Boundary::Split };
            segments.push(Segment { text: PREFIXES.choose(rng).unwrap().to_string(), boundary });
        }
        segments.push(Segment { text: stem(rng), boundary: Boundary::None });
        if rng.gen_bool(0.3) {
            segments.last_mut().unwrap().boundary = if rng.gen_bool(0.5) { Boundary::Suffix } else { Boundary::Split };
            segments.push(Segment { text: SUFFIXES.choose(rng).unwrap().to_string(), boundary: Boundary::None });
        }
        if t + 1 < tokens {
            let last = segments.last_mut().unwrap();
            last.text.push(MAQEF);
            last.boundary = if rng.gen_bool(0.5) { Boundary::Space } else { Boundary::Maqef };
        }
    }
    SegmentedWord::new(segments).unwrap()
}

/// Drops some boundaries: `+`, `=` and `/` disappear, a space after a maqef
/// becomes a bare maqef. Returns the perturbed word and the drop count.
pub fn perturb(rng: &mut impl Rng, word: &SegmentedWord) -> (SegmentedWord, usize) {
    let mut out: Vec<Segment> = Vec::new();
    let mut drops = 0;
    let n = word.segments().len();
    for (i, seg) in word.segments().iter().enumerate() {
        let mut seg = seg.clone();
        let drop = i + 1 < n && rng.gen_bool(0.4);
        match seg.boundary {
            Boundary::Prefix | Boundary::Suffix | Boundary::Split if drop => {
                drops += 1;
                seg.boundary = Boundary::None;
            }
            Boundary::Space if drop => {
                drops += 1;
                seg.boundary = Boundary::Maqef;
            }
            _ => {}
        }
        // glue onto the previous segment when its boundary vanished
        match out.last_mut() {
            Some(prev) if prev.boundary == Boundary::None => {
                prev.text.push_str(&seg.text);
                prev.boundary = seg.boundary;
            }
            _ => out.push(seg),
        }
    }
    (SegmentedWord::new(out).unwrap(), drops)
}

pub type Mutation = fn(&mut VerseAlignment);

pub fn row(v: &mut VerseAlignment, surface: &str) -> usize {
    v.target.iter().position(|t| t.surface == surface).unwrap()
}

/// One single-fault mutation of Ps 1:1 per verse rule.
pub const MUTATIONS: &[(&str, Mutation)] = &[
    (R1_DANGLING_LINK, |v| {
        let i = row(v, "joka");
        v.target[i].links = "3 9".parse().unwrap();
    }),
    (R2_SOURCE_IDS, |v| v.source.swap(3, 4)),
    (R3_EXTRACTOR, |v| {
        let i = row(v, "");
        v.target[i].links = LinkField::NoSource;
    }),
    (R4_EPSILON, |v| {
        let i = row(v, ",");
        v.target[i].lemma = TargetLemma::Plain(",".into());
    }),
    (R5_MORPH, |v| {
        let i = row(v, "mies");
        v.target[i].morph = "SG.XYZ".parse().unwrap();
    }),
    (R6_LEMMA_TRIPLE, |v| v.source[0].lemma = SourceLemma { lemma: None, strong: None, concord: None }),
    (R7_COVERAGE, |v| {
        let i = row(v, "ei");
        v.target[i].links = "3".parse().unwrap();
    }),
];
