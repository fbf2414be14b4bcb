mod common;

use common::{fixture, load, perturb, random_word, EXPECTED};
use helfi_core::format::{parse_corpus_str, ParseOptions};
use helfi_core::model::Corpus;
use helfi_core::sync::{
    classify_split, edition_diff, harmonize, insert_maqef_space, merge_suffixes, normalize, parse_interchange,
    render_report_tsv, sync_words, Boundary, DiscrepancyKind, EditionDiffKind, Location, PrefixInventory,
    MAQEF,
};
use helfi_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn tokenization_discrepancy_examples() {
    let whm = parse_interchange(&fixture("segmentation_whm.txt")).unwrap();
    let oshb = parse_interchange(&fixture("segmentation_oshb.txt")).unwrap();
    let report = sync_words(&whm, &oshb, &PrefixInventory::default()).unwrap();
    assert_eq!(report.unified.len(), 10);
    assert_eq!(report.discrepancies.len(), 10);
    for (i, &(verse, word, unified, layer, kind)) in EXPECTED.iter().enumerate() {
        let u = &report.unified[i];
        assert_eq!((u.location.verse.to_string().as_str(), u.location.word), (verse, word));
        assert_eq!(u.form.to_string(), unified, "{verse}.{word}");
        let d = &report.discrepancies[i];
        assert_eq!(d.location, u.location);
        assert_eq!((d.layer, d.kind), (layer, kind), "{verse}.{word}: {}", d.description);
    }
    // the other direction gives the same unified words
    let back = sync_words(&oshb, &whm, &PrefixInventory::default()).unwrap();
    assert_eq!(back.unified, report.unified);
    let kinds: Vec<_> = back.discrepancies.iter().map(|d| (d.layer, d.kind)).collect();
    let expected: Vec<_> = EXPECTED.iter().map(|e| (e.3, e.4)).collect();
    assert_eq!(kinds, expected);

    let tsv = render_report_tsv(&report.discrepancies);
    assert_eq!(tsv.lines().count(), 11);
    assert!(tsv.lines().nth(1).unwrap().starts_with("1\tmal003:012\t4\tmaqef-space\t"));
}

#[test]
fn identical_inputs_give_no_discrepancies() {
    let whm = parse_interchange(&fixture("segmentation_whm.txt")).unwrap();
    let report = sync_words(&whm, &whm, &PrefixInventory::default()).unwrap();
    assert!(report.discrepancies.is_empty());
}

#[test]
fn letter_mismatch_is_an_error() {
    let a = parse_interchange("mal003:012\t2\tאֵת=כָּם\n").unwrap();
    let b = parse_interchange("mal003:012\t2\tאֵת/כָּן\n").unwrap();
    assert!(matches!(sync_words(&a, &b, &PrefixInventory::default()), Err(Error::TextMismatch { .. })));
}

#[test]
fn lemma_counts_are_checked_against_the_unified_word() {
    let a = parse_interchange("eccl004:010\t8\tוְ+אֵי=לַם\t-/335/-\n").unwrap();
    let b = parse_interchange("eccl004:010\t8\tוְ/אֵי/לַם\n").unwrap();
    let report = sync_words(&a, &b, &PrefixInventory::default()).unwrap();
    let kinds: Vec<_> = report.discrepancies.iter().map(|d| (d.layer, d.kind)).collect();
    assert_eq!(
        kinds,
        [(3, DiscrepancyKind::SuffixSplit), (3, DiscrepancyKind::InconsistentMorphology)]
    );
}

#[test]
fn layer_operations_are_idempotent() {
    let p = PrefixInventory::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6b);
    for _ in 0..10_000 {
        let (word, _) = {
            let w = random_word(&mut rng);
            perturb(&mut rng, &w)
        };
        let spaced = insert_maqef_space(&word);
        assert_eq!(insert_maqef_space(&spaced), spaced, "{word}");
        let classified = classify_split(&word, &p);
        assert_eq!(classify_split(&classified, &p), classified, "{word}");
        let merged = merge_suffixes(&word, &p);
        assert_eq!(merge_suffixes(&merged, &p), merged, "{word}");
        let n = normalize(&word, &p);
        assert_eq!(normalize(&n, &p), n, "{word}");
        assert_eq!(n.text(), word.text());
        assert!(n.segments().iter().all(|s| matches!(
            s.boundary,
            Boundary::None | Boundary::Space | Boundary::Prefix | Boundary::Suffix
        )));
    }
}

#[test]
fn dropped_boundaries_are_recovered_and_counted() {
    let p = PrefixInventory::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let location = Location { verse: "gen001:001".parse().unwrap(), word: 1 };
    for _ in 0..3_000 {
        let original = random_word(&mut rng);
        let (perturbed, drops) = perturb(&mut rng, &original);
        let truth = harmonize(&original, &original, &location, &p).unwrap();
        assert!(truth.discrepancies.is_empty());

        let h = harmonize(&original, &perturbed, &location, &p).unwrap();
        assert_eq!(h.unified, truth.unified, "{original} vs {perturbed}");
        assert_eq!(h.discrepancies.len(), drops, "{original} vs {perturbed}: {:?}", h.discrepancies);
        let back = harmonize(&perturbed, &original, &location, &p).unwrap();
        assert_eq!(back.unified, h.unified);
        assert_eq!(back.discrepancies.len(), drops);

        // letters kept, every maqef ends a token, no suffix is a subtoken
        assert_eq!(h.unified.text(), original.text());
        let segs = h.unified.segments();
        for s in &segs[..segs.len() - 1] {
            assert!(!s.text.ends_with(MAQEF) || s.boundary == Boundary::Space);
            assert!(s.boundary != Boundary::Split && s.boundary != Boundary::Maqef);
        }
    }
}

#[test]
fn harmonize_is_symmetric_on_independent_perturbations() {
    let p = PrefixInventory::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let location = Location { verse: "gen001:001".parse().unwrap(), word: 1 };
    for _ in 0..2_000 {
        let original = random_word(&mut rng);
        let (a, _) = perturb(&mut rng, &original);
        let (b, _) = perturb(&mut rng, &original);
        let ab = harmonize(&a, &b, &location, &p).unwrap();
        let ba = harmonize(&b, &a, &location, &p).unwrap();
        assert_eq!(ab.unified, ba.unified, "{a} / {b}");
        assert_eq!(ab.discrepancies.len(), ba.discrepancies.len());
        assert_eq!(ab.unified.skeleton(), original.skeleton());
    }
}

fn edited(corpus: &Corpus, f: impl Fn(&mut String)) -> Corpus {
    let mut out = corpus.clone();
    let mut v = corpus.verses().next().unwrap().clone();
    f(&mut v.target[2].surface);
    out.replace(v);
    out
}

#[test]
fn edition_differences() {
    let (a, _) = load("two_verses.tsv");
    assert!(edition_diff(&a, &a).is_empty());

    let (b, _) = load("ps001_001.tsv");
    let diff = edition_diff(&a, &b);
    assert_eq!(diff.len(), 1);
    assert_eq!((diff[0].verse.to_string(), diff[0].kind), ("hb001:001".into(), EditionDiffKind::MissingInB));
    let diff = edition_diff(&b, &a);
    assert_eq!(diff[0].kind, EditionDiffKind::MissingInA);

    let changed = edited(&a, |s| *s = "miehen".into());
    let diff = edition_diff(&a, &changed);
    assert_eq!(diff.len(), 1);
    assert_eq!((diff[0].verse.to_string(), diff[0].kind), ("ps001:001".into(), EditionDiffKind::SurfaceDiffers));
    assert!(diff[0].detail.contains("miehen"), "{}", diff[0].detail);

    // trailing-space markers are not part of the comparison
    let unmarked = fixture("two_verses.tsv").replace(" _␣", "");
    let (c, diagnostics) = parse_corpus_str(&unmarked, &ParseOptions::default());
    assert!(diagnostics.is_empty());
    assert!(edition_diff(&a, &c).is_empty());
}

#[test]
fn seeded_edition_deltas_are_all_reported() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (base, _) = load("two_verses.tsv");
    let verse = base.verses().next().unwrap().clone();
    for _ in 0..50 {
        // a corpus of many verses, some of which get edited or deleted
        let mut a = Corpus::new("a", Default::default());
        let mut b = Corpus::new("b", Default::default());
        let mut seeded = 0;
        for n in 1..=rng.gen_range(1..30) {
            let mut v = verse.clone();
            v.verse_ref = format!("ps002:{n:03}").parse().unwrap();
            a.push(v.clone());
            match rng.gen_range(0..5) {
                0 => seeded += 1,
                1 => {
                    v.source[0].surface.push('x');
                    b.push(v);
                    seeded += 1;
                }
                _ => b.push(v),
            }
        }
        assert_eq!(edition_diff(&a, &b).len(), seeded);
    }
}
