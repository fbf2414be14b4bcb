use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use helfi_core::concord::{
    build_index, headword_entries, periphery_entries, render_printable, render_tsv, HeadwordEntry, KwicLayout,
};
use helfi_core::format::{canonicalize, parse_corpus_bytes, serialize_corpus};
use helfi_core::model::Corpus;
use helfi_core::stats::{book_stats, render_stats_tsv};
use helfi_core::sync::{
    edition_diff, parse_interchange, render_diff_tsv, render_interchange, render_report_tsv, sync_words,
    PrefixInventory,
};
use helfi_core::validate::{render_text_report, render_tsv_report, validate_corpus};
use helfi_core::Diagnostic;
use helfi_service::{router, serve as serve_app, ServiceError, Store, StoreOptions};
use serde::Serialize;

use crate::config::{profile_file, read_input, read_text};
use crate::{ConcordFormat, ConfigArgs, Failure, ReportFormat};

type Outcome = Result<u8, Failure>;

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::Io(format!("stdout: {e}")))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn report_diagnostics(diagnostics: &[Diagnostic]) {
    for d in diagnostics {
        eprintln!("{d}");
    }
}

/// Parses a corpus, failing when any verse had to be dropped.
fn load_corpus(config: &ConfigArgs, input: &Path) -> Result<Corpus, Failure> {
    let options = config.parse_options(input)?;
    let (corpus, diagnostics) = parse_corpus_bytes(&read_input(input)?, &options);
    report_diagnostics(&diagnostics);
    let errors = diagnostics.iter().filter(|d| d.is_error()).count();
    if errors > 0 {
        return Err(Failure::Domain(format!("{}: {errors} parse errors", input.display())));
    }
    Ok(corpus)
}

pub fn validate(config: &ConfigArgs, input: &Path, format: ReportFormat) -> Outcome {
    let options = config.parse_options(input)?;
    let rules = config.rules()?;
    let (corpus, parse) = parse_corpus_bytes(&read_input(input)?, &options);
    let summary = validate_corpus(&corpus, &rules).with_parse_diagnostics(parse);
    emit(&match format {
        ReportFormat::Text => render_text_report(&summary),
        ReportFormat::Tsv => render_tsv_report(&summary),
    })?;
    Ok(u8::from(summary.error_count() > 0))
}

pub fn concord(
    config: &ConfigArgs,
    input: &Path,
    headword: Option<&str>,
    kwic_width: usize,
    format: ConcordFormat,
) -> Outcome {
    let corpus = load_corpus(config, input)?;
    let index = build_index(&corpus).map_err(|e| Failure::Domain(e.to_string()))?;
    let layout = KwicLayout { width: kwic_width, ..KwicLayout::default() };

    let (main, periphery): (Vec<HeadwordEntry>, Vec<HeadwordEntry>) = match headword {
        Some(h) => {
            let entry = index.entry(h).ok_or_else(|| Failure::Domain(format!("no headword `{h}`")))?;
            (vec![entry], Vec::new())
        }
        None => (headword_entries(&index), periphery_entries(&index)),
    };

    let text = match format {
        ConcordFormat::Text => {
            let mut out = render_printable(&main, &layout);
            if !periphery.is_empty() {
                out.push_str("\nPERIPHERY\n");
                out.push_str(&render_printable(&periphery, &layout));
            }
            out
        }
        ConcordFormat::Tsv => {
            let mut out = render_tsv(&main, &layout);
            let rest = render_tsv(&periphery, &layout);
            out.push_str(rest.split_once('\n').map_or("", |(_, rows)| rows));
            out
        }
        ConcordFormat::Json => {
            #[derive(Serialize)]
            struct Tree<'a> {
                headwords: &'a [HeadwordEntry],
                periphery: &'a [HeadwordEntry],
            }
            let json = match headword {
                Some(_) => serde_json::to_string_pretty(&main[0]),
                None => serde_json::to_string_pretty(&Tree { headwords: &main, periphery: &periphery }),
            };
            json.map_err(|e| Failure::Domain(e.to_string()))? + "\n"
        }
    };
    emit(&text)?;
    Ok(0)
}

pub fn sync(a: &Path, b: &Path, report: Option<&Path>, prefixes: Option<&Path>) -> Outcome {
    let prefixes = match prefixes {
        Some(p) => PrefixInventory::parse(&read_text(p)?),
        None => PrefixInventory::default(),
    };
    let parse = |path: &Path| -> Result<_, Failure> {
        parse_interchange(&read_text(path)?).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
    };
    let (words_a, words_b) = (parse(a)?, parse(b)?);
    let result = sync_words(&words_a, &words_b, &prefixes).map_err(|e| Failure::Domain(e.to_string()))?;
    let tsv = render_report_tsv(&result.discrepancies);
    match report {
        Some(path) => write_file(path, &tsv)?,
        None => eprint!("{tsv}"),
    }
    emit(&render_interchange(&result.unified))?;
    Ok(0)
}

pub fn diff(config: &ConfigArgs, a: &Path, b: &Path) -> Outcome {
    let (first, second) = (load_corpus(config, a)?, load_corpus(config, b)?);
    emit(&render_diff_tsv(&edition_diff(&first, &second)))?;
    Ok(0)
}

pub fn stats(config: &ConfigArgs, input: &Path) -> Outcome {
    let corpus = load_corpus(config, input)?;
    emit(&render_stats_tsv(&book_stats(&corpus)))?;
    Ok(0)
}

pub fn convert(
    config: &ConfigArgs,
    input: &Path,
    profile: Option<&Path>,
    canonical: bool,
    output: Option<&Path>,
) -> Outcome {
    let corpus = load_corpus(config, input)?;
    let corpus = if canonical { canonicalize(&corpus) } else { corpus };
    let profile = profile.map(profile_file).transpose()?.unwrap_or_default();
    let text = serialize_corpus(&corpus, &profile).map_err(|e| Failure::Domain(e.to_string()))?;
    match output {
        Some(path) => write_file(path, &text)?,
        None => emit(&text)?,
    }
    Ok(0)
}

pub fn serve(config: &ConfigArgs, input: &Path, host: &str, port: u16, static_dir: Option<PathBuf>) -> Outcome {
    let options =
        StoreOptions { profile: config.profile()?, rules: config.rules()?, inventories: config.inventories()? };
    let store = match Store::open(input, options) {
        Ok((store, diagnostics)) => {
            report_diagnostics(&diagnostics);
            store
        }
        Err(ServiceError::Io(e)) => return Err(Failure::Io(format!("{}: {e}", input.display()))),
        Err(e) => {
            report_diagnostics(e.diagnostics());
            return Err(Failure::Domain(format!("{}: {e}", input.display())));
        }
    };
    if let Some(dir) = &static_dir {
        if !dir.is_dir() {
            return Err(Failure::Io(format!("{}: not a directory", dir.display())));
        }
    }

    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(e.to_string()))?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .map_err(|e| Failure::Domain(format!("cannot listen on {host}:{port}: {e}")))?;
        let addr = listener.local_addr().map_err(|e| Failure::Io(e.to_string()))?;
        emit(&format!("listening on http://{addr}\n"))?;
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        serve_app(listener, router(Arc::new(store), static_dir), shutdown).await.map_err(|e| Failure::Io(e.to_string()))
    })?;
    Ok(0)
}
