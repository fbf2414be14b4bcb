//! `helfi`: batch tools and the editing service for aligned bitexts.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "helfi", version, about = "Validate, index, convert and serve aligned bitext corpora")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

/// Configuration files shared by every subcommand. Missing flags mean
/// built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// Column format profile of the input (separator, marker, strict or lenient mode)
    #[arg(long, global = true, env = "HELFI_PROFILE", value_name = "PATH")]
    pub format_profile: Option<PathBuf>,
    /// Validation rule severities
    #[arg(long, global = true, env = "HELFI_RULES", value_name = "PATH")]
    pub rules: Option<PathBuf>,
    /// Canonical book order, one code per line
    #[arg(long, global = true, value_name = "PATH")]
    pub book_order: Option<PathBuf>,
    /// Extractor inventory, one kind per line
    #[arg(long, global = true, value_name = "PATH")]
    pub extractors: Option<PathBuf>,
    /// Morphological tag inventory, whitespace separated
    #[arg(long, global = true, value_name = "PATH")]
    pub morph_tags: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a corpus against the annotation rules; exits 1 when any error is found
    Validate {
        /// Corpus file, or `-` for stdin
        input: PathBuf,
        /// Report format
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Build the analytical concordance
    Concord {
        /// Corpus file, or `-` for stdin
        input: PathBuf,
        /// Only this headword
        #[arg(long)]
        headword: Option<String>,
        /// Width of the keyword-in-context window in characters
        #[arg(long, default_value_t = 60)]
        kwic_width: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t = ConcordFormat::Text)]
        format: ConcordFormat,
    },
    /// Harmonize the segmentation of two morphology files in interchange format
    Sync {
        /// First morphology; its word order is kept
        a: PathBuf,
        /// Second morphology
        b: PathBuf,
        /// Write the discrepancy report here instead of stderr
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        /// Prefix inventory, one segment per line
        #[arg(long, value_name = "PATH")]
        prefixes: Option<PathBuf>,
    },
    /// List verses whose source text differs between two editions
    Diff {
        /// First edition
        a: PathBuf,
        /// Second edition
        b: PathBuf,
    },
    /// Per-book token, link and coverage counts
    Stats {
        /// Corpus file, or `-` for stdin
        input: PathBuf,
    },
    /// Run the HTTP editing service
    Serve {
        /// Corpus file to open and save back to
        input: PathBuf,
        /// Interface to bind
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Port to bind; 0 picks a free one
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Directory with the built editor bundle
        #[arg(long, value_name = "DIR")]
        static_dir: Option<PathBuf>,
    },
    /// Rewrite a corpus, optionally under another profile or in canonical order
    Convert {
        /// Corpus file, or `-` for stdin
        input: PathBuf,
        /// Profile of the output; defaults to the strict profile
        #[arg(long, value_name = "PATH")]
        profile: Option<PathBuf>,
        /// Sort verses into canonical book order
        #[arg(long)]
        canonicalize: bool,
        /// Output file; stdout when absent
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConcordFormat {
    Text,
    Tsv,
    Json,
}

/// Why a command stopped. Exit status 1 for domain failures, 2 for I/O.
#[derive(Debug)]
pub enum Failure {
    Domain(String),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Io(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { input, format } => commands::validate(&cli.config, &input, format),
        Command::Concord { input, headword, kwic_width, format } => {
            commands::concord(&cli.config, &input, headword.as_deref(), kwic_width, format)
        }
        Command::Sync { a, b, report, prefixes } => commands::sync(&a, &b, report.as_deref(), prefixes.as_deref()),
        Command::Diff { a, b } => commands::diff(&cli.config, &a, &b),
        Command::Stats { input } => commands::stats(&cli.config, &input),
        Command::Serve { input, host, port, static_dir } => commands::serve(&cli.config, &input, &host, port, static_dir),
        Command::Convert { input, profile, canonicalize, output } => {
            commands::convert(&cli.config, &input, profile.as_deref(), canonicalize, output.as_deref())
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            match &failure {
                Failure::Domain(msg) => eprintln!("helfi: {msg}"),
                Failure::Io(msg) => eprintln!("helfi: I/O error: {msg}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
