use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn helfi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helfi"))
        .args(args)
        .env_remove("HELFI_PROFILE")
        .env_remove("HELFI_RULES")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn two_verses() -> String {
    std::fs::read_to_string(fixture("two_verses.tsv")).unwrap()
}

#[test]
fn help_documents_every_flag() {
    let expected: &[(&str, &[&str])] = &[
        ("validate", &["--format"]),
        ("concord", &["--headword", "--kwic-width", "--format"]),
        ("sync", &["--report", "--prefixes"]),
        ("diff", &[]),
        ("stats", &[]),
        ("serve", &["--host", "--port", "--static-dir"]),
        ("convert", &["--profile", "--canonicalize", "--output"]),
    ];
    let global = ["--format-profile", "--rules", "--book-order", "--extractors", "--morph-tags"];
    for (cmd, flags) in expected {
        let out = helfi(&[cmd, "--help"]);
        assert!(out.status.success(), "{cmd}");
        let text = stdout(&out);
        for flag in flags.iter().chain(&global) {
            assert!(text.contains(flag), "{cmd} --help lacks {flag}");
        }
    }
    let top = stdout(&helfi(&["--help"]));
    for (cmd, _) in expected {
        assert!(top.contains(cmd));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(helfi(&[]).status.code(), Some(2));
    assert_eq!(helfi(&["validate"]).status.code(), Some(2));
    assert_eq!(helfi(&["concord", "x", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn validate_clean_fixture() {
    let out = helfi(&["validate", path_str(&fixture("two_verses.tsv"))]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("2 verses, 0 errors, 0 warnings\n"));
    let out = helfi(&["validate", "--format", "tsv", path_str(&fixture("two_verses.tsv"))]);
    assert_eq!(stdout(&out), "severity\trule\tverse\tline\tmessage\n");
}

#[test]
fn validate_mutated_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let text = two_verses().replacen("\t\t3\tjoka\t", "\t\t3 9\tjoka\t", 1);
    let path = write_temp(&dir, "bad.tsv", &text);
    let out = helfi(&["validate", path_str(&path)]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout(&out);
    assert!(report.contains("R1-dangling-link") && report.contains("ps001:001"), "{report}");
}

#[test]
fn validate_missing_file() {
    let out = helfi(&["validate", "/nonexistent/corpus.tsv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("I/O error"));
}

#[test]
fn validate_reads_stdin_and_rules() {
    let dir = tempfile::tempdir().unwrap();
    let rules = write_temp(&dir, "rules.conf", "R7-source-coverage = error\n");
    let text = two_verses().replacen("\t\t3\tjoka\t", "\t\t-\tjoka\t", 1);
    let mut child = Command::new(env!("CARGO_BIN_EXE_helfi"))
        .args(["validate", "-"])
        .env("HELFI_RULES", &rules)
        .env_remove("HELFI_PROFILE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("error [R7-source-coverage] ps001:001"), "{}", stdout(&out));
}

#[test]
fn concord_outputs() {
    let input = fixture("two_verses.tsv");
    let out = helfi(&["concord", path_str(&input), "--headword", "autuas"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[..2], ["autuas", "  835 (1)"]);
    assert_eq!(lines.len(), 3);

    let json: serde_json::Value =
        serde_json::from_slice(&helfi(&["concord", path_str(&input), "--format", "json"]).stdout).unwrap();
    let heads: Vec<&str> = json["headwords"].as_array().unwrap().iter().map(|e| e["headword"].as_str().unwrap()).collect();
    assert_eq!(
        heads,
        [
            "Jumala", "autuas", "ei", "ja", "joka", "jumalaton", "mies", "monesti", "moni", "muinoin", "neuvo", "puhua",
            "se", "tapa", "vaeltaa"
        ]
    );
    assert_eq!(json["periphery"][0]["headword"], "sitten_kuin");

    let tsv = stdout(&helfi(&["concord", path_str(&input), "--format", "tsv"]));
    assert!(tsv.starts_with("headword\tstrong\tverse\tkwic\n"));
    assert!(tsv.lines().any(|l| l.starts_with("sitten_kuin\t")));
    assert_eq!(helfi(&["concord", path_str(&input), "--headword", "kissa"]).status.code(), Some(1));
}

#[test]
fn sync_reports_each_discrepancy() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.tsv");
    let out = helfi(&[
        "sync",
        path_str(&fixture("segmentation_whm.txt")),
        path_str(&fixture("segmentation_oshb.txt")),
        "--report",
        path_str(&report),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = std::fs::read_to_string(&report).unwrap();
    let layers: Vec<&str> = report.lines().skip(1).map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(layers, ["1", "2", "2", "2", "2", "2", "2", "2", "3", "3"]);
    assert_eq!(stdout(&out).lines().count(), 10);
}

#[test]
fn sync_identical_and_mismatched() {
    let whm = fixture("segmentation_whm.txt");
    let out = helfi(&["sync", path_str(&whm), path_str(&whm)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stderr(&out), "layer\tverse\tword\tkind\tdescription\n");

    let dir = tempfile::tempdir().unwrap();
    let a = write_temp(&dir, "a.txt", "gen001:001\t1\tבְּ/רֵאשִׁית\n");
    let b = write_temp(&dir, "b.txt", "gen001:001\t1\tבְּ/רֵאשִׁיר\n");
    let out = helfi(&["sync", path_str(&a), path_str(&b)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("underlying text differs"));
}

#[test]
fn diff_editions() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixture("two_verses.tsv");
    assert_eq!(stdout(&helfi(&["diff", path_str(&a), path_str(&a)])).lines().count(), 1);
    let changed = two_verses().replacen("\tλαλήσας\t", "\tλαλησας\t", 1);
    assert_ne!(changed, two_verses());
    let b = write_temp(&dir, "b.tsv", &changed);
    let out = helfi(&["diff", path_str(&a), path_str(&b)]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<String> = stdout(&out).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("hb001:001\t"));
}

#[test]
fn stats_table() {
    let out = helfi(&["stats", path_str(&fixture("two_verses.tsv"))]);
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][0], rows[0][2]), ("ps", "9"));
    assert_eq!((rows[1][0], rows[1][2]), ("hb", "7"));

    let dir = tempfile::tempdir().unwrap();
    let empty = write_temp(&dir, "empty.tsv", "");
    assert_eq!(stdout(&helfi(&["stats", path_str(&empty)])).lines().count(), 1);
}

#[test]
fn convert_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("two_verses.tsv");
    let out = helfi(&["convert", path_str(&input), "--canonicalize"]);
    assert_eq!(stdout(&out), two_verses());

    let profile = write_temp(&dir, "tilde.profile", "marker = \" ~\"\n");
    let converted = stdout(&helfi(&["convert", path_str(&input), "--profile", path_str(&profile)]));
    assert!(converted.contains("Autuas ~\t") && !converted.contains(" _␣"));
    let back = write_temp(&dir, "tilde.tsv", &converted);
    let restored = helfi(&["--format-profile", path_str(&profile), "convert", path_str(&back)]);
    assert_eq!(stdout(&restored), two_verses());

    let lenient = write_temp(&dir, "lenient.profile", "mode = lenient\n");
    let with_header = format!("verse\ttoken ID\tlinked IDs\tlemma\tmorphology\tword form\ttransliteration\r\n{}", two_verses());
    let headed = write_temp(&dir, "headed.tsv", &with_header);
    let target = dir.path().join("strict.tsv");
    let out = helfi(&["--format-profile", path_str(&lenient), "convert", path_str(&headed), "-o", path_str(&target)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(helfi(&["validate", path_str(&target)]).status.code(), Some(0));
}

fn http_get(addr: &str, path: &str) -> String {
    let mut stream = TcpStream::connect(addr).unwrap();
    write!(stream, "GET {path} HTTP/1.1\r\nHost: {addr}\r\nConnection: close\r\n\r\n").unwrap();
    let mut response = String::new();
    stream.read_to_string(&mut response).unwrap();
    response
}

#[test]
fn serve_smoke() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_helfi"))
        .args(["serve", path_str(&fixture("two_verses.tsv")), "--port", "0"])
        .env_remove("HELFI_PROFILE")
        .env_remove("HELFI_RULES")
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
    let addr = line.trim().strip_prefix("listening on http://").expect(&line).to_string();
    let response = http_get(&addr, "/corpus/meta");
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(response.starts_with("HTTP/1.1 200"), "{response}");
    assert!(response.contains(r#""books":["ps","hb"]"#), "{response}");
}

#[test]
fn serve_port_in_use() {
    let taken = TcpListener::bind("127.0.0.1:0").unwrap();
    let port = taken.local_addr().unwrap().port().to_string();
    let out = helfi(&["serve", path_str(&fixture("two_verses.tsv")), "--port", &port]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cannot listen"));
}
