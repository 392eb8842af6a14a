//! Golden-file tests: every fixture program runs through the `mzw` binary in
//! a scratch directory; stdout, stderr, exit code, the `--json` records and
//! any saved sessions must match `tests/golden/` byte for byte.
//!
//! Set `MZW_BLESS=1` to rewrite the golden files.

use std::fs;

mod common;

use common::{dir, exit_code, golden_text, run, Run};

fn check_golden(file: &str, actual: &str) {
    let path = dir("golden").join(file);
    if std::env::var_os("MZW_BLESS").is_some() {
        fs::create_dir_all(dir("golden")).unwrap();
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = golden_text(file).unwrap_or_else(|| panic!("missing golden file {file}; run with MZW_BLESS=1"));
    assert!(expected == actual, "{file} differs from golden output:\n{actual}");
}

fn golden(name: &str, extra: &[&str]) -> Run {
    let r = run(name, extra);
    let stem = name.trim_end_matches(".mz");
    check_golden(&format!("{stem}.out"), &r.transcript);
    check_golden(&format!("{stem}.records.json"), &r.json);
    for (f, text) in &r.files {
        check_golden(f, text);
    }
    let again = run(name, extra);
    assert_eq!(again.transcript, r.transcript, "{name}: output is not deterministic");
    assert_eq!(again.json, r.json);
    r
}

#[test]
fn frobenius_fixtures() {
    let r = golden("frobenius.mz", &[]);
    assert_eq!(exit_code(&r), 0);
    assert!(r.transcript.contains("Z_classical(P1, T) = 1/((1-T)(1-2T))\n"));
    assert!(r.transcript.contains("det(BLOWUP) = L^5 * A\n  class: {10: 1 + 32T}\n  weight: 10\n"));
    assert!(r.transcript.contains("check funceq E: holds\n  chi = 0"));
    let saved: Vec<&String> = r.files.iter().map(|(_, t)| t).collect();
    assert_eq!(saved.len(), 2);
    assert_eq!(saved[0], saved[1], "save -> load -> save must be byte-identical");
}

#[test]
fn symbolic_fixtures() {
    let r = golden("symbolic.mz", &[]);
    assert_eq!(exit_code(&r), 0);
    assert!(r.transcript.contains("det(C2) = L^-1\n"));
    assert!(r.transcript.contains("det(BLOWUP) = L^5 * A\n"));
    let saved: Vec<&String> = r.files.iter().map(|(_, t)| t).collect();
    assert_eq!(saved.len(), 2);
    assert_eq!(saved[0], saved[1]);
}

#[test]
fn backend_flag_selects_the_symbolic_backend() {
    let r = run("frobenius.mz", &["--backend", "sym"]);
    assert_eq!(exit_code(&r), 2, "generic() is frobenius-only:\n{}", r.transcript);
    assert!(r.transcript.contains("needs the frobenius backend"));
}

#[test]
fn failed_checks_exit_with_one() {
    let r = golden("failed_checks.mz", &[]);
    assert_eq!(exit_code(&r), 1);
    assert!(r.transcript.contains("> det E;"), "run continues after a failed check");
}

#[test]
fn errors_exit_with_two() {
    for (name, needle) in [
        ("error_parse.mz", "1:28: unexpected identifier `q`; expected one of `,`"),
        ("error_name.mz", "name error: `F` is not bound"),
        ("error_weil.mz", "malformed Weil polynomial"),
        ("error_backend.mz", "backend error"),
        ("error_count_sym.mz", "backend error"),
        ("error_switch.mz", "backend error"),
    ] {
        let r = golden(name, &[]);
        assert_eq!(exit_code(&r), 2, "{name}");
        assert!(r.transcript.contains(needle), "{name}:\n{}", r.transcript);
    }
}

#[test]
fn order_flag_sets_the_default_window() {
    let r = run("failed_checks.mz", &["--order", "5"]);
    assert_eq!(exit_code(&r), 1);
    let r = run("symbolic.mz", &["--order", "4"]);
    assert!(r.transcript.contains("compared on T^-4..T^4"), "{}", r.transcript);
}
