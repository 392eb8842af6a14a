//! Runs fixture programs through the `mzw` binary in a scratch directory.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

pub struct Run {
    pub transcript: String,
    pub json: String,
    pub files: Vec<(String, String)>,
}

pub fn run(name: &str, extra: &[&str]) -> Run {
    let tmp = tempfile::tempdir().unwrap();
    let prog = tmp.path().join(name);
    fs::copy(dir("fixtures").join(name), &prog).unwrap();
    let json = tmp.path().join("records.json");
    let out = Command::new(env!("CARGO_BIN_EXE_mzw"))
        .args(extra)
        .arg("--json")
        .arg(&json)
        .arg("run")
        .arg(&prog)
        .output()
        .unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap().replace(tmp.path().to_str().unwrap(), "<tmp>");
    let transcript = format!(
        "{}--- stderr ---\n{}--- exit {} ---\n",
        String::from_utf8(out.stdout).unwrap(),
        stderr,
        out.status.code().unwrap()
    );
    let mut files: Vec<(String, String)> = fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json") && p != &json)
        .map(|p| (p.file_name().unwrap().to_str().unwrap().to_string(), fs::read_to_string(&p).unwrap()))
        .collect();
    files.sort();
    Run { transcript, json: fs::read_to_string(&json).unwrap_or_default(), files }
}

pub fn exit_code(r: &Run) -> i32 {
    let tail = r.transcript.rsplit("--- exit ").next().unwrap();
    tail.trim_end_matches(" ---\n").parse().unwrap()
}

/// Golden file contents, or `None` when it is missing.
pub fn golden_text(file: &str) -> Option<String> {
    fs::read_to_string(dir("golden").join(file)).ok()
}
