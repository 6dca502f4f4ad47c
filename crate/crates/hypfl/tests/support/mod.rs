//! Runs fixture cases under `fixtures/cases` through the binary and compares
//! the produced artifacts with the committed ones byte for byte.
//!
//! Set `HYPFL_BLESS=1` to rewrite the committed expectations.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde::Deserialize;

#[derive(Deserialize)]
struct Step {
    args: Vec<String>,
    exit: i32,
}

#[derive(Deserialize)]
struct Case {
    commands: Vec<Step>,
    compare: Vec<String>,
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn copy_tree(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_tree(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), target).unwrap();
        }
    }
}

fn bless() -> bool {
    std::env::var("HYPFL_BLESS").is_ok_and(|v| v == "1")
}

/// Runs one case; returns a list of mismatches.
pub fn run_case(name: &str) -> Vec<String> {
    let case_dir = fixtures().join("cases").join(name);
    let case: Case = serde_json::from_str(&fs::read_to_string(case_dir.join("case.json")).unwrap()).unwrap();
    let work = tempfile::tempdir().unwrap();
    copy_tree(&fixtures(), work.path());
    fs::create_dir_all(work.path().join("out")).unwrap();
    let expected = case_dir.join("expected");
    let mut problems = Vec::new();
    let mut produced: Vec<(String, Vec<u8>)> = Vec::new();
    for (i, step) in case.commands.iter().enumerate() {
        let out = Command::new(env!("CARGO_BIN_EXE_hypfl"))
            .args(&step.args)
            .current_dir(work.path())
            .env_remove("HYPFL_THREADS")
            .output()
            .unwrap();
        let code = out.status.code().unwrap_or(-1);
        if code != step.exit {
            problems.push(format!(
                "{name} step {i}: exit {code}, expected {}; stderr {}",
                step.exit,
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        if code == 0 {
            produced.push((format!("stdout_{i}.json"), out.stdout));
        } else {
            let err: serde_json::Value = serde_json::from_slice(&out.stderr)
                .unwrap_or_else(|_| panic!("{name} step {i}: stderr is not JSON: {}", String::from_utf8_lossy(&out.stderr)));
            let tag = err["error"].as_str().unwrap_or("").to_string();
            produced.push((format!("error_{i}.txt"), format!("{tag}\n").into_bytes()));
        }
    }
    for rel in &case.compare {
        match fs::read(work.path().join(rel)) {
            Ok(bytes) => produced.push((rel.clone(), bytes)),
            Err(e) => problems.push(format!("{name}: {rel} not produced: {e}")),
        }
    }
    for (rel, bytes) in produced {
        let path = expected.join(&rel);
        if bless() {
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(&path, &bytes).unwrap();
            continue;
        }
        match fs::read(&path) {
            Ok(want) if want == bytes => {}
            Ok(_) => problems.push(format!("{name}: {rel} differs from the committed file")),
            Err(_) => problems.push(format!("{name}: no committed {rel}")),
        }
    }
    problems
}

pub fn case_names() -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(fixtures().join("cases"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}
