//! Helpers shared by the golden and acceptance tests.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cases() -> Vec<(String, Vec<String>)> {
    let text = std::fs::read_to_string(golden_dir().join("cases")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut words = l.split_whitespace().map(str::to_string);
            let name = words.next().unwrap();
            (name, words.collect())
        })
        .collect()
}

pub fn render(args: &[String]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_tt"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .unwrap();
    format!(
        "exit: {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap()
    )
}

/// Case names whose expected output differs from the binary's.
pub fn golden_mismatches() -> Vec<String> {
    let dir = golden_dir().join("expected");
    cases()
        .into_iter()
        .filter(|(name, args)| std::fs::read_to_string(dir.join(name)).ok() != Some(render(args)))
        .map(|(name, _)| name)
        .collect()
}
