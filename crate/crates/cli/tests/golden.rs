//! Byte-exact golden tests for the `tt` binary.
//!
//! Each line of `tests/golden/cases` names a case and gives its arguments;
//! the expected exit code, stdout and stderr live in
//! `tests/golden/expected/<case>`. Run with `BLESS=1` to rewrite them.

mod support;

use std::io::Write;

use support::{cases, golden_dir, render};
use tt_core::surface::parse;

#[test]
fn golden() {
    let bless = std::env::var_os("BLESS").is_some();
    let expected_dir = golden_dir().join("expected");
    let mut failures = Vec::new();
    for (name, args) in cases() {
        let actual = render(&args);
        let path = expected_dir.join(&name);
        if bless {
            std::fs::create_dir_all(&expected_dir).unwrap();
            std::fs::write(&path, &actual).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_default();
        if expected != actual {
            failures.push(format!(
                "{name}:\n--- expected\n{expected}--- actual\n{actual}"
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn output_is_deterministic() {
    for (_, args) in cases() {
        assert_eq!(render(&args), render(&args));
    }
}

#[test]
fn normal_forms_are_valid_programs() {
    for (name, args) in cases() {
        if args.first().map(String::as_str) != Some("norm") {
            continue;
        }
        let rendered = render(&args);
        let stdout = rendered
            .split("--- stdout\n")
            .nth(1)
            .and_then(|s| s.split("--- stderr\n").next())
            .unwrap();
        let program = parse(stdout).unwrap_or_else(|e| panic!("{name}: {e}"));
        tt_core::checker::check_program(&program).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

fn run_in_memory(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tt").chain(args.iter().copied());
    let code = tt_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = run_in_memory(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
    let (code, out, _) = run_in_memory(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("tt "));
}

#[test]
fn missing_arguments_are_usage_errors() {
    assert_eq!(run_in_memory(&[]).0, 2);
    assert_eq!(run_in_memory(&["norm", "basic.tt"]).0, 2);
    assert_eq!(
        run_in_memory(&["check", "x.tt", "--max-universe", "many"]).0,
        2
    );
}

#[test]
fn files_are_read_as_given() {
    let path = std::env::temp_dir().join(format!("tt-cli-{}.tt", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(b"def b : N2 = 1\r\ndef c : N2 = b\r\n")
        .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(
        run_in_memory(&["eval", p, "c"]),
        (0, "1\n".to_string(), String::new())
    );
    assert_eq!(
        run_in_memory(&["--quiet", "eval", p, "c"]),
        (0, String::new(), String::new())
    );
    std::fs::remove_file(&path).unwrap();
}
