//! The `tt` command-line driver.
//!
//! Exit codes: 0 on success, 1 on a semantic failure (type error, terms not
//! convertible, not a boolean), 2 on usage, I/O and parse errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use tt_core::canonicity::{bool_witness_with, BoolValue};
use tt_core::checker::{CheckedDecl, Checker, DEFAULT_MAX_UNIVERSE};
use tt_core::semantics::{convertible, convertible_types};
use tt_core::surface::{parse, pretty};

#[derive(Debug, Parser)]
#[command(
    name = "tt",
    version,
    about = "Check and normalize dependently typed programs"
)]
pub struct Cli {
    /// Universe ceiling: `U<n>` may be written only when n < N.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_MAX_UNIVERSE)]
    pub max_universe: u32,
    /// Print nothing on standard output.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type-check every definition in a file.
    Check { file: PathBuf },
    /// Print the normal form of a definition and of its type.
    Norm { file: PathBuf, name: String },
    /// Print the value (0 or 1) of a closed boolean definition.
    Eval { file: PathBuf, name: String },
    /// Decide whether two definitions are judgmentally equal.
    Conv {
        file: PathBuf,
        left: String,
        right: String,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_SEMANTIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: String) -> Failure {
    Failure { code, message }
}

/// Run the driver on `argv` (including the program name).
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut sink = std::io::sink();
    let stdout: &mut dyn Write = if cli.quiet { &mut sink } else { out };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "{}", f.message);
            }
            f.code
        }
    }
}

fn load(file: &Path, checker: &Checker) -> Result<Vec<CheckedDecl>, Failure> {
    let shown = file.display();
    let text = std::fs::read_to_string(file)
        .map_err(|e| fail(EXIT_USAGE, format!("{shown}: cannot read file: {e}")))?;
    let program = parse(&text).map_err(|e| fail(EXIT_USAGE, format!("{shown}:{e}")))?;
    checker
        .check_program(&program)
        .map_err(|e| fail(EXIT_SEMANTIC, format!("{shown}:{e}")))
}

fn find<'a>(decls: &'a [CheckedDecl], file: &Path, name: &str) -> Result<&'a CheckedDecl, Failure> {
    decls.iter().find(|d| d.name == name).ok_or_else(|| {
        fail(
            EXIT_USAGE,
            format!("{}: no definition named `{name}`", file.display()),
        )
    })
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let checker = Checker::new(cli.max_universe);
    let io = |e: std::io::Error| fail(EXIT_USAGE, format!("cannot write output: {e}"));
    match &cli.command {
        Command::Check { file } => {
            let decls = load(file, &checker)?;
            writeln!(out, "ok: {} definitions", decls.len()).map_err(io)?;
        }
        Command::Norm { file, name } => {
            let decls = load(file, &checker)?;
            let d = find(&decls, file, name)?;
            writeln!(
                out,
                "def {} : {} = {}",
                d.name,
                pretty(d.ty_normal.as_term(), &[]),
                pretty(d.term_normal.as_term(), &[])
            )
            .map_err(io)?;
        }
        Command::Eval { file, name } => {
            let decls = load(file, &checker)?;
            let d = find(&decls, file, name)?;
            let w = bool_witness_with(&checker, &d.term).map_err(|_| {
                fail(
                    EXIT_SEMANTIC,
                    format!(
                        "{}:{}: `{}` is not a boolean: its type is {}",
                        file.display(),
                        d.pos,
                        d.name,
                        pretty(d.ty_normal.as_term(), &[])
                    ),
                )
            })?;
            let digit = match w.value {
                BoolValue::IsZero => "0",
                BoolValue::IsOne => "1",
            };
            writeln!(out, "{digit}").map_err(io)?;
        }
        Command::Conv { file, left, right } => {
            let decls = load(file, &checker)?;
            let a = find(&decls, file, left)?;
            let b = find(&decls, file, right)?;
            if !convertible_types(0, &a.ty_value, &b.ty_value) {
                writeln!(out, "not convertible: the types differ").map_err(io)?;
                writeln!(out, "  {} : {}", a.name, pretty(a.ty_normal.as_term(), &[]))
                    .map_err(io)?;
                writeln!(out, "  {} : {}", b.name, pretty(b.ty_normal.as_term(), &[]))
                    .map_err(io)?;
                return Err(fail(EXIT_SEMANTIC, String::new()));
            }
            if convertible(0, &a.ty_value, &a.value, &b.value) {
                writeln!(out, "convertible").map_err(io)?;
            } else {
                writeln!(out, "not convertible").map_err(io)?;
                writeln!(
                    out,
                    "  {} = {}",
                    a.name,
                    pretty(a.term_normal.as_term(), &[])
                )
                .map_err(io)?;
                writeln!(
                    out,
                    "  {} = {}",
                    b.name,
                    pretty(b.term_normal.as_term(), &[])
                )
                .map_err(io)?;
                return Err(fail(EXIT_SEMANTIC, String::new()));
            }
        }
    }
    Ok(())
}
