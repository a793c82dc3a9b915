//! Command-line front end: document decoding, command dispatch and report rendering.
pub mod commands;
pub mod json;
pub mod report;
pub mod schema;

use clap::{Parser, ValueEnum};

use commands::{Options, COMMANDS, DEFAULT_SEED};
use report::{Format, Report};

pub const USAGE: &str = "usage: engine <command> <input.json> [--xi LABEL] [--order K] [--levels N] [--polydeg D] [--format text|json] [--seed S]";

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "engine", about = "Exact deformation computations for DG Lie algebras and twisted bundles")]
struct Args {
    command: String,
    input: String,
    #[arg(long)]
    xi: Option<String>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    polydeg: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn usage_error(message: &str) -> Outcome {
    Outcome { code: 2, stdout: String::new(), stderr: format!("{message}\n{USAGE}\ncommands: {}\n", COMMANDS.join(", ")) }
}

/// Parses the `ENGINE_MAX_NIL` value (default 8).
pub fn max_nil_from(env: Option<&str>) -> Result<usize, String> {
    match env {
        None => Ok(twistdef::MAX_NIL_INDEX),
        Some(s) => match s.trim().parse::<usize>() {
            Ok(n) if (2..=twistdef::MAX_NIL_INDEX).contains(&n) => Ok(n),
            _ => Err(format!("ENGINE_MAX_NIL must be an integer in 2..={}, got {s:?}", twistdef::MAX_NIL_INDEX)),
        },
    }
}

/// Runs the CLI on `args` (without the program name) with the document text supplied by
/// `read`.
pub fn run_with(args: &[String], max_nil_env: Option<&str>, read: impl Fn(&str) -> std::io::Result<String>) -> Outcome {
    let Some(command) = args.first() else { return usage_error("missing command") };
    if !COMMANDS.contains(&command.as_str()) && !command.starts_with('-') {
        return usage_error(&format!("unknown command {command:?}"));
    }
    let argv = std::iter::once("engine".to_string()).chain(args.iter().cloned());
    let parsed = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string(), stderr: String::new() };
            }
            return usage_error(e.to_string().trim_end());
        }
    };
    let format = match parsed.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let finish = |r: Report| {
        let code = r.status.exit_code();
        Outcome { code, stdout: r.emit(format), stderr: String::new() }
    };
    let max_nil = match max_nil_from(max_nil_env) {
        Ok(n) => n,
        Err(m) => return finish(Report::error(&parsed.command, m)),
    };
    let text = match read(&parsed.input) {
        Ok(t) => t,
        Err(e) => return finish(Report::error(&parsed.command, format!("cannot read {}: {e}", parsed.input))),
    };
    let doc = match schema::parse_document(&text, max_nil) {
        Ok(d) => d,
        Err(e) => {
            let mut r = Report::error(&parsed.command, e.to_string());
            match &e {
                json::InputError::Parse { line, column, .. } => {
                    r.set("line", *line).set("column", *column);
                }
                json::InputError::Schema { path, .. } => {
                    r.set("path", path.clone());
                }
            }
            return finish(r);
        }
    };
    let opts = Options {
        xi: parsed.xi,
        order: parsed.order,
        levels: parsed.levels,
        polydeg: parsed.polydeg,
        seed: parsed.seed,
        max_nil,
    };
    finish(commands::run(&parsed.command, &doc, &opts))
}

/// Runs the CLI reading the input from disk.
pub fn run_cli(args: &[String], max_nil_env: Option<&str>) -> Outcome {
    run_with(args, max_nil_env, |p| std::fs::read_to_string(p))
}
