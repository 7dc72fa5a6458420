//! The `fibalg` command line: argument parsing, dispatch and report output.
//!
//! Exit codes: 0 ok, 1 usage (bad flags, unknown entity or id named on the
//! command line), 2 parse (lexical or syntax errors in the file),
//! 3 validation (reference or law errors in the file, unmet preconditions),
//! 4 construction failure (size guard, missing components, no stabilization),
//! also when a total declared in the file cannot be built.

mod commands;
pub mod payload;

use std::time::Instant;

use clap::{Parser, Subcommand};
use fibalg_core::dsl::{Diagnostic, Severity};
use fibalg_core::limcolim::DEFAULT_SWINDLE_CAP;
use fibalg_core::Error;

use payload::{DiagnosticOut, Report, Status, WitnessOut, SCHEMA_VERSION};

/// Environment variable overriding the morphism-count bound.
pub const SIZE_GUARD_VAR: &str = "FIBALG_SIZE_GUARD";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Code {
    Ok = 0,
    Usage = 1,
    Parse = 2,
    Validation = 3,
    Construction = 4,
}

/// Why a command did not complete.
#[derive(Debug, Clone)]
pub struct Failure {
    pub code: Code,
    pub diagnostics: Vec<DiagnosticOut>,
    pub witness: Option<WitnessOut>,
}

impl Failure {
    fn message(code: Code, severity: &str, message: impl Into<String>) -> Self {
        Self {
            code,
            diagnostics: vec![DiagnosticOut {
                severity: severity.into(),
                message: message.into(),
                line: None,
                column: None,
                offset: None,
                length: None,
            }],
            witness: None,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::message(Code::Usage, "usage", message)
    }

    fn parse(diags: &[Diagnostic]) -> Self {
        let has = |f: fn(Severity) -> bool| diags.iter().any(|d| f(d.severity));
        let code = if has(|s| matches!(s, Severity::Lexical | Severity::Syntax)) {
            Code::Parse
        } else if has(|s| matches!(s, Severity::Reference | Severity::Validation)) {
            Code::Validation
        } else {
            Code::Construction
        };
        let diagnostics = diags
            .iter()
            .map(|d| DiagnosticOut {
                severity: format!("{:?}", d.severity).to_lowercase(),
                message: d.message.clone(),
                line: Some(d.span.line),
                column: Some(d.span.column),
                offset: Some(d.span.offset),
                length: Some(d.span.length),
            })
            .collect();
        Self {
            code,
            diagnostics,
            witness: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeGuard { .. } | Error::NoComponents(_) | Error::Construction(_) => {
                Self::message(Code::Construction, "construction", e.to_string())
            }
            _ => Self::message(Code::Validation, "validation", e.to_string()),
        }
    }
}

/// A completed command: its payload, a readable rendering, and a failure
/// when the run finished without the requested result.
pub struct Done {
    pub payload: serde_json::Value,
    pub human: String,
    pub fail: Option<(Code, WitnessOut)>,
}

#[derive(Debug, Parser)]
#[command(
    name = "fibalg",
    version,
    about = "Exhaustive constructions on fibrations of algebras"
)]
struct Cli {
    /// Print a JSON report instead of a readable summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate every declaration of a file (`-` reads stdin).
    Check { file: String },
    /// Build the total category of a parametrized structure.
    Total {
        #[arg(long)]
        param: String,
        #[arg(long, value_parser = ["em", "alg", "kl", "cokl", "coalg", "coem"])]
        flavor: String,
        file: String,
    },
    /// Reindex an EM algebra along a parameter morphism.
    Reindex {
        #[arg(long)]
        param: String,
        #[arg(long)]
        along: String,
        /// Object id in the EM total, with or without the parameter prefix.
        #[arg(long)]
        algebra: String,
        file: String,
    },
    /// Check the (op)fibration property of a total, a split fibration or a functor.
    VerifyFib {
        #[arg(long)]
        total: String,
        /// Defaults to the flavor's variance for totals, `fibration` otherwise.
        #[arg(long, value_parser = ["fibration", "opfibration"])]
        variance: Option<String>,
        file: String,
    },
    /// Compare the EM total with EM of the product monad.
    CompareHat {
        #[arg(long)]
        param: String,
        file: String,
    },
    /// Limit of a diagram in an Alg or EM total, created and brute force.
    Limits {
        #[arg(long)]
        total: String,
        #[arg(long)]
        diagram: String,
        file: String,
    },
    /// Binary coproduct in an EM total, by Linton's recipe and brute force.
    Coproduct {
        #[arg(long)]
        total: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        file: String,
    },
    /// Free algebra along a transformation by the iterated-pushout swindle.
    Swindle {
        #[arg(long)]
        alpha: String,
        /// `X__xi`: the carrier and structure map of an F-algebra.
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = DEFAULT_SWINDLE_CAP)]
        cap: usize,
        file: String,
    },
    /// Pruned-fibration analysis and the comparison with EM of T^p.
    Recognize {
        #[arg(long)]
        fibration: String,
        /// Read an opfibration through opposite categories (default for co-totals).
        #[arg(long)]
        dual: bool,
        file: String,
    },
    /// Semidirect product of an action, its isomorphism type and adjunction.
    Semidirect {
        #[arg(long)]
        action: String,
        file: String,
    },
    /// The bundled example catalog.
    Examples {
        #[command(subcommand)]
        command: ExamplesCommand,
    },
}

#[derive(Debug, Subcommand)]
enum ExamplesCommand {
    List,
    Emit { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Total { .. } => "total",
            Command::Reindex { .. } => "reindex",
            Command::VerifyFib { .. } => "verify-fib",
            Command::CompareHat { .. } => "compare-hat",
            Command::Limits { .. } => "limits",
            Command::Coproduct { .. } => "coproduct",
            Command::Swindle { .. } => "swindle",
            Command::Recognize { .. } => "recognize",
            Command::Semidirect { .. } => "semidirect",
            Command::Examples {
                command: ExamplesCommand::List,
            } => "examples-list",
            Command::Examples {
                command: ExamplesCommand::Emit { .. },
            } => "examples-emit",
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Report,
}

fn dispatch(cmd: &Command, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Result<Done, Failure> {
    use commands as c;
    match cmd {
        Command::Check { file } => c::check(&c::load(file, stdin)?, file),
        Command::Total { param, flavor, file } => c::total(&c::load(file, stdin)?.1, param, flavor),
        Command::Reindex {
            param,
            along,
            algebra,
            file,
        } => c::reindex(&c::load(file, stdin)?.1, param, along, algebra),
        Command::VerifyFib { total, variance, file } => {
            c::verify_fib(&c::load(file, stdin)?.1, total, variance.as_deref())
        }
        Command::CompareHat { param, file } => c::compare_hat(&c::load(file, stdin)?.1, param),
        Command::Limits { total, diagram, file } => c::limits(&c::load(file, stdin)?.1, total, diagram),
        Command::Coproduct {
            total,
            left,
            right,
            file,
        } => c::coproduct(&c::load(file, stdin)?.1, total, left, right),
        Command::Swindle {
            alpha,
            algebra,
            cap,
            file,
        } => c::swindle(&c::load(file, stdin)?.1, alpha, algebra, *cap),
        Command::Recognize { fibration, dual, file } => c::recognize(&c::load(file, stdin)?.1, fibration, *dual),
        Command::Semidirect { action, file } => c::semidirect(&c::load(file, stdin)?.1, action),
        Command::Examples {
            command: ExamplesCommand::List,
        } => c::examples_list(),
        Command::Examples {
            command: ExamplesCommand::Emit { name },
        } => c::examples_emit(name),
    }
}

fn apply_size_guard() -> Result<(), Failure> {
    match std::env::var(SIZE_GUARD_VAR) {
        Err(_) => Ok(()),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                fibalg_core::fincat::set_size_guard(n);
                Ok(())
            }
            _ => Err(Failure::usage(format!(
                "{SIZE_GUARD_VAR} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

fn render_failure(f: &Failure) -> String {
    let mut out = String::new();
    for d in &f.diagnostics {
        match (d.line, d.column) {
            (Some(l), Some(c)) => out.push_str(&format!("{l}:{c}: {} error: {}\n", d.severity, d.message)),
            _ => out.push_str(&format!("{} error: {}\n", d.severity, d.message)),
        }
    }
    if let Some(w) = &f.witness {
        out.push_str(&format!("witness ({}): {}\n", w.kind, w.detail));
    }
    out
}

/// Runs one invocation; `stdin` is read only for the file `-`.
pub fn run_with<I, S>(argv: I, mut stdin: impl FnMut() -> std::io::Result<String>) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let args: Vec<String> = argv.iter().skip(1).cloned().collect();
    let wants_json = args.iter().any(|a| a == "--json");
    let start = Instant::now();
    let parsed = Cli::try_parse_from(&argv);
    let (command, json, result) = match parsed {
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                    report: envelope(
                        "help",
                        args,
                        Ok(Done {
                            payload: serde_json::Value::Null,
                            human: String::new(),
                            fail: None,
                        }),
                        0.0,
                    ),
                };
            }
            let text = e.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            ("usage".to_string(), wants_json, Err((Failure::usage(first), text)))
        }
        Ok(cli) => {
            let name = cli.command.name().to_string();
            let r = apply_size_guard()
                .and_then(|()| dispatch(&cli.command, &mut stdin))
                .map_err(|f| {
                    let text = render_failure(&f);
                    (f, text)
                });
            (name, cli.json, r)
        }
    };
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    let (human_out, human_err) = match &result {
        Ok(d) => match &d.fail {
            None => (d.human.clone(), String::new()),
            Some((_, w)) => (d.human.clone(), format!("witness ({}): {}\n", w.kind, w.detail)),
        },
        Err((_, text)) => (String::new(), text.clone()),
    };
    let report = envelope(&command, args, result.map_err(|(f, _)| f), ms);
    let code = report.exit_code;
    let (stdout, stderr) = if json {
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        (s, String::new())
    } else {
        (human_out, human_err)
    };
    Output {
        code,
        stdout,
        stderr,
        report,
    }
}

fn envelope(command: &str, args: Vec<String>, result: Result<Done, Failure>, ms: f64) -> Report {
    let (status, code, payload, diagnostics, witness) = match result {
        Ok(Done {
            payload, fail: None, ..
        }) => (Status::Ok, Code::Ok, payload, Vec::new(), None),
        Ok(Done {
            payload,
            fail: Some((code, w)),
            ..
        }) => (Status::Fail, code, payload, Vec::new(), Some(w)),
        Err(f) => (Status::Fail, f.code, serde_json::Value::Null, f.diagnostics, f.witness),
    };
    Report {
        schema: SCHEMA_VERSION.to_string(),
        command: command.to_string(),
        args,
        status,
        exit_code: code as i32,
        payload,
        diagnostics,
        witness,
        timing_ms: ms,
    }
}

/// Runs one invocation reading real stdin for `-`.
pub fn run<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    run_with(argv, || std::io::read_to_string(std::io::stdin()))
}
