//! The `infperm` command line.

mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use self::render::{emit_report, Report, Status};
use crate::class::{class_member, classify_structural, ClassSpec, OrbitCensus};
use crate::factor::{self, FactorError, Target, DEFAULT_WINDOWS};
use crate::scheme::{Scheme, SchemeError, Word};

#[derive(Parser, Debug)]
#[command(
    name = "infperm",
    version,
    about = "Permutations of the integers as orbit schemes"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(clap::Args, Debug, Clone)]
pub struct WindowArg {
    /// Half-width N of the checked window [-N, N].
    #[arg(long, env = "INFPERM_DEFAULT_WINDOW", default_value_t = 256)]
    pub window: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a scheme's structure and bijectivity on a window.
    Validate {
        scheme: PathBuf,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Tabulate a scheme on a window.
    Window {
        scheme: PathBuf,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Orbit census of a scheme.
    Census { scheme: PathBuf },
    /// Order, local finiteness, ringedness and wildness.
    Classify {
        scheme: PathBuf,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Class membership of a scheme or a census file, e.g. --spec "S(w,2)".
    Member {
        input: PathBuf,
        #[arg(long)]
        spec: String,
    },
    /// Run the single factorization step toward a target.
    Factor {
        scheme: PathBuf,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Factor along the generating chain toward a target.
    Chain {
        scheme: PathBuf,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Compare a word with a scheme pointwise.
    Verify {
        scheme: PathBuf,
        word: PathBuf,
        #[command(flatten)]
        window: WindowArg,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Window { .. } => "window",
            Command::Census { .. } => "census",
            Command::Classify { .. } => "classify",
            Command::Member { .. } => "member",
            Command::Factor { .. } => "factor",
            Command::Chain { .. } => "chain",
            Command::Verify { .. } => "verify",
        }
    }
}

/// A usage or input error: exit code 2, nothing on standard output.
#[derive(Debug)]
pub struct UsageError(pub String);

fn read_input(path: &PathBuf) -> Result<String, UsageError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| UsageError(format!("reading standard input: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
    }
}

pub fn parse_scheme(text: &str) -> Result<Scheme, SchemeError> {
    Scheme::from_json(text)
}

fn load_scheme(path: &PathBuf) -> Result<Scheme, UsageError> {
    parse_scheme(&read_input(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Verification windows for a command-line window `n`.
fn windows_for(n: u64) -> Vec<u64> {
    let mut w: Vec<u64> = DEFAULT_WINDOWS.iter().copied().filter(|&d| d < n).collect();
    w.push(n);
    w
}

fn factor_report(
    name: &'static str,
    r: Result<factor::FactorizationResult, FactorError>,
) -> Report {
    match r {
        Ok(res) => {
            let status = Status::from_pass(res.passed());
            let mut payload = to_value(&res);
            payload["factors"] = json!(res.word.len());
            Report::new(name, status, payload)
        }
        Err(e) => Report::new(name, Status::Fail, json!({ "error": e.to_string() }))
            .with_diagnostic(e.to_string()),
    }
}

pub fn run_command(cmd: &Command) -> Result<Report, UsageError> {
    let name = cmd.name();
    Ok(match cmd {
        Command::Validate { scheme, window } => {
            let s = load_scheme(scheme)?;
            let r = s.validate(window.window);
            Report::new(name, Status::from_pass(r.passed()), to_value(&r))
        }
        Command::Window { scheme, window } => {
            let s = load_scheme(scheme)?;
            match s.window(window.window) {
                Ok(t) => Report::new(name, Status::Pass, to_value(&t)).with_table(t),
                Err(e) => Report::new(name, Status::Fail, json!({ "error": e.to_string() }))
                    .with_diagnostic(e.to_string()),
            }
        }
        Command::Census { scheme } => {
            let c = load_scheme(scheme)?.census();
            Report::new(
                name,
                Status::Pass,
                json!({ "census": to_value(&c), "support": to_value(&c.support_cardinality()) }),
            )
        }
        Command::Classify { scheme, window } => {
            let s = load_scheme(scheme)?;
            let r = classify_structural(&s, window.window);
            let mut payload = to_value(&r);
            payload["census"] = to_value(&s.census());
            Report::new(name, Status::Pass, payload)
        }
        Command::Member { input, spec } => {
            let spec: ClassSpec = spec.parse().map_err(UsageError)?;
            let text = read_input(input)?;
            let census = census_or_scheme(&text)
                .map_err(|e| UsageError(format!("{}: {e}", input.display())))?;
            let member = class_member(&census, &spec);
            Report::new(
                name,
                Status::from_pass(member),
                json!({ "spec": spec.to_string(), "member": member, "census": to_value(&census) }),
            )
        }
        Command::Factor {
            scheme,
            target,
            window,
        } => {
            let target: Target = target.parse().map_err(UsageError)?;
            let s = load_scheme(scheme)?;
            let w = windows_for(window.window);
            let r = match target {
                Target::LocalFinite => factor::factor_ringed_to_lf(&s, &w),
                Target::Ringed => factor::factor_involution_to_ringed(&s, &w),
                Target::Wild => factor::factor_lf_to_wild(&s, &w),
                Target::SOmega(n) => factor::factor_order_n(&s, n, &w),
            };
            factor_report(name, r)
        }
        Command::Chain {
            scheme,
            target,
            window,
        } => {
            let target: Target = target.parse().map_err(UsageError)?;
            let s = load_scheme(scheme)?;
            factor_report(
                name,
                factor::chain_factor(&s, target, &windows_for(window.window)),
            )
        }
        Command::Verify {
            scheme,
            word,
            window,
        } => {
            let s = load_scheme(scheme)?;
            let text = read_input(word)?;
            let w = Word::from_json(&text)
                .map_err(|e| UsageError(format!("{}: {e}", word.display())))?;
            let v = factor::verify(&s, &w, &windows_for(window.window));
            let mut payload = to_value(&v);
            payload["factors"] = json!(w.len());
            Report::new(name, Status::from_pass(v.passed()), payload)
        }
    })
}

/// A census file has a top-level `counts` object; anything else is a scheme.
fn census_or_scheme(text: &str) -> Result<OrbitCensus, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    if v.get("counts").is_some() {
        serde_json::from_value(v).map_err(|e| e.to_string())
    } else {
        parse_scheme(text)
            .map(|s| s.census())
            .map_err(|e| e.to_string())
    }
}

/// Runs the parsed command line, printing the report. Returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match run_command(&cli.command) {
        Ok(report) => {
            if let Some(d) = &report.diagnostic {
                eprintln!("infperm {}: {d}", report.command);
            }
            // a closed pipe is not an error worth reporting
            let _ = writeln!(io::stdout().lock(), "{}", emit_report(&report, cli.format));
            report.status.exit_code()
        }
        Err(UsageError(msg)) => {
            eprintln!("infperm: {msg}");
            2
        }
    }
}
