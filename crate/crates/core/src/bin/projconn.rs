use std::io::{IsTerminal, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use projconn::verify::{self, TextStyle};
use projconn::{Error, Variables};

/// Exact verification of algebraic connections on projective modules over
/// hypersurface rings.
#[derive(Parser)]
#[command(name = "projconn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full check list for one example and parameter triple.
    Verify(VerifyArgs),
    /// Verify every parameter triple up to a bound.
    Sweep(SweepArgs),
    /// Print the normal form of an expression modulo a polynomial.
    Eval(EvalArgs),
    /// Static information about the catalog.
    Report(ReportArgs),
}

#[derive(Args)]
struct Output {
    /// Emit JSON instead of aligned text.
    #[arg(long)]
    json: bool,
    /// Worker threads.
    #[arg(long, value_name = "N", default_value_t = default_parallelism())]
    parallel: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Example id: ellipsoid or sphere.
    example: String,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    r: u32,
    /// Include per-check timings (text and JSON).
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    /// Example id: ellipsoid or sphere.
    example: String,
    /// Upper bound for p, q and r.
    #[arg(long)]
    max: u32,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EvalArgs {
    /// Polynomial expression, e.g. "(y+i*z)*(y-i*z)+x^2".
    expression: String,
    /// Defining polynomial of the hypersurface.
    #[arg(long = "mod", visible_alias = "modulus", value_name = "POLY")]
    modulus: String,
    /// Comma-separated variable names.
    #[arg(long, default_value = "x,y,z")]
    vars: String,
}

#[derive(Args)]
struct ReportArgs {
    /// List every check id per example.
    #[arg(long, required = true)]
    list_checks: bool,
    /// Restrict to one example.
    #[arg(long)]
    example: Option<String>,
    #[arg(long)]
    json: bool,
}

fn default_parallelism() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn color_enabled() -> bool {
    let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
    !no_color && std::io::stdout().is_terminal()
}

/// Errors caused by the invocation rather than by a failed check.
fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParameter(_)
            | Error::UnknownExample(_)
            | Error::UnknownCheck { .. }
            | Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::NegativeExponent { .. }
            | Error::InvalidModulus(_)
            | Error::DivisionByZero
    )
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let mut out = String::new();
    let code = match cli.command {
        Command::Verify(a) => {
            if a.output.parallel == 0 {
                return Err(Error::InvalidParameter(
                    "--parallel must be at least 1".into(),
                ));
            }
            let rep = verify::verify(&a.example, a.p, a.q, a.r, a.output.parallel)?;
            out = match (a.output.json, a.timings) {
                (true, false) => rep.to_json() + "\n",
                (true, true) => rep.to_json_with_timings() + "\n",
                (false, timings) => rep.render_text(&TextStyle {
                    color: color_enabled(),
                    timings,
                }),
            };
            if rep.passed() {
                0
            } else {
                1
            }
        }
        Command::Sweep(a) => {
            if a.output.parallel == 0 {
                return Err(Error::InvalidParameter(
                    "--parallel must be at least 1".into(),
                ));
            }
            let rep = verify::sweep(&a.example, a.max, a.max, a.max, a.output.parallel)?;
            out = if a.output.json {
                rep.to_json() + "\n"
            } else {
                rep.render_text(&TextStyle {
                    color: color_enabled(),
                    timings: false,
                })
            };
            if rep.passed() {
                0
            } else {
                1
            }
        }
        Command::Eval(a) => {
            let vars = Variables::parse_list(&a.vars)?;
            out.push_str(&verify::eval(&a.expression, &a.modulus, &vars)?);
            out.push('\n');
            0
        }
        Command::Report(a) => {
            let examples: Vec<&str> = match &a.example {
                Some(e) => vec![e.as_str()],
                None => vec![projconn::catalog::ELLIPSOID, projconn::catalog::SPHERE],
            };
            let mut listing = serde_json::Map::new();
            for ex in examples {
                let names = verify::check_names(ex)?;
                if a.json {
                    listing.insert(ex.to_string(), serde_json::json!(names));
                } else {
                    for n in names {
                        out.push_str(&format!("{ex}\t{n}\n"));
                    }
                }
            }
            if a.json {
                out = serde_json::to_string_pretty(&listing).expect("listing serializes") + "\n";
            }
            0
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    Ok(ExitCode::from(code))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
