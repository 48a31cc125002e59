use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use setfam_core::claims::SuiteItem;
use setfam_core::family::parse_ratio;
use setfam_core::shifting::shift_ad_extremis_traced;
use setfam_core::{
    check_claim, construct, desk_suite, for_each_maximal_intersecting, json as fjson, max_diversity_search, ClaimId,
    ClaimParams, ConstructionId, ConstructionName, Error, PropertyPredicate, Rational, RunConfig, SearchBudget,
    SetFamily, Verdict,
};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NO_INPUT: u8 = 66;
const EXIT_SOFTWARE: u8 = 70;

#[derive(Parser, Debug)]
#[command(name = "setfam", version, about = "Uniform set families: constructions, statistics, shifting and claim checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named family and print it as JSON.
    Construct(ConstructArgs),
    /// Print statistics of a family read from JSON.
    Stats {
        /// Input file; stdin when omitted or `-`.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Shift a family (or a cross-intersecting tuple) ad extremis.
    Shift(ShiftArgs),
    /// Check a claim, or run the acceptance suite.
    Verify(VerifyArgs),
    /// Budgeted searches.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Exhaustive enumeration of small cases.
    #[command(subcommand)]
    Enumerate(EnumerateCommand),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// One of hilton_milner, a_r, triangle, h_tilde, fano, full_star, lex.
    #[arg(long, value_parser = parse_name)]
    name: ConstructionName,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// `r` for a_r.
    #[arg(long)]
    r: Option<usize>,
    /// Center of full_star.
    #[arg(long)]
    i: Option<usize>,
    /// Number of sets for lex.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args, Debug)]
struct ShiftArgs {
    /// Comma-separated atoms such as `tau_ge=2`, `rho_le=1/2`, `gamma_ge=3@0`.
    #[arg(long, default_value = "true", value_parser = parse_predicate)]
    predicate: PropertyPredicate,
    /// Family files, one per member of the tuple; stdin when omitted.
    #[arg(long = "in")]
    inputs: Vec<PathBuf>,
    /// Print every applied shift as a JSON line before the result.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Desk,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Claim id, `C1` to `C26`.
    #[arg(long, value_parser = parse_claim, required_unless_present = "suite", conflicts_with = "suite")]
    claim: Option<ClaimId>,
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// Base seed for sampled modes; defaults to `SETFAM_SEED`, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    u: Option<usize>,
    /// A rational `p/q`.
    #[arg(long, value_parser = parse_rational)]
    eps: Option<Rational>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    /// Branch and bound for the largest diversity of an intersecting family.
    MaxDiversity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Wall-clock budget such as `60s`, `5m` or `500ms`.
        #[arg(long, value_parser = parse_duration)]
        budget: Option<Duration>,
        /// Node budget for the search tree.
        #[arg(long)]
        max_nodes: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum EnumerateCommand {
    /// Stream every maximal intersecting family as JSON lines.
    Maximal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Lift the feasibility guard.
        #[arg(long)]
        allow_large: bool,
        /// Print only the number of families.
        #[arg(long)]
        count: bool,
    },
}

fn parse_name(s: &str) -> Result<ConstructionName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_predicate(s: &str) -> Result<PropertyPredicate, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_claim(s: &str) -> Result<ClaimId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    parse_ratio(s).map_err(|e| e.to_string())
}

fn parse_duration(s: &str) -> Result<Duration, String> {
    let s = s.trim();
    let split = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    let (digits, unit) = s.split_at(split);
    let value: u64 = digits.parse().map_err(|_| format!("bad duration {s:?}"))?;
    match unit {
        "ms" => Ok(Duration::from_millis(value)),
        "" | "s" => Ok(Duration::from_secs(value)),
        "m" => Ok(Duration::from_secs(value * 60)),
        "h" => Ok(Duration::from_secs(value * 3600)),
        _ => Err(format!("bad duration unit in {s:?}; use ms, s, m or h")),
    }
}

fn read_input(path: Option<&PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display())),
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("cannot read stdin")?;
            Ok(text)
        }
    }
}

fn read_family(path: Option<&PathBuf>) -> anyhow::Result<SetFamily> {
    Ok(fjson::from_json(&read_input(path)?)?)
}

/// The effective configuration, on stderr, so every run can be replayed.
fn announce(config: serde_json::Value) {
    eprintln!("{}", json!({ "effective_config": config }));
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<Error>() {
        return match e {
            Error::HypothesisViolation(_) | Error::PreconditionViolation(_) | Error::Parse(_) | Error::EmptyFamily => {
                EXIT_DATA
            }
            Error::InvalidParameters(_) => EXIT_USAGE,
            Error::ResourceGuard(_) | Error::SamplingFailure(_) => EXIT_SOFTWARE,
        };
    }
    if err.downcast_ref::<io::Error>().is_some() {
        return EXIT_NO_INPUT;
    }
    EXIT_SOFTWARE
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match command {
        Command::Construct(a) => {
            let id = ConstructionId::from_parts(a.name, a.n, a.k, a.r, a.i, a.m)?;
            announce(serde_json::to_value(id)?);
            writeln!(out, "{}", fjson::to_json(&construct(id)?))?;
            0
        }
        Command::Stats { input } => {
            let f = read_family(input.as_ref())?;
            announce(json!({ "command": "stats", "in": input }));
            writeln!(out, "{}", serde_json::to_string(&f.stats()?)?)?;
            0
        }
        Command::Shift(a) => {
            let tuple: Vec<SetFamily> = if a.inputs.is_empty() {
                vec![read_family(None)?]
            } else {
                a.inputs.iter().map(|p| read_family(Some(p))).collect::<anyhow::Result<_>>()?
            };
            announce(json!({ "command": "shift", "predicate": a.predicate, "in": a.inputs, "trace": a.trace }));
            let mut trace_err = None;
            let result = shift_ad_extremis_traced(&tuple, &a.predicate, |step| {
                if a.trace && trace_err.is_none() {
                    if let Err(e) = serde_json::to_string(step).map_err(anyhow::Error::from).and_then(|line| {
                        writeln!(out, "{line}").map_err(anyhow::Error::from)
                    }) {
                        trace_err = Some(e);
                    }
                }
            })?;
            if let Some(e) = trace_err {
                return Err(e);
            }
            writeln!(out, "{}", serde_json::to_string(&result)?)?;
            0
        }
        Command::Verify(a) => verify(a, &mut out)?,
        Command::Search(SearchCommand::MaxDiversity { n, k, budget, max_nodes }) => {
            let budget = SearchBudget {
                max_nodes,
                time: budget,
            };
            announce(json!({
                "command": "search max-diversity", "n": n, "k": k,
                "budget_ms": budget.time.map(|d| d.as_millis()), "max_nodes": budget.max_nodes,
            }));
            writeln!(out, "{}", serde_json::to_string(&max_diversity_search(n, k, budget)?)?)?;
            0
        }
        Command::Enumerate(EnumerateCommand::Maximal { n, k, allow_large, count }) => {
            announce(json!({ "command": "enumerate maximal", "n": n, "k": k, "allow_large": allow_large }));
            let mut total = 0u64;
            let mut write_err = None;
            for_each_maximal_intersecting(n, k, allow_large, |f| {
                total += 1;
                if count {
                    return ControlFlow::Continue(());
                }
                match writeln!(out, "{}", fjson::to_json(&f)) {
                    Ok(()) => ControlFlow::Continue(()),
                    Err(e) => {
                        write_err = Some(e);
                        ControlFlow::Break(())
                    }
                }
            })?;
            if let Some(e) = write_err {
                // a closed pipe is a normal way to stop the stream
                if e.kind() != io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
                return Ok(0);
            }
            if count {
                writeln!(out, "{total}")?;
            } else {
                eprintln!("{total} maximal families");
            }
            0
        }
    };
    out.flush()?;
    Ok(code)
}

fn verify(a: VerifyArgs, out: &mut impl Write) -> anyhow::Result<u8> {
    let seed = match a.seed {
        Some(s) => s,
        None => match std::env::var("SETFAM_SEED") {
            Ok(v) => v.trim().parse().map_err(|_| Error::InvalidParameters(format!("SETFAM_SEED = {v:?} is not an integer")))?,
            Err(_) => 0,
        },
    };
    if a.jobs == 0 {
        return Err(Error::InvalidParameters("--jobs must be at least 1".into()).into());
    }
    let config = RunConfig { seed, jobs: a.jobs };
    let format = match a.format {
        Format::Text => "text",
        Format::Json => "json",
    };
    if a.suite.is_some() {
        announce(json!({ "command": "verify", "suite": "desk", "seed": seed, "jobs": a.jobs, "format": format }));
        let items = desk_suite(&config);
        match a.format {
            Format::Text => {
                for item in &items {
                    writeln!(out, "{}", item.summary_line())?;
                }
            }
            Format::Json => writeln!(out, "{}", serde_json::to_string(&items)?)?,
        }
        return Ok(suite_exit(&items));
    }
    let claim = a.claim.expect("clap enforces --claim or --suite");
    let params = ClaimParams {
        n: a.n,
        k: a.k,
        l: a.l,
        m: a.m,
        a: a.a,
        b: a.b,
        r: a.r,
        t: a.t,
        u: a.u,
        eps: a.eps,
        n_min: a.n_min,
        n_max: a.n_max,
        k_max: a.k_max,
        m_max: a.m_max,
        samples: a.samples,
    };
    announce(json!({
        "command": "verify", "claim": claim, "params": params, "seed": seed, "jobs": a.jobs, "format": format,
    }));
    let report = check_claim(claim, &params, &config)?;
    match a.format {
        Format::Text => {
            writeln!(out, "{}", report.summary_line())?;
            writeln!(out, "  {}", claim.statement())?;
            writeln!(out, "  params {}", report.params)?;
            for note in &report.notes {
                writeln!(out, "  note: {note}")?;
            }
            for w in &report.counterexamples {
                writeln!(out, "  counterexample: {w}")?;
            }
        }
        Format::Json => writeln!(out, "{}", report.to_json())?,
    }
    Ok(match report.verdict {
        Verdict::Holds => 0,
        Verdict::Refuted => 1,
        Verdict::Inconclusive => 2,
    })
}

fn suite_exit(items: &[SuiteItem]) -> u8 {
    if items.iter().any(|i| !i.passed) {
        1
    } else if items.iter().all(SuiteItem::definitive) {
        0
    } else {
        2
    }
}
