//! `rtglab`: analyze instances, run the verification suites over the
//! catalog, and convert reports.
//!
//! Exit codes: 0 when everything holds, 1 on a property violation, 2 on
//! usage or input errors.

mod payload;
mod table;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rtglab_core::exec::Execution;
use rtglab_core::generators::{cyclic_multipliers, enumerate_instances, random_instance, schreier_product};
use rtglab_core::group::DEFAULT_ORDER_BOUND;
use rtglab_core::haar::Mode;
use rtglab_core::verify::{verify_catalog, Fault, Suite, VerificationReport};
use rtglab_core::RtGroup;

#[derive(Parser)]
#[command(name = "rtglab", version, about = "Finite-model lab for right topological groups")]
struct Cli {
    /// Largest group order drawn from the catalog.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    max_order: usize,
    /// Seed for `analyze` without an instance file.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file (a directory for `enumerate`); standard output otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Sigma,
    Functions,
    Measures,
    Haar,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Sigma => Suite::Sigma,
            SuiteArg::Functions => Suite::Functions,
            SuiteArg::Measures => Suite::Measures,
            SuiteArg::Haar => Suite::Haar,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Relaxed,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    SigmaBit,
    HaarWeight,
}

#[derive(Subcommand)]
enum Command {
    /// Report on one instance: Λ(G), σ, σσ, N(G), dimensions, Haar measure.
    Analyze {
        /// Instance JSON; a seeded catalog instance when omitted.
        path: Option<PathBuf>,
        /// Add function-space bases and Fix results.
        #[arg(long)]
        functions: bool,
    },
    /// Run a verification suite over the catalog.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Run instances one after another.
        #[arg(long)]
        sequential: bool,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
    /// Write every catalog instance to its own JSON file under `--out`.
    Enumerate,
    /// Normal systems, their certificates and the constructed Haar measure.
    Haar {
        path: PathBuf,
        /// Only this kind of system; both when omitted.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Dimensions of the measure spaces and the Haar measure.
    Measures { path: PathBuf },
    /// Group JSON of `Z_n ⋊ {v -> u v}` for the listed multipliers `u`.
    MakeSchreier {
        /// Base group, `zN`.
        #[arg(long)]
        base: String,
        #[arg(long, value_delimiter = ',', required = true)]
        auts: Vec<usize>,
    },
    /// Re-emit a stream of verification reports as JSON or CSV.
    Report {
        /// Report file; standard input when omitted.
        input: Option<PathBuf>,
    },
}

/// A usage or input error, reported on standard error with exit code 2.
struct Failure(String);

impl From<rtglab_core::Error> for Failure {
    fn from(e: rtglab_core::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(e.to_string())
    }
}

struct Done {
    stdout: String,
    violated: bool,
}

impl Done {
    fn ok(stdout: String) -> Self {
        Done { stdout, violated: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = run(&cli).and_then(|done| {
        emit(cli.out.as_deref().filter(|_| !matches!(cli.command, Command::Enumerate)), &done.stdout)?;
        Ok(done.violated)
    });
    match result {
        Ok(violated) => {
            if matches!(cli.command, Command::Verify { .. }) {
                eprintln!("{}", serde_json::json!({ "timing": { "elapsed_ms": started.elapsed().as_millis() as u64 } }));
            }
            ExitCode::from(if violated { 1 } else { 0 })
        }
        Err(Failure(msg)) => {
            eprintln!("rtglab: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut so = io::stdout().lock();
            match so.write_all(text.as_bytes()).and_then(|_| so.flush()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn load_instance(path: &Path) -> Result<RtGroup, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    RtGroup::from_json(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("payload serialises");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<Done, Failure> {
    match &cli.command {
        Command::Analyze { path, functions } => {
            let rtg = match path {
                Some(p) => load_instance(p)?,
                None => random_instance(cli.seed, cli.max_order)?,
            };
            Ok(Done::ok(pretty(&payload::analyze(&rtg, *functions)?)))
        }
        Command::Verify { suite, sequential, inject_fault } => {
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            let fault = inject_fault.map(|f| match f {
                FaultArg::SigmaBit => Fault::SigmaBit,
                FaultArg::HaarWeight => Fault::HaarWeight,
            });
            let report = verify_catalog((*suite).into(), cli.max_order, exec, fault)?;
            for r in report.instances.iter().flat_map(|i| &i.records).filter_map(|r| r.witness.as_ref()) {
                eprintln!("violation: {} on {}: {}", r.property, r.instance, r.detail);
            }
            let stdout = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => table::to_csv(std::slice::from_ref(&report))?,
            };
            Ok(Done { stdout, violated: !report.passed() })
        }
        Command::Enumerate => {
            let dir = cli.out.as_deref().ok_or_else(|| Failure("enumerate needs --out <dir>".into()))?;
            fs::create_dir_all(dir).map_err(|e| Failure(format!("cannot create {}: {e}", dir.display())))?;
            let mut files = Vec::new();
            for (i, rtg) in enumerate_instances(cli.max_order)?.iter().enumerate() {
                let name = payload::file_name(i, rtg);
                let path = dir.join(&name);
                fs::write(&path, rtg.to_json() + "\n").map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))?;
                files.push(name);
            }
            Ok(Done::ok(pretty(&serde_json::json!({ "count": files.len(), "files": files }))))
        }
        Command::Haar { path, mode } => {
            let rtg = load_instance(path)?;
            let modes = match mode {
                Some(ModeArg::Strict) => vec![Mode::Strict],
                Some(ModeArg::Relaxed) => vec![Mode::Relaxed],
                None => vec![Mode::Strict, Mode::Relaxed],
            };
            let (report, agree) = payload::haar(&rtg, &modes)?;
            Ok(Done { stdout: pretty(&report), violated: !agree })
        }
        Command::Measures { path } => Ok(Done::ok(pretty(&payload::measures(&load_instance(path)?)?))),
        Command::MakeSchreier { base, auts } => {
            let n: usize = base
                .strip_prefix(['z', 'Z'])
                .and_then(|s| s.parse().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Failure(format!("base must look like z12, got `{base}`")))?;
            if let Some(u) = auts.iter().find(|&&u| u >= n) {
                return Err(Failure(format!("multiplier {u} is not below {n}")));
            }
            let g = schreier_product(&cyclic_multipliers(n, auts))?;
            if g.order() > cli.max_order {
                return Err(Failure(format!("order {} exceeds --max-order {}", g.order(), cli.max_order)));
            }
            Ok(Done::ok(g.to_json() + "\n"))
        }
        Command::Report { input } => {
            let mut text = String::new();
            match input {
                Some(p) => text = fs::read_to_string(p).map_err(|e| Failure(format!("cannot read {}: {e}", p.display())))?,
                None => {
                    io::stdin().read_to_string(&mut text)?;
                }
            }
            let reports = read_reports(&text)?;
            let stdout = match cli.format {
                Format::Json => pretty(&reports),
                Format::Csv => table::to_csv(&reports)?,
            };
            Ok(Done::ok(stdout))
        }
    }
}

/// Zero or more reports: concatenated objects or one JSON array of them.
fn read_reports(text: &str) -> Result<Vec<VerificationReport>, Failure> {
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(text).map_err(|e| Failure(format!("malformed report stream: {e}")));
    }
    serde_json::Deserializer::from_str(text)
        .into_iter::<VerificationReport>()
        .collect::<Result<_, _>>()
        .map_err(|e| Failure(format!("malformed report stream: {e}")))
}
