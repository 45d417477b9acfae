use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use halphen::Rational;
use halphen_cli::config::{parse_suites, ConfigError, Format, Mode, RunConfig, Suite};
use halphen_cli::ledger::emit;
use halphen_cli::tables::{self, ExportPart};

#[derive(Parser)]
#[command(name = "halphen", version, about = "Exact verification of the Hesse-type index-2 Halphen pencil")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// json, csv or text
    #[arg(long, default_value = "text", global = true)]
    format: String,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print the ledger
    Verify(VerifyArgs),
    /// List lattice classes
    Enumerate {
        #[arg(value_enum)]
        what: Enumerable,
        #[command(flatten)]
        out: Output,
    },
    /// Log Chern numbers and Harbourne constants of the arrangements
    Invariants {
        #[command(flatten)]
        out: Output,
    },
    /// The incidence code of the configuration over GF(4^k)
    Code {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Polynomials of the symbolic configuration
    Export {
        #[arg(value_enum, default_value = "all")]
        what: Exportable,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Enumerable {
    Minus1,
    Minus2,
    Index3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Exportable {
    All,
    Conics,
    Lines,
    Sextic,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run: incidence, pencil, lattice, torsion, invariants, code, all
    #[arg(value_name = "SUITE")]
    targets: Vec<String>,
    /// Comma-separated suites, combined with the positional ones
    #[arg(long)]
    suites: Option<String>,
    /// symbolic or specialized
    #[arg(long, default_value = "symbolic")]
    mode: String,
    /// Rational value of a for the prime-field checks
    #[arg(long, default_value = "2")]
    a: String,
    /// Single prime for the prime-field checks
    #[arg(long)]
    prime: Option<u64>,
    /// Bound on primes in the torsion scan
    #[arg(long, default_value_t = 500)]
    p_max: u64,
    /// Single torsion order (4, 5 or 9)
    #[arg(long)]
    m: Option<u64>,
    /// Also check the torsion loci over GF(p^2)
    #[arg(long)]
    with_quadratic_extension: bool,
    /// Seed for the randomized checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Degree cap of the brute-force (-1)-class search
    #[arg(long, default_value_t = 12)]
    d_max: i64,
    /// Stop at the first failure
    #[arg(long)]
    fail_fast: bool,
    /// Worker threads for parallel suite internals
    #[arg(long)]
    jobs: Option<usize>,
    /// Record wall times in the ledger
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    out: Output,
}

fn config(v: VerifyArgs) -> Result<RunConfig, ConfigError> {
    let mut suites: Vec<Suite> = Vec::new();
    for s in &v.targets {
        suites.extend(parse_suites(s)?);
    }
    if let Some(list) = &v.suites {
        suites.extend(parse_suites(list)?);
    }
    if suites.is_empty() {
        suites = Suite::ALL.to_vec();
    }
    let a: Rational = v.a.parse().map_err(|_| ConfigError::Value("a", v.a.clone()))?;
    Ok(RunConfig {
        mode: v.mode.parse::<Mode>()?,
        a,
        prime: v.prime,
        seed: v.seed,
        suites,
        output: v.out.output,
        format: v.out.format.parse()?,
        fail_fast: v.fail_fast,
        jobs: v.jobs,
        d_max: v.d_max,
        p_max: v.p_max,
        torsion_m: v.m,
        quadratic_extension: v.with_quadratic_extension,
        timings: v.timings,
    })
}

fn write(out: &Output, f: impl FnOnce(Format) -> halphen::Result<String>) -> Result<i32, ConfigError> {
    let format: Format = out.format.parse()?;
    match f(format) {
        Ok(text) => {
            emit(&text, out.output.as_deref()).map_err(|e| ConfigError::Output(out.output.clone().unwrap_or_default(), e))?;
            Ok(0)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(v) => config(v).and_then(halphen_cli::verify),
        Command::Enumerate { what, out } => write(&out, |f| {
            Ok(match what {
                Enumerable::Minus1 => tables::minus1()?,
                Enumerable::Minus2 => tables::minus2(false)?,
                Enumerable::Index3 => tables::minus2(true)?,
            }
            .render(f))
        }),
        Command::Invariants { out } => write(&out, |f| Ok(tables::invariants()?.render(f))),
        Command::Code { k, out } => write(&out, |f| tables::code(k, f)),
        Command::Export { what, out } => {
            let part = match what {
                Exportable::All => ExportPart::All,
                Exportable::Conics => ExportPart::Conics,
                Exportable::Lines => ExportPart::Lines,
                Exportable::Sextic => ExportPart::Sextic,
            };
            write(&out, |f| tables::export(part, f))
        }
    };
    match code {
        Ok(c) => ExitCode::from(c as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
