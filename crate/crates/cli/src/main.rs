//! `dotpairs`: batch front end for counting, constructing, verifying and scanning.
//!
//! Exit codes: 0 success, 1 malformed input file, 2 invalid parameters or
//! scalars, 3 a verified bound was violated.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use dotpairs::algebra::{prime_power, Elem};
use dotpairs::bounds::{self, BoundReport};
use dotpairs::constructions;
use dotpairs::counting::{self, BRUTE_FORCE_LIMIT};
use dotpairs::io;
use dotpairs::{Ring, RingKind, RingSpec};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<dotpairs::Error> for CliError {
    fn from(e: dotpairs::Error) -> Self {
        match e {
            dotpairs::Error::Malformed(_) | dotpairs::Error::Io(_) | dotpairs::Error::Json(_) => {
                CliError::Malformed(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "dotpairs",
    version,
    about = "Pairs of dot products over finite fields and Z/p^l"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count triples (u, v, w) with u.v = alpha and u.w = beta.
    Count(CountArgs),
    /// Generate an extremal point set in the plane.
    Construct(ConstructArgs),
    /// Check one of the character-sum or remainder inequalities.
    Verify(VerifyArgs),
    /// Random-set density scan with CSV and JSONL output.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Fast,
    Char,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    set: PathBuf,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    #[arg(long, value_enum, default_value = "fast")]
    method: Method,
    /// Reduce out-of-range coordinates instead of rejecting them.
    #[arg(long)]
    reduce: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Sharp,
    Zero,
}

fn parse_kind(s: &str) -> Result<RingKind, String> {
    s.parse().map_err(|e: dotpairs::Error| e.to_string())
}

#[derive(Args)]
struct RingArgs {
    #[arg(long)]
    q: u64,
    /// prime-field, extension-field or residue-ring. Defaults to prime-field
    /// for prime q and residue-ring otherwise.
    #[arg(long, value_parser = parse_kind)]
    kind: Option<RingKind>,
}

impl RingArgs {
    fn ring(&self) -> CliResult<Arc<Ring>> {
        let (p, e) = prime_power(self.q)
            .ok_or_else(|| CliError::Usage(format!("q = {} is not a prime power", self.q)))?;
        let kind = self.kind.unwrap_or(if e == 1 {
            RingKind::PrimeField
        } else {
            RingKind::ResidueRing
        });
        let spec = match kind {
            RingKind::PrimeField => RingSpec::prime_field(p),
            RingKind::ResidueRing => RingSpec::residue_ring(p, e),
            RingKind::ExtensionField => RingSpec::extension_field(p, e, None),
        };
        if kind == RingKind::PrimeField && e != 1 {
            return Err(CliError::Usage(format!("q = {} is not prime", self.q)));
        }
        Ok(Ring::shared(spec)?)
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    construction: Construction,
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Ell1,
    Ell2,
    Remainder,
    ZqL1,
    ZqL2,
    ZqRemainder,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    which: Which,
    #[arg(long)]
    set: PathBuf,
    /// alpha, or gamma for the single-scalar lemmas.
    #[arg(long, alias = "gamma")]
    alpha: String,
    #[arg(long)]
    beta: Option<String>,
    /// JSONL log to append the report to.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    reduce: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long)]
    d: usize,
    /// Comma-separated density exponents e, with n = round(q^e).
    #[arg(long, value_delimiter = ',', required = true)]
    exponents: Vec<f64>,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    /// CSV path; JSONL goes next to it with a .jsonl extension.
    #[arg(long)]
    out: PathBuf,
    /// Record wall-clock time per trial (otherwise elapsed_ms is 0 and
    /// output is reproducible byte for byte).
    #[arg(long)]
    timing: bool,
}

fn scalar(ring: &Ring, text: &str) -> CliResult<Elem> {
    Ok(ring.parse_scalar(text)?)
}

fn run_count(args: &CountArgs) -> CliResult<u8> {
    let set = io::read_point_set(&args.set, args.reduce)?;
    let ring = set.ring();
    let alpha = scalar(ring, &args.alpha)?;
    let beta = scalar(ring, &args.beta)?;
    match args.method {
        Method::Brute => {
            if set.len() > BRUTE_FORCE_LIMIT {
                return Err(CliError::Usage(format!(
                    "brute force is limited to n <= {BRUTE_FORCE_LIMIT} (n = {})",
                    set.len()
                )));
            }
            println!("{}", counting::brute_force_count(&set, alpha, beta));
        }
        Method::Fast => println!("{}", counting::fast_count(&set, alpha, beta)),
        Method::Char => {
            let dec = counting::character_decomposition(&set, alpha, beta);
            println!("{}", dec.total);
            println!("I = {}", dec.term_i);
            println!("II = {}", dec.term_ii);
            println!("III = {}", dec.term_iii);
        }
    }
    Ok(0)
}

fn run_construct(args: &ConstructArgs) -> CliResult<u8> {
    let ring = args.ring.ring()?;
    let set = match args.construction {
        Construction::Sharp => {
            fn need<'a>(v: &'a Option<String>, name: &str) -> CliResult<&'a str> {
                v.as_deref()
                    .ok_or_else(|| CliError::Usage(format!("sharp construction needs --{name}")))
            }
            let alpha = scalar(&ring, need(&args.alpha, "alpha")?)?;
            let beta = scalar(&ring, need(&args.beta, "beta")?)?;
            let set = constructions::sharp_construction(ring.clone(), args.n, alpha, beta)?;
            println!(
                "guaranteed lower bound: {}",
                constructions::sharp_lower_bound(args.n)
            );
            set
        }
        Construction::Zero => {
            let set = constructions::zero_construction(ring.clone(), args.n)?;
            println!(
                "exact count Pi_(0,0): {}",
                constructions::zero_exact_count(args.n)
            );
            set
        }
    };
    io::write_point_set(&args.out, &set)?;
    println!("wrote {} points to {}", set.len(), args.out.display());
    Ok(0)
}

fn print_report(report: &BoundReport) {
    println!("{}", report.summary());
    for check in &report.side_checks {
        println!(
            "  {} [{}]: |{}| vs {:.2} -> {}",
            check.label,
            if check.binding {
                "binding"
            } else {
                "informational"
            },
            check.lhs,
            check.rhs,
            if check.holds { "holds" } else { "fails" }
        );
    }
    if !report.notes.is_empty() {
        println!("  note: {}", report.notes);
    }
}

fn run_verify(args: &VerifyArgs) -> CliResult<u8> {
    let set = io::read_point_set(&args.set, args.reduce)?;
    let ring = set.ring();
    let first = scalar(ring, &args.alpha)?;
    let second = || -> CliResult<Elem> {
        let text = args
            .beta
            .as_deref()
            .ok_or_else(|| CliError::Usage("this bound needs --beta".into()))?;
        scalar(ring, text)
    };
    let report = match args.which {
        Which::Ell1 => bounds::verify_ell1(&set, first)?,
        Which::Ell2 => bounds::verify_ell2(&set, first)?,
        Which::Remainder => bounds::verify_remainder_field(&set, first, second()?)?,
        Which::ZqL1 => bounds::verify_zq_l1(&set, first)?,
        Which::ZqL2 => bounds::verify_zq_l2(&set, first)?,
        Which::ZqRemainder => bounds::verify_remainder_ring(&set, first, second()?)?,
    };
    print_report(&report);
    if let Some(path) = &args.out {
        io::append_jsonl(path, &report)?;
    }
    Ok(if report.holds { 0 } else { 3 })
}

fn run_scan(args: &ScanArgs) -> CliResult<u8> {
    let ring = args.ring.ring()?;
    let alpha = scalar(&ring, &args.alpha)?;
    let beta = scalar(&ring, &args.beta)?;
    let mut records = bounds::density_scan(
        ring,
        args.d,
        &args.exponents,
        args.trials,
        args.seed,
        alpha,
        beta,
    )?;
    if !args.timing {
        for r in &mut records {
            r.elapsed_ms = 0;
        }
    }
    let jsonl_path = args.out.with_extension("jsonl");
    let create = |path: &Path| {
        std::fs::File::create(path)
            .map(std::io::BufWriter::new)
            .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
    };
    io::write_csv(create(&args.out)?, &records)?;
    io::write_jsonl(create(&jsonl_path)?, &records)?;
    let over = records
        .iter()
        .filter(|r| r.remainder.abs().to_f64() > r.remainder_bound)
        .count();
    println!(
        "wrote {} records to {} and {}",
        records.len(),
        args.out.display(),
        jsonl_path.display()
    );
    if over > 0 {
        println!("{over} record(s) exceed the remainder bound");
        return Ok(3);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count(a) => run_count(a),
        Command::Construct(a) => run_construct(a),
        Command::Verify(a) => run_verify(a),
        Command::Scan(a) => run_scan(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
