//! Command-line experiment runner on top of `lmeasure-core`.
//!
//! Each subcommand validates its parameters, computes one long-format table
//! and writes it as CSV or JSON. Exit codes: 0 on success, 1 for invalid
//! input, 2 when a computation fails (truncation cap, quadrature, IO).

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod output;

use output::{Format, Metadata, Table};

#[derive(Debug, Parser)]
#[command(name = "lmeasure", version, about = "Random Dirichlet characters under L-measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed of the counter-based stream used by sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Target truncation error for L-values.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Series length for the congruence, Bohr-Jessen series and uniform routes.
    #[arg(long, global = true)]
    pub nmax: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for fan-out commands.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the characters mod q.
    Table {
        #[arg(long)]
        q: u64,
    },
    /// Weights of a measure on the characters mod q.
    Weights {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        measure: MeasureArgs,
    },
    /// Draw characters and report chi(m).
    Sample {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        measure: MeasureArgs,
        #[arg(long, default_value_t = 2)]
        m: u64,
        #[arg(long, default_value_t = 1000)]
        count: u64,
    },
    /// E[chi(m)^k conj(chi(m))^l] by one or all methods.
    Moment {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        measure: MeasureArgs,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, value_enum, default_value_t = MethodChoice::All)]
        method: MethodChoice,
    },
    /// Riemann-sum moment against its limit and bound over several moduli.
    ScanQ {
        #[arg(long, value_delimiter = ',', required = true)]
        qs: Vec<u64>,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
    },
    /// Joint moment over several bases, brute force and limit.
    Joint {
        #[command(flatten)]
        moduli: Moduli,
        #[command(flatten)]
        measure: MeasureArgs,
        #[command(flatten)]
        exps: JointExponents,
    },
    /// Uniform-measure moments against the congruence indicator.
    Uniform {
        #[command(flatten)]
        moduli: Moduli,
        #[command(flatten)]
        exps: JointExponents,
    },
    /// Moments of the Bohr-Jessen law by product, series and Monte Carlo.
    BohrJessen {
        #[arg(long, default_value_t = 2.0)]
        t: f64,
        #[arg(long, default_value_t = 1)]
        k: u64,
        /// Prime cutoff of the product and of the sampled law.
        #[arg(long, default_value_t = 1000)]
        pmax: u64,
        /// Monte Carlo draws; 0 skips sampling.
        #[arg(long, default_value_t = 0)]
        count: u64,
        /// Also report the uniform average of |L_t|^{2k} mod q.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Murnaghan-Nakayama values against coefficient extraction.
    PlancherelVerify {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureChoice {
    L,
    Uniform,
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    All,
    Bruteforce,
    Riemann,
    Congruence,
    Limit,
}

/// `p=v,...` overrides of Euler coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Overrides(pub BTreeMap<u64, f64>);

fn parse_overrides(text: &str) -> Result<Overrides, String> {
    let mut map = BTreeMap::new();
    for item in text.split(',').filter(|t| !t.trim().is_empty()) {
        let (p, v) = item.split_once('=').ok_or_else(|| format!("expected p=v, got {item:?}"))?;
        let p: u64 = p.trim().parse().map_err(|e| format!("bad prime {p:?}: {e}"))?;
        let v: f64 = v.trim().parse().map_err(|e| format!("bad coefficient {v:?}: {e}"))?;
        if map.insert(p, v).is_some() {
            return Err(format!("prime {p} given twice"));
        }
    }
    Ok(Overrides(map))
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[arg(long, value_enum, default_value_t = MeasureChoice::L)]
    pub measure: MeasureChoice,
    /// Exponent of the L-measure, and of the p^{-s} tail of the a-measure.
    #[arg(long, default_value_t = 2.0)]
    pub s: f64,
    /// Euler coefficient overrides for `--measure a`, e.g. `2=0.3,3=0.2`.
    #[arg(long, value_parser = parse_overrides)]
    pub a: Option<Overrides>,
}

#[derive(Debug, Clone, Args)]
pub struct Moduli {
    #[arg(long, conflicts_with = "qs", required_unless_present = "qs")]
    pub q: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub qs: Vec<u64>,
}

impl Moduli {
    pub fn list(&self) -> Vec<u64> {
        match self.q {
            Some(q) => vec![q],
            None => self.qs.clone(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct JointExponents {
    #[arg(long, value_delimiter = ',', required = true)]
    pub bases: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub ks: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub ls: Vec<u32>,
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Computation(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Computation(m) => write!(f, "computation failed: {m}"),
        }
    }
}

impl From<lmeasure_core::Error> for CliError {
    fn from(e: lmeasure_core::Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Computation(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Computation(e.to_string())
    }
}

/// Parse `args`, run, and return the process exit code. Diagnostics go to
/// stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let argv = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("lmeasure: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, argv: Vec<String>) -> Result<(), CliError> {
    if cli.threads == Some(0) {
        return Err(CliError::Validation("--threads must be at least 1".into()));
    }
    let (meta, table) = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Computation(e.to_string()))?
            .install(|| commands::dispatch(cli, argv)),
        None => commands::dispatch(cli, argv),
    }?;
    let written = match &cli.out {
        Some(path) => emit(BufWriter::new(File::create(path)?), cli.format, &meta, &table),
        None => emit(io::stdout().lock(), cli.format, &meta, &table),
    };
    match written {
        // a closed downstream pipe (`| head`) is not a failure
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn emit<W: Write>(out: W, format: Format, meta: &Metadata, table: &Table) -> io::Result<()> {
    match format {
        Format::Csv => output::write_csv(out, meta, table),
        Format::Json => output::write_json(out, meta, table),
    }
}
