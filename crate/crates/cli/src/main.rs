mod commands;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use farey_poly::bench::PathKind;
use farey_poly::pleating::DEFAULT_TOL;
use farey_poly::ring::{GeneratorParams, Order};
use farey_poly::Slope;

/// Farey words, Farey polynomials and Riley slice point clouds.
#[derive(Debug, Parser)]
#[command(name = "farey", version)]
struct Cli {
    /// More log output (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Farey word of a slope.
    Word {
        #[arg(long)]
        slope: Slope,
        #[arg(long, value_enum, default_value_t = WordFormat::Text)]
        format: WordFormat,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Emit a Farey polynomial as JSON.
    Poly {
        #[arg(long)]
        slope: Slope,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Emit a homogeneous Farey polynomial as JSON.
    Homog {
        #[arg(long)]
        slope: Slope,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Evaluate Φ_{1/q}(z) in closed form, falling back to the recurrence.
    ClosedForm {
        #[arg(long)]
        q: u32,
        /// `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        z: ComplexArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare the recursion against the matrix-trace oracle.
    Verify {
        #[arg(long, default_value_t = 12)]
        qmax: u64,
        #[arg(long, value_enum, default_value_t = VerifyRing::Generic)]
        ring: VerifyRing,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Roots of Φ + 2 for every slope up to a denominator.
    Slice {
        #[arg(long)]
        qmax: u64,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        roots: RootArgs,
    },
    /// Roots of Φ + 2 along the convergents of a continued fraction.
    CuspPath {
        /// Terms `a0,a1,…`.
        #[arg(long)]
        cf: String,
        /// Repeat the last K terms forever.
        #[arg(long, value_name = "K", default_value_t = 0)]
        periodic: usize,
        /// Number of convergents after the integer part.
        #[arg(long)]
        depth: Option<usize>,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        roots: RootArgs,
    },
    /// Scan the square-decomposition conjecture.
    Conjecture {
        #[arg(long, default_value_t = 40)]
        qmax: u64,
        /// Colour-coded Farey tree.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Exit with status 2 when any slope fails.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check the fixed points and eigendata of the cubic map.
    Dynsys {
        #[command(flatten)]
        out: OutArgs,
    },
    /// Count and time the oracle against the recursion.
    Bench {
        #[arg(long, default_value = "fibonacci")]
        kind: PathKind,
        #[arg(long, default_value_t = 15)]
        size: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RingArgs {
    #[arg(long, value_enum, default_value_t = RingKind::Parabolic)]
    ring: RingKind,
    /// Order of X: an integer ≥ 2 or `inf`.
    #[arg(long, default_value = "inf")]
    a: Order,
    /// Order of Y: an integer ≥ 2 or `inf`.
    #[arg(long, default_value = "inf")]
    b: Order,
}

#[derive(Debug, Args)]
struct RootArgs {
    #[arg(long, value_enum, default_value_t = RootFormat::Csv)]
    format: RootFormat,
    /// Residual and conjugation tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RingKind {
    Parabolic,
    Generic,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyRing {
    Parabolic,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WordFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RootFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy)]
struct ComplexArg(num_complex::Complex64);

impl std::str::FromStr for ComplexArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let part = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        let z = match s.split_once(',') {
            Some((re, im)) => num_complex::Complex64::new(part(re)?, part(im)?),
            None => num_complex::Complex64::new(part(s)?, 0.0),
        };
        Ok(ComplexArg(z))
    }
}

/// Flag combinations clap cannot rule out on its own.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl RingArgs {
    /// The slice parameters; `parabolic` insists on `a = b = inf`.
    fn params(&self) -> Result<GeneratorParams, UsageError> {
        let params = GeneratorParams::new(self.a, self.b);
        if self.ring == RingKind::Parabolic && !params.is_parabolic() {
            return Err(UsageError(
                "--ring parabolic needs --a inf --b inf; use --ring numeric".into(),
            ));
        }
        Ok(params)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
