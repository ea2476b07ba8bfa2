use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dp1_cli::{Format, Output, RunConfig, SurfaceFile};

#[derive(Parser)]
#[command(name = "dp1", version, about = "Density certificates for rational points on degree-1 del Pezzo surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Budgets {
    /// Search height for points on the surface and on C_Q(5)
    #[arg(long, default_value_t = 40)]
    height: u64,
    /// Multiples taken on each fiber as evidence
    #[arg(long, default_value_t = 8)]
    multiples: usize,
    /// Points of C_Q(5) pushed through σ
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Bit budget for coordinates (defaults to DP1_BIT_BUDGET or 65536)
    #[arg(long)]
    bits: Option<u64>,
    /// Soft time budget per stage, in seconds
    #[arg(long, default_value_t = 60)]
    time: u64,
    /// Surface points tried when no point is given
    #[arg(long, default_value_t = 8)]
    max_points: usize,
    /// Seed for randomized runs; the certifiers themselves are deterministic
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

impl Budgets {
    fn config(&self) -> RunConfig {
        let mut c = RunConfig {
            height: self.height,
            multiples: self.multiples,
            count: self.count,
            time_budget_secs: self.time,
            max_points: self.max_points,
            format: match self.format {
                FormatArg::Text => Format::Text,
                FormatArg::Json => Format::Json,
            },
            ..RunConfig::default()
        };
        if let Some(b) = self.bits {
            c.bit_budget = b;
        }
        c
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Smoothness, discriminant and singular fibers
    Check { surface: PathBuf },
    /// Certify density at a point, or at searched points when none is given
    Certify {
        surface: PathBuf,
        /// X,Y,Z,W
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Certify density from a rational nodal fiber
    NodalDensity {
        surface: PathBuf,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Check the quartic model over the nodal fiber
    VerifyNodal { surface: PathBuf },
    /// Sixth intersection point of the section at (p, q) on C_Q(5)
    Sigma {
        surface: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Dump c1..c9, G, F4..F6, Ω and the components of C_Q(5)
    Cq5 {
        surface: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Fiber type after a base change of ramification index E
    BaseChange { kind: String, e: u32 },
    /// Run a scripted scenario; `list` shows the names
    Example { name: String },
    /// Certify a seeded corpus of random surfaces with coefficients in {-1, 0, 1}
    Corpus {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        budgets: Budgets,
    },
}

fn read_surface(path: &PathBuf) -> dp1_core::Result<SurfaceFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| dp1_core::Error::parse(format!("{}: {e}", path.display())))?;
    SurfaceFile::parse(&text)
}

fn run(cmd: Cmd) -> dp1_core::Result<Output> {
    match cmd {
        Cmd::Check { surface } => dp1_cli::cmd_check(&read_surface(&surface)?),
        Cmd::Certify {
            surface,
            point,
            budgets,
        } => dp1_cli::cmd_certify(&read_surface(&surface)?, point.as_deref(), &budgets.config()),
        Cmd::NodalDensity { surface, budgets } => {
            dp1_cli::cmd_nodal(&read_surface(&surface)?, &budgets.config())
        }
        Cmd::VerifyNodal { surface } => dp1_cli::cmd_verify_nodal(&read_surface(&surface)?),
        Cmd::Sigma {
            surface,
            point,
            p,
            q,
        } => dp1_cli::cmd_sigma(&read_surface(&surface)?, &point, &p, &q),
        Cmd::Cq5 { surface, point } => dp1_cli::cmd_cq5(&read_surface(&surface)?, &point),
        Cmd::BaseChange { kind, e } => dp1_cli::cmd_base_change(&kind, e),
        Cmd::Example { name } => dp1_cli::cmd_example(&name),
        Cmd::Corpus { n, jobs, budgets } => {
            dp1_cli::cmd_corpus(budgets.seed, n, &budgets.config(), jobs)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(out.text.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
