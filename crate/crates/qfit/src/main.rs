use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use qfit::cli::{self, CliError, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "qfit",
    version,
    about = "Log-quadratic bounds and approximations of the Gaussian Q-function"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Upper end of the evaluation grid.
    #[arg(long, global = true, default_value_t = 10.0)]
    x_max: f64,

    /// Grid step for scans and verification.
    #[arg(long, global = true, default_value_t = 1e-3)]
    step: f64,

    /// Output format; profile defaults to csv, everything else to table.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the registered bounds against the reference Q on a grid.
    Bounds {
        /// Check a single registered curve instead of all of them.
        #[arg(long)]
        only: Option<String>,
    },
    /// Derive (a, b) for a matching horizon and report the sup error.
    Derive {
        /// Matching horizon t.
        #[arg(long)]
        t: f64,
    },
    /// Search for the horizon minimizing the sup error.
    Tune {
        #[arg(long, default_value_t = 0.5)]
        t_lo: f64,
        #[arg(long, default_value_t = 3.0)]
        t_hi: f64,
        /// Horizon resolution of the search.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Emit the error profile of a derived approximation.
    Profile {
        /// Matching horizon t.
        #[arg(long)]
        t: f64,
        /// Number of evenly spaced samples.
        #[arg(long, default_value_t = 1001)]
        n: usize,
        /// Write to this path instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Table,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Table => OutputFormat::Table,
        }
    }
}

fn build_config(args: Cli) -> RunConfig {
    let mut cfg = RunConfig::new(match args.command {
        Cmd::Bounds { .. } => Command::Bounds,
        Cmd::Derive { .. } => Command::Derive,
        Cmd::Tune { .. } => Command::Tune,
        Cmd::Profile { .. } => Command::Profile,
    });
    cfg.x_max = args.x_max;
    cfg.step = args.step;
    cfg.format = args.format.map(Into::into);
    match args.command {
        Cmd::Bounds { only } => cfg.only = only,
        Cmd::Derive { t } => cfg.t = Some(t),
        Cmd::Tune { t_lo, t_hi, tol } => {
            cfg.t_lo = t_lo;
            cfg.t_hi = t_hi;
            cfg.tol_t = tol;
        }
        Cmd::Profile { t, n, out } => {
            cfg.t = Some(t);
            cfg.n = n;
            cfg.output_path = out;
        }
    }
    cfg
}

fn main() {
    let cfg = build_config(Cli::parse());
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match cli::run(&cfg, &mut out) {
        Ok(outcome) => outcome.exit_code(),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Io(err)) => {
            eprintln!("error: {err}");
            3
        }
    };
    let _ = out.flush();
    std::process::exit(code);
}
