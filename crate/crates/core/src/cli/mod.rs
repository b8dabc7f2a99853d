//! The `fockspec` command line.

mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::FockError;

pub use output::{format_number, Format};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Usage, parse or numerical error.
    pub const ERROR: i32 = 1;
    /// The symbol has degree above `A`.
    pub const UNBOUNDED: i32 = 2;
    /// A `verify` suite ran and failed its checks.
    pub const VERIFY_FAILED: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Fock(#[from] FockError),
    #[error("invalid {flag}: {source}\n  {text}\n  {caret}")]
    Input {
        flag: &'static str,
        text: String,
        caret: String,
        source: FockError,
    },
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Fock(FockError::Unbounded { .. }) => exit::UNBOUNDED,
            _ => exit::ERROR,
        }
    }

    /// Attaches the flag and a caret under the failing byte to a parse error.
    pub(crate) fn input(flag: &'static str, text: &str, source: FockError) -> Self {
        let offset = match &source {
            FockError::Parse { offset, .. } => *offset,
            _ => 0,
        };
        let caret = format!("{}^", " ".repeat(text[..offset.min(text.len())].chars().count()));
        CliError::Input {
            flag,
            text: text.to_string(),
            caret,
            source,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fockspec",
    version,
    about = "Spectra of integration operators T_g on generalized Fock spaces F^p_{alpha,A}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Common {
    /// Integrability exponent p (>= 1).
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Weight scale alpha (> 0).
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Growth order A (> 0).
    #[arg(long = "A", default_value_t = 2.0)]
    big_a: f64,
    /// Truncation order for series built by the command.
    #[arg(long, default_value_t = 96)]
    order: usize,
    /// Minimum radial quadrature nodes (raised to what the degree requires).
    #[arg(long = "radial-nodes", default_value_t = 128)]
    radial_nodes: usize,
    /// Angular quadrature points; chosen from the degree when omitted.
    #[arg(long = "angular-count")]
    angular_count: Option<usize>,
    /// Output format; `csv` for scan and verify, `json` otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lp,
    WeightedLp,
    Boundary,
    Boundedness,
    Norms,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the spectrum of T_g.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Polynomial symbol, e.g. "3z^2 + z" or "(1+2i)z^2".
        #[arg(long, default_value = "z^2", allow_hyphen_values = true)]
        g: String,
    },
    /// Membership of e^{g/lambda} and resolvent probe ratios over a lambda grid.
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "z^2", allow_hyphen_values = true)]
        g: String,
        /// Explicit grid points (repeatable); replaces the ring grid.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Vec<String>,
        /// Radius of the innermost ring.
        #[arg(long = "grid-inner", default_value_t = 0.5)]
        grid_inner: f64,
        /// Radius of the outermost ring.
        #[arg(long = "grid-outer", default_value_t = 2.0)]
        grid_outer: f64,
        /// Points per ring.
        #[arg(long = "grid-count", default_value_t = 100)]
        grid_count: usize,
        /// Number of equally spaced rings from inner to outer.
        #[arg(long = "grid-rings", default_value_t = 2)]
        grid_rings: usize,
        /// Comma-separated ring radii; replaces inner/outer/rings.
        #[arg(long = "grid-radii")]
        grid_radii: Option<String>,
        /// Probes are z^0 .. z^k.
        #[arg(long = "probe-degree", default_value_t = 8)]
        probe_degree: usize,
    },
    /// Run a verification suite and report PASS or FAIL.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        /// Function for the boundary suite.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Lambda values (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Vec<String>,
        /// Semicolon-separated polynomials replacing the reference family.
        #[arg(long, allow_hyphen_values = true)]
        family: Option<String>,
        /// Columns examined by the boundedness suite.
        #[arg(long, default_value_t = 400)]
        columns: usize,
        /// Comma-separated radii for the boundary suite.
        #[arg(long, default_value = "1,2,3,4,5,6")]
        radii: String,
    },
    /// Fock norm of a polynomial by quadrature.
    Norm {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Coefficients of T_g f.
    Apply {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "z^2", allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Coefficients of the resolvent solution f of f - T_g f / lambda = h.
    Resolvent {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "z^2", allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
}

/// Runs the command line with `args` (program name first) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                exit::ERROR
            } else {
                let _ = write!(out, "{text}");
                exit::OK
            };
        }
    };
    match commands::dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
