use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Parser, Serialize)]
#[command(name = "zetalab", version, about = "Numerical experiments around Müntz relations and Wiener-Riemann measures")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Seed of every random stream.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 20_000)]
    pub samples: u64,
    /// Worker threads; part of the reproducibility key.
    #[arg(long, default_value_t = 4)]
    pub workers: usize,
    /// Absolute and relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Output directory (default: $ZETALAB_OUT_DIR or ./zetalab-out).
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Plain `key = value` file mirroring the flags; flags given on the command line win.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Points {
    /// A complex number such as `0.5+14.1i`.
    #[arg(long)]
    pub s: Option<String>,
    /// Comma-separated complex numbers.
    #[arg(long = "s-grid")]
    pub s_grid: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TestFn {
    /// Builtin name (`gaussian`, `exp_inverse`, `gaussian_p(p)`, `hermite_even(n,p[,kind])`, `constant`)
    /// or a name defined in --testfn-file.
    #[arg(long, default_value = "gaussian")]
    pub testfn: String,
    /// TOML file of additional test functions.
    #[arg(long = "testfn-file")]
    pub testfn_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Auto,
    Rface,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaFunction {
    Riemann,
    Hurwitz,
    ZetaH,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Mellin,
    Theta,
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum McTask {
    Mean,
    Increments,
    Path,
    Cells,
    #[value(name = "m-s")]
    MS,
    #[value(name = "b-s")]
    BS,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImConstantArg {
    Derived,
    InversePole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OscillationArg {
    Logarithmic,
    Linear,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Point evaluation of ζ, Hurwitz ζ or ζ_H.
    Zeta {
        #[command(flatten)]
        points: Points,
        #[arg(long, value_enum, default_value_t = Route::Auto)]
        route: Route,
        #[arg(long, value_enum, default_value_t = ZetaFunction::Riemann)]
        function: ZetaFunction,
        /// Hurwitz parameter.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Critical-line zeros and their audit against the trivial zeta.
    Zeros {
        #[arg(long = "t-min", default_value_t = 0.0)]
        t_min: f64,
        #[arg(long = "t-max", default_value_t = 50.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Residuals of the Müntz relation.
    Muntz {
        #[command(flatten)]
        points: Points,
        #[command(flatten)]
        testfn: TestFn,
        /// `paper`, `derived`, `paper-constant` or `bare-fourier`.
        #[arg(long, default_value = "derived")]
        variant: String,
        /// Check the imaginary-part equation instead.
        #[arg(long)]
        im: bool,
        #[arg(long = "im-constant", value_enum, default_value_t = ImConstantArg::Derived)]
        im_constant: ImConstantArg,
        #[arg(long, value_enum, default_value_t = OscillationArg::Logarithmic)]
        oscillation: OscillationArg,
        #[command(flatten)]
        common: Common,
    },
    /// Poisson-space membership and the summation formula.
    Psf {
        #[command(flatten)]
        testfn: TestFn,
        #[command(flatten)]
        common: Common,
    },
    /// Mellin, theta and Fourier-cosine point queries.
    Transform {
        #[arg(long, value_enum)]
        kind: TransformKind,
        #[command(flatten)]
        points: Points,
        /// Comma-separated real arguments for theta and fourier.
        #[arg(long)]
        x: Option<String>,
        #[command(flatten)]
        testfn: TestFn,
        #[command(flatten)]
        common: Common,
    },
    /// Moments of the 1/2-stable Lévy law and the divergence ladder.
    Levy {
        /// Comma-separated moment orders.
        #[arg(long, default_value = "0.25")]
        u: String,
        #[arg(long, default_value_t = 1.0)]
        y0: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Brownian and Wiener-Riemann sampling.
    Mc {
        #[arg(long, value_enum, default_value_t = McTask::Mean)]
        task: McTask,
        /// Comma-separated times for `mean`.
        #[arg(long, default_value = "0,0.5,2")]
        t: String,
        /// Tent index of the drift.
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Intervals of the time grid for `increments` and `path`.
        #[arg(long, default_value_t = 16)]
        steps: usize,
        /// Moment order u for `b-s`.
        #[arg(long, default_value_t = 0.25)]
        u: f64,
        #[command(flatten)]
        points: Points,
        #[command(flatten)]
        common: Common,
    },
    /// The averaged Müntz relation over a tent family.
    Experiment {
        #[command(flatten)]
        points: Points,
        /// Comma-separated strictly increasing tent indices.
        #[arg(long = "k-list", default_value = "1,2,4,8,16")]
        k_list: String,
        #[command(flatten)]
        common: Common,
    },
    /// Merge CSV files and summarize them, or emit the discrepancy ledger.
    Report {
        /// CSV files with identical headers.
        inputs: Vec<PathBuf>,
        #[arg(long)]
        ledger: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Re-run a manifest and compare output digests.
    Replay {
        manifest: PathBuf,
        /// Output directory of the re-run.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Zeta { .. } => "zeta",
            Command::Zeros { .. } => "zeros",
            Command::Muntz { .. } => "muntz",
            Command::Psf { .. } => "psf",
            Command::Transform { .. } => "transform",
            Command::Levy { .. } => "levy",
            Command::Mc { .. } => "mc",
            Command::Experiment { .. } => "experiment",
            Command::Report { .. } => "report",
            Command::Replay { .. } => "replay",
        }
    }

    pub fn common(&self) -> Option<&Common> {
        match self {
            Command::Zeta { common, .. }
            | Command::Zeros { common, .. }
            | Command::Muntz { common, .. }
            | Command::Psf { common, .. }
            | Command::Transform { common, .. }
            | Command::Levy { common, .. }
            | Command::Mc { common, .. }
            | Command::Experiment { common, .. }
            | Command::Report { common, .. } => Some(common),
            Command::Replay { .. } => None,
        }
    }
}

/// Inserts the flags of a `--config` file right after the subcommand, so
/// that flags given later on the command line override them.
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>, CliError> {
    let pos = argv.iter().position(|a| a == "--config" || a.starts_with("--config="));
    let Some(pos) = pos else {
        return Ok(argv);
    };
    let path = match argv[pos].strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None => argv
            .get(pos + 1)
            .cloned()
            .ok_or_else(|| CliError::Usage("--config needs a file".into()))?,
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
    let mut flags = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{path}:{}: expected key = value", n + 1)))?;
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        if key == "config" {
            return Err(CliError::Usage(format!("{path}:{}: nested config files are not supported", n + 1)));
        }
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            _ => flags.push(format!("--{key}={value}")),
        }
    }
    // argv[0] is the program, argv[1] the subcommand
    let at = 2.min(argv.len());
    let mut out: Vec<String> = argv[..at].to_vec();
    out.extend(flags);
    out.extend(argv[at..].iter().cloned());
    Ok(out)
}
