use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypzeta_core::{Complex64, Signature};

#[derive(Debug, Parser)]
#[command(
    name = "hypzeta",
    version,
    about = "Selberg and Ruelle zeta functions on cofinite hyperbolic surfaces"
)]
pub struct Cli {
    /// Print a JSON report on standard output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Config file with `key = value` lines (rel_tol, gamma2_cutoff, euler_max_trace).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Relative tolerance for series truncation and identity checks.
    #[arg(long, global = true, value_name = "EPS")]
    pub rel_tol: Option<f64>,

    /// Number of factors kept in the double gamma product.
    #[arg(long, global = true, value_name = "K")]
    pub gamma2_cutoff: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Modular,
    Trivial,
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    /// Signature as `g,n,m1:m2:...` (the elliptic list may be empty, e.g. `2,0,`).
    #[arg(long, value_name = "G,N,M...")]
    pub signature: Signature,

    /// Scattering model; defaults to modular with one cusp and trivial with none.
    #[arg(long, value_enum)]
    pub group: Option<Group>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Surface data.
    Surface {
        #[command(subcommand)]
        command: SurfaceCommand,
    },
    /// Order tables for Z and R between two integers.
    Orders {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    /// The functional-equation factor with Z(1−s) = κ(s) Z(s).
    Kappa {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, value_name = "RE,IM")]
        s: Complex64,
    },
    /// det(Δ − s(1−s)) from the closed-form factors and a value of Z(s).
    DetLaplacian {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, value_name = "RE,IM")]
        s: Complex64,
        /// Z(s); when omitted, the Euler product is used (modular group, Re s > 1).
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, value_name = "RE,IM")]
        z_value: Option<Complex64>,
        #[arg(long)]
        max_trace: Option<u32>,
    },
    /// Order and leading coefficient of R at s = 0.
    RuelleLeading {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// c0, c1, log E, and the constants A, B, C, D.
    Constants {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Length spectrum of the modular group, one CSV row `trace,count,length,norm` per trace.
    Spectrum {
        #[arg(long)]
        max_trace: u32,
        /// Cache file; reused when its metadata matches, written otherwise.
        #[arg(long, value_name = "PATH")]
        cache: Option<PathBuf>,
    },
    /// Truncated Euler product for Z(s), Re s > 1.
    Zeta {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, value_name = "RE,IM")]
        s: Complex64,
        #[arg(long)]
        max_trace: Option<u32>,
    },
    /// R(s) by the quotient Z(s)/Z(s+1) and by the direct product, Re s > 1.
    Ruelle {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, value_name = "RE,IM")]
        s: Complex64,
        #[arg(long)]
        max_trace: Option<u32>,
    },
    /// Run the identity suite and the modular-group reproduction.
    Verify {
        /// Replace the per-family identity tolerances.
        #[arg(long, value_name = "EPS")]
        tolerance: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCommand {
    /// Area and the determinant constants.
    Info {
        #[arg(long, value_name = "G,N,M...")]
        signature: Signature,
    },
}

/// `RE,IM` or a bare real part.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("invalid number `{t}` in `{text}`"))
    };
    match text.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(text)?, 0.0)),
    }
}
