use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact curve-counting tables, genus bounds, tilt walls and ambiguity solves.
///
/// Exit codes: 0 success, 1 usage, I/O or parse error, 2 validation failure.
#[derive(Debug, Parser)]
#[command(name = "curvecount", version)]
pub struct Cli {
    /// File of `key = value` lines supplying defaults for any long flag.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert between GV, GW, connected PT, PT and DT tables.
    #[command(subcommand)]
    Transform(TransformCmd),
    /// Genus bound tables and the Castelnuovo checks.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Numerical walls of ideal sheaves.
    #[command(subcommand)]
    Walls(WallsCmd),
    /// Holomorphic ambiguity solves.
    #[command(subcommand)]
    Bcov(BcovCmd),
    /// Check a table or connected series for integrality and vanishing.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct IoArgs {
    /// Input file (`.json` for the JSON mirror, CSV otherwise).
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Output file (`.json` for the JSON mirror, CSV otherwise).
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    /// Write the validation report as JSON here.
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenusWindow {
    /// Largest genus; the input is complete up to it.
    #[arg(long)]
    pub gmax: Option<u32>,
    /// Largest degree; the input is complete up to it.
    #[arg(long)]
    pub dmax: Option<u32>,
}

#[derive(Debug, Args)]
pub struct PtArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Largest genus present in the GV input.
    #[arg(long)]
    pub gmax: Option<u32>,
    /// Largest curve degree of the output.
    #[arg(long)]
    pub dmax: u32,
    /// Euler characteristic window `lo:hi`.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub qwindow: (i64, i64),
    /// Zero GV entries above the Castelnuovo threshold and PT entries below it.
    #[arg(long)]
    pub apply_castelnuovo: bool,
    /// Declare every genus of the input known (absent entries are zero).
    #[arg(long)]
    pub genus_complete: bool,
}

#[derive(Debug, Subcommand)]
pub enum TransformCmd {
    /// Gopakumar-Vafa to Gromov-Witten.
    Gv2gw {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        window: GenusWindow,
    },
    /// Gromov-Witten to Gopakumar-Vafa.
    Gw2gv {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        window: GenusWindow,
        /// Fail with exit code 2 if any result is not an integer.
        #[arg(long)]
        integrality: bool,
    },
    /// Gopakumar-Vafa to stable pairs.
    Gv2pt(PtArgs),
    /// Gopakumar-Vafa to the connected stable-pair series (JSON).
    Gv2fp(PtArgs),
    /// Stable pairs to ideal sheaves.
    Pt2dt {
        #[command(flatten)]
        io: IoArgs,
        /// Degree-zero series as JSON; defaults to 1.
        #[arg(long, value_name = "FILE")]
        dt0: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BoundKind {
    General,
    Hypersurface,
    Nonhyperplane,
    Divisor,
}

#[derive(Debug, Subcommand)]
pub enum BoundsCmd {
    /// Genus bound per degree as CSV `d,bound,floor`.
    Table {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        i: i32,
        #[arg(long)]
        dmax: u32,
        #[arg(long, value_enum, default_value_t = BoundKind::General)]
        formula: BoundKind,
        /// Divisor class multiple for `--formula divisor`.
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Also draw the bound curves.
        #[arg(long, value_name = "FILE")]
        emit_svg: Option<PathBuf>,
    },
    /// Check `g > B(d)` below the Castelnuovo range.
    Corollary {
        #[arg(long, default_value_t = 53)]
        gmax: u32,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Superadditivity and cover inequalities of the threshold.
    Properties {
        #[arg(long, default_value_t = 30)]
        dmax: u32,
        #[arg(long, default_value_t = 4)]
        parts: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// GV invariants at the Castelnuovo bound as CSV `m,d,g,gv`.
    Extremal {
        #[arg(long, default_value_t = 12)]
        mmax: u32,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum WallsCmd {
    /// Candidate destabilisers as CSV `k,d1,center_b,radius_sq`.
    Candidates {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        emit_svg: Option<PathBuf>,
    },
    /// Wall tangent to `b = -d/n` for curves on a surface of degree `n`.
    Extremal {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Genus bound from the generalised Bogomolov-Gieseker inequality.
    GenusBound {
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        i: i32,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value = "0")]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum BcovCmd {
    /// Which coefficients each condition fixes and whether the induction closes.
    Plan {
        #[arg(long)]
        g: u32,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Solve the conifold gap condition.
    Gap {
        #[arg(long)]
        g: u32,
        /// Frame bundle as JSON; defaults to the toy frame.
        #[arg(long, value_name = "FILE")]
        frame: Option<PathBuf>,
        /// Known terms as a JSON series in Delta; defaults to zero.
        #[arg(long, value_name = "FILE")]
        known: Option<PathBuf>,
        /// Ambiguity to update; defaults to a fresh one.
        #[arg(long, value_name = "FILE")]
        ambiguity: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Solve the low-degree conditions from a known q-polynomial.
    Castelnuovo {
        #[arg(long)]
        g: u32,
        /// Known polynomial as a JSON series in q.
        #[arg(long, value_name = "FILE")]
        known: PathBuf,
        /// Highest degree with known data; defaults to the vanishing degree.
        #[arg(long)]
        dg: Option<u32>,
        /// Count the extremal GV value as one more degree of data.
        #[arg(long)]
        with_extremal: bool,
        #[arg(long, value_name = "FILE")]
        ambiguity: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableKindArg {
    Gv,
    Pt,
    Fp,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub kind: TableKindArg,
    /// Check integrality of GV entries.
    #[arg(long)]
    pub integrality: bool,
    /// Check Castelnuovo vanishing.
    #[arg(long)]
    pub castelnuovo: bool,
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("lo: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("hi: {e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("-10:10"), Ok((-10, 10)));
        assert!(parse_window("3:1").is_err());
        assert!(parse_window("3").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
