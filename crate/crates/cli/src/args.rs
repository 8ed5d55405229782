use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dzeta_core::matrices::Level;
use dzeta_core::period::Sign;

#[derive(Debug, Parser)]
#[command(name = "dzeta", version, about = "Totally odd double zeta matrices at levels 1, 2 and 3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, global = true, conflicts_with = "output_dir")]
    pub output: Option<PathBuf>,

    /// Write into this directory, under a name chosen by the command.
    #[arg(long, global = true, env = "DZETA_OUTPUT_DIR")]
    pub output_dir: Option<PathBuf>,

    /// Worker threads for sweeps (defaults to one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    /// Aligned plain text (build and verify-paper).
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Part {
    C,
    D,
    Dc,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Negate every depth-one coefficient.
    Depth1Sign,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct WeightSel {
    /// A single even weight.
    #[arg(long, value_parser = parse_weight)]
    pub weight: Option<u32>,

    /// Inclusive even range `A..B`.
    #[arg(long, value_parser = parse_range)]
    pub weights: Option<WeightRange>,
}

impl WeightSel {
    pub fn list(&self) -> Vec<u32> {
        match (self.weight, &self.weights) {
            (Some(k), _) => vec![k],
            (_, Some(r)) => r.list(),
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepSel {
    /// Sweep `6..=K`; empty below 6.
    #[arg(long, value_parser = parse_weight, conflicts_with = "weights")]
    pub max_weight: Option<u32>,

    /// Inclusive even range `A..B`.
    #[arg(long, value_parser = parse_range)]
    pub weights: Option<WeightRange>,

    /// Comma-separated levels from {2, 3}.
    #[arg(long, value_delimiter = ',', value_parser = parse_twisted, default_value = "2,3")]
    pub levels: Vec<Level>,
}

impl SweepSel {
    pub fn list(&self, default_max: u32) -> Vec<u32> {
        match &self.weights {
            Some(r) => r.list(),
            None => WeightRange {
                lo: 6,
                hi: self.max_weight.unwrap_or(default_max),
            }
            .list(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print C, D and D·C for a level and weight.
    Build {
        #[arg(long, value_parser = parse_level)]
        level: Level,
        #[command(flatten)]
        weights: WeightSel,
        #[arg(long, value_enum, default_value = "all")]
        part: Part,
    },
    /// Recompute every entry through the coaction and compare.
    OracleCheck {
        #[arg(long, value_parser = parse_level)]
        level: Level,
        #[command(flatten)]
        weights: WeightSel,
        /// Dump the term-by-term evaluation of one entry, given as `m1,m2:n1,n2`.
        #[arg(long, value_parser = parse_entry)]
        trace: Option<(u32, u32, u32, u32)>,
    },
    /// Reproduce the printed examples exactly.
    VerifyPaper {
        /// Run one check id or one group only.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Kernel, Hecke, Deligne and clustering sweep.
    Spectral {
        #[command(flatten)]
        sweep: SweepSel,
    },
    /// Compare eigenspace, series and W-space dimensions.
    Conjectures {
        #[command(flatten)]
        sweep: SweepSel,
    },
    /// Basis of the W-space for a level, weight and sign.
    Wspace {
        #[arg(long, value_parser = parse_twisted)]
        level: Level,
        #[arg(long, value_parser = parse_weight)]
        weight: u32,
        /// `+` or `-`; both when omitted.
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Option<Sign>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightRange {
    pub lo: u32,
    pub hi: u32,
}

impl WeightRange {
    pub fn list(&self) -> Vec<u32> {
        (self.lo..=self.hi).step_by(2).collect()
    }
}

pub fn parse_weight(s: &str) -> Result<u32, String> {
    let k: u32 = s.trim().parse().map_err(|_| format!("`{s}` is not a weight"))?;
    if !k.is_multiple_of(2) {
        return Err(format!("weight {k} is odd"));
    }
    Ok(k)
}

pub fn parse_range(s: &str) -> Result<WeightRange, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("`{s}` is not of the form A..B"))?;
    let (lo, hi) = (parse_weight(a)?, parse_weight(b)?);
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(WeightRange { lo, hi })
}

pub fn parse_level(s: &str) -> Result<Level, String> {
    let n: u32 = s.trim().parse().map_err(|_| format!("`{s}` is not a level"))?;
    Level::try_from(n).map_err(|e| e.to_string())
}

pub fn parse_twisted(s: &str) -> Result<Level, String> {
    let level = parse_level(s)?;
    level.require_twisted().map_err(|e| e.to_string())
}

pub fn parse_sign(s: &str) -> Result<Sign, String> {
    match s.trim() {
        "+" | "plus" | "+1" => Ok(Sign::Plus),
        "-" | "minus" | "-1" => Ok(Sign::Minus),
        _ => Err(format!("`{s}` is not a sign")),
    }
}

pub fn parse_entry(s: &str) -> Result<(u32, u32, u32, u32), String> {
    let bad = || format!("`{s}` is not of the form m1,m2:n1,n2");
    let (m, n) = s.split_once(':').ok_or_else(bad)?;
    let pair = |p: &str| -> Result<(u32, u32), String> {
        let (a, b) = p.split_once(',').ok_or_else(bad)?;
        Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
    };
    let ((m1, m2), (n1, n2)) = (pair(m)?, pair(n)?);
    Ok((m1, m2, n1, n2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_ranges() {
        assert_eq!(parse_weight("12"), Ok(12));
        assert!(parse_weight("11").is_err());
        assert!(parse_weight("x").is_err());
        assert_eq!(parse_range("6..12").unwrap().list(), vec![6, 8, 10, 12]);
        assert!(parse_range("12..6").is_err());
        assert!(parse_range("6..13").is_err());
        assert!(parse_range("6-12").is_err());
    }

    #[test]
    fn levels_and_signs() {
        assert_eq!(parse_level("1"), Ok(Level::One));
        assert!(parse_level("4").is_err());
        assert!(parse_twisted("1").is_err());
        assert_eq!(parse_sign("-"), Ok(Sign::Minus));
        assert_eq!(parse_sign("plus"), Ok(Sign::Plus));
        assert!(parse_sign("0").is_err());
    }

    #[test]
    fn entry_spec() {
        assert_eq!(parse_entry("9,3:3,9"), Ok((9, 3, 3, 9)));
        assert!(parse_entry("9,3").is_err());
        assert!(parse_entry("9;3:3,9").is_err());
    }

    #[test]
    fn sweep_defaults() {
        let cli = Cli::try_parse_from(["dzeta", "spectral", "--max-weight", "4"]).unwrap();
        let Command::Spectral { sweep } = cli.command else { panic!() };
        assert!(sweep.list(40).is_empty());
        assert_eq!(sweep.levels, vec![Level::Two, Level::Three]);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
