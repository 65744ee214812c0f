//! Command-line surface: subcommands, flags, and their value enums.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact mirror-symmetry computations for the quintic threefold.
#[derive(Debug, Parser)]
#[command(
    name = "mirrorkit",
    version,
    about = "Exact mirror-symmetry computations for the quintic threefold",
    long_about = "Replays the quintic mirror computation in exact rational \
arithmetic: Picard-Fuchs periods, the mirror map, the normalized Yukawa \
coupling, instanton numbers, boundary-monodromy checks, and the toric \
crepant resolution. Exit codes: 0 = all checks passed, 1 = usage error, \
2 = a computed value failed a pinned check."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Truncation order K for series computations
    #[arg(long, global = true, default_value_t = 10, value_name = "K")]
    pub order: usize,

    /// Output format (json is canonical; csv and text are projections)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Cache directory for Frobenius bases (MIRRORKIT_CACHE overrides;
    /// default: a mirrorkit-cache directory under the system temp dir)
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Fail (exit 2) if any series coefficient is not an integer
    #[arg(long, global = true)]
    pub fail_on_nonintegral: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frobenius basis of the period operator around z = 0
    Periods,
    /// Canonical coordinate q(z) and its inverse z(q)
    MirrorMap,
    /// Normalized Yukawa coupling as an exact q-expansion
    Yukawa,
    /// Rational-curve counts with the divisor-sum audit
    Instantons,
    /// Integer monodromy checks on the builtin boundary data
    Monodromy {
        /// Which check group to run (groups overlap; `all` runs everything)
        #[arg(long, value_enum, default_value_t = MonodromyCheck::All)]
        check: MonodromyCheck,
    },
    /// Fans of the crepant resolution pipeline
    Fan {
        /// Which resolution step's fan to report
        #[arg(long, value_enum, default_value_t = FanStep::Iii)]
        step: FanStep,
        /// Run validity, crepancy, and smoothness checks on the fan
        #[arg(long)]
        verify: bool,
        /// Write an SVG rendering of the fan's planar slice
        #[arg(long, value_name = "PATH")]
        emit_slice_svg: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Periods => "periods",
            Command::MirrorMap => "mirror-map",
            Command::Yukawa => "yukawa",
            Command::Instantons => "instantons",
            Command::Monodromy { .. } => "monodromy",
            Command::Fan { .. } => "fan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MonodromyCheck {
    All,
    Log,
    Basis,
    Filtration,
    Lemmas,
}

impl MonodromyCheck {
    pub fn name(self) -> &'static str {
        match self {
            MonodromyCheck::All => "all",
            MonodromyCheck::Log => "log",
            MonodromyCheck::Basis => "basis",
            MonodromyCheck::Filtration => "filtration",
            MonodromyCheck::Lemmas => "lemmas",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FanStep {
    #[value(name = "I")]
    I,
    #[value(name = "IIA")]
    Iia,
    #[value(name = "IIB")]
    Iib,
    #[value(name = "III")]
    Iii,
}

impl FanStep {
    pub fn name(self) -> &'static str {
        match self {
            FanStep::I => "I",
            FanStep::Iia => "IIA",
            FanStep::Iib => "IIB",
            FanStep::Iii => "III",
        }
    }
}
