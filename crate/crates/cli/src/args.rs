// SPDX-License-Identifier: Apache-2.0

//! Command-line flags and their validated form, [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logforest::{geometric_range, EdgeTransform, FamilyConfig, GammaRule, HVariant};

use crate::commands::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "logforest",
    version,
    about = "Logarithmic forest distances and their classical limits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a distance matrix for a graph.
    Distances(DistancesArgs),
    /// Tabulate how a family approaches a classical distance as alpha varies.
    Sweep(SweepArgs),
    /// Cross-check the matrix routes against forest enumeration and run the metric and geodetic scans.
    Verify(VerifyArgs),
    /// Compare additivity of a distance with vertex separation.
    Geodetic(GeodeticArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistanceKind {
    Logforest,
    Shortest,
    Wshortest,
    Resistance,
    OrdinaryForest,
}

impl DistanceKind {
    pub fn name(self) -> &'static str {
        match self {
            DistanceKind::Logforest => "logforest",
            DistanceKind::Shortest => "shortest",
            DistanceKind::Wshortest => "wshortest",
            DistanceKind::Resistance => "resistance",
            DistanceKind::OrdinaryForest => "ordinary-forest",
        }
    }
}

/// Classical distance a sweep converges to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Shortest,
    Wshortest,
    Resistance,
}

impl Target {
    pub fn kind(self) -> DistanceKind {
        match self {
            Target::Shortest => DistanceKind::Shortest,
            Target::Wshortest => DistanceKind::Wshortest,
            Target::Resistance => DistanceKind::Resistance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    ShortestPathPreset,
    WspPreset,
    UnifiedPreset,
}

impl Preset {
    pub fn config(self) -> FamilyConfig {
        match self {
            Preset::ShortestPathPreset => FamilyConfig::SHORTEST_PATH,
            Preset::WspPreset => FamilyConfig::WEIGHTED_SHORTEST_PATH,
            Preset::UnifiedPreset => FamilyConfig::UNIFIED,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge-list file (`-` reads standard input).
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Start from a named family; the flags below override its parts.
    #[arg(long, value_enum)]
    pub family: Option<Preset>,
    /// Edge transform: linear, power, exp-scaled or exp.
    #[arg(long)]
    pub transform: Option<EdgeTransform>,
    /// Scaling of the logarithm: standard or alpha-ln [default: standard].
    #[arg(long)]
    pub hvariant: Option<HVariant>,
    /// formula13, one, interp:BETA or const:C [default: formula13].
    #[arg(long)]
    pub gamma: Option<GammaRule>,
}

impl FamilyArgs {
    /// `None` when no family flag was given at all.
    pub fn resolve(&self) -> Result<Option<FamilyConfig>, CliError> {
        if self.family.is_none() && self.transform.is_none() && self.hvariant.is_none() && self.gamma.is_none() {
            return Ok(None);
        }
        let mut cfg = match (self.family, self.transform) {
            (Some(p), _) => p.config(),
            (None, Some(t)) => FamilyConfig::new(t, HVariant::Standard, GammaRule::Formula13),
            (None, None) => return Err(CliError::usage("--hvariant and --gamma need --transform or --family")),
        };
        if let Some(t) = self.transform {
            cfg.transform = t;
        }
        if let Some(h) = self.hvariant {
            cfg.h_variant = h;
        }
        if let Some(g) = self.gamma {
            cfg.gamma_rule = g;
        }
        Ok(Some(cfg))
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistancesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub kind: DistanceKind,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub target: Target,
    /// Geometric range `FROM:TO`.
    #[arg(long, conflicts_with = "alphas")]
    pub range: Option<String>,
    /// Number of points in `--range`.
    #[arg(long, default_value_t = 5, requires = "range")]
    pub points: usize,
    /// Explicit comma-separated alphas.
    #[arg(long, value_delimiter = ',')]
    pub alphas: Vec<f64>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Parameter of the distance scanned for metric and geodetic failures.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Family scanned [default: shortest-path-preset].
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Absolute tolerance for the scans [default: 1e-9 (1 + max entry)].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Skip the forest enumeration checks (needed above the edge cap).
    #[arg(long)]
    pub skip_oracle: bool,
}

#[derive(Debug, Args)]
pub struct GeodeticArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = DistanceKind::Logforest)]
    pub kind: DistanceKind,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Absolute tolerance [default: 1e-9 (1 + max entry)].
    #[arg(long)]
    pub tol: Option<f64>,
}

/// Everything a command needs, validated.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub kind: DistanceKind,
    pub family: Option<FamilyConfig>,
    /// One value for a single matrix, several for a sweep.
    pub alphas: Vec<f64>,
    pub target: Option<Target>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub tolerance: Option<f64>,
    pub skip_oracle: bool,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, kind: DistanceKind) -> Self {
        Self {
            input: input.into(),
            kind,
            family: None,
            alphas: Vec::new(),
            target: None,
            format: Format::Csv,
            output: None,
            tolerance: None,
            skip_oracle: false,
        }
    }

    pub fn from_distances(a: &DistancesArgs) -> Result<Self, CliError> {
        Ok(Self {
            family: a.family.resolve()?,
            alphas: a.alpha.into_iter().collect(),
            format: a.output.format,
            output: a.output.output.clone(),
            ..Self::new(&a.input.input, a.kind)
        })
        .and_then(Self::checked)
    }

    pub fn from_sweep(a: &SweepArgs) -> Result<Self, CliError> {
        let alphas = match &a.range {
            Some(range) => {
                let (from, to) = range
                    .split_once(':')
                    .and_then(|(x, y)| Some((x.trim().parse::<f64>().ok()?, y.trim().parse::<f64>().ok()?)))
                    .ok_or_else(|| CliError::usage(format!("--range must be FROM:TO, got `{range}`")))?;
                geometric_range(from, to, a.points).map_err(|e| CliError::usage(e.to_string()))?
            }
            None if a.alphas.is_empty() => return Err(CliError::usage("sweep needs --range or --alphas")),
            None => a.alphas.clone(),
        };
        Ok(Self {
            family: a.family.resolve()?,
            alphas,
            target: Some(a.target),
            format: a.output.format,
            output: a.output.output.clone(),
            ..Self::new(&a.input.input, DistanceKind::Logforest)
        })
        .and_then(Self::checked)
    }

    pub fn from_verify(a: &VerifyArgs) -> Result<Self, CliError> {
        Ok(Self {
            family: Some(a.family.resolve()?.unwrap_or(FamilyConfig::SHORTEST_PATH)),
            alphas: vec![a.alpha],
            tolerance: a.tol,
            skip_oracle: a.skip_oracle,
            ..Self::new(&a.input.input, DistanceKind::Logforest)
        })
        .and_then(Self::checked)
    }

    pub fn from_geodetic(a: &GeodeticArgs) -> Result<Self, CliError> {
        Ok(Self {
            family: a.family.resolve()?,
            alphas: a.alpha.into_iter().collect(),
            tolerance: a.tol,
            ..Self::new(&a.input.input, a.kind)
        })
        .and_then(Self::checked)
    }

    fn checked(self) -> Result<Self, CliError> {
        if let Some(&bad) = self.alphas.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return Err(CliError::usage(format!("alpha must be positive and finite, got {bad}")));
        }
        if let Some(tol) = self.tolerance {
            if !(tol >= 0.0 && tol.is_finite()) {
                return Err(CliError::usage(format!("--tol must be nonnegative, got {tol}")));
            }
        }
        if let Some(cfg) = &self.family {
            cfg.validate().map_err(|e| CliError::usage(e.to_string()))?;
        }
        Ok(self)
    }

    /// The single alpha of a matrix command, if the kind takes one.
    pub fn alpha(&self) -> Result<Option<f64>, CliError> {
        match self.kind {
            DistanceKind::Logforest | DistanceKind::OrdinaryForest => match self.alphas.as_slice() {
                [a] => Ok(Some(*a)),
                _ => Err(CliError::usage(format!("--kind {} needs --alpha", self.kind.name()))),
            },
            _ => Ok(None),
        }
    }

    pub fn family_for_logforest(&self) -> Result<FamilyConfig, CliError> {
        self.family
            .ok_or_else(|| CliError::usage("--kind logforest needs --transform or --family"))
    }
}
