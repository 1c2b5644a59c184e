//! Run configuration: an optional JSON file overlaid by command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use zerodist_core::verify::Tolerances;
use zerodist_core::{CoefficientFamily, Complex64};

use crate::error::{CliError, Result};
use crate::family::{named_family, parse_construction, FamilyDescriptor};

pub const MAX_DEGREE: usize = 20_000;
pub const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// constant | jacobi_pineiro | laguerre1 | macdonald | custom
    #[arg(long)]
    pub family: Option<String>,
    /// Family descriptor file (implies the family it describes).
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Degree.
    #[arg(long)]
    pub n: Option<usize>,
    /// Scaling parameter of varying families.
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    #[arg(long)]
    pub t: Option<f64>,
    /// pinned | factorized (default factorized).
    #[arg(long)]
    pub construction: Option<String>,
    /// Evaluation points such as `3,-1,1.5+1.5i`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub z: Option<Vec<String>>,
    /// Degrees to tabulate, e.g. `100,200,400`.
    #[arg(long, value_delimiter = ',')]
    pub schedule: Option<Vec<usize>>,
    /// Table size for `density`, random grid size for `phi-check`.
    #[arg(long)]
    pub points: Option<usize>,
    /// fig1 | fig2-laguerre | fig2-macdonald
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Gate override `KEY=VALUE`; repeatable.
    #[arg(long, value_name = "KEY=VAL")]
    pub tol: Vec<String>,
    /// Check groups or numbers for `verify`, e.g. `phi,ks` or `1,2`.
    #[arg(long)]
    pub only: Option<String>,
}

/// Every setting a command can read. Unknown fields are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tol: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub only: Option<String>,
}

fn parse_tol(item: &str) -> Result<(String, f64)> {
    let (k, v) = item
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--tol expects KEY=VAL, got {item:?}")))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("--tol {k}: {v:?} is not a number")))?;
    Ok((k.trim().to_string(), v))
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Reads `--config` if given, then applies the flags on top.
    pub fn resolve(command: &str, flags: &Flags) -> Result<Self> {
        let mut cfg = match &flags.config {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        if let Some(c) = &cfg.command {
            if c != command {
                return Err(CliError::Config(format!("config is for command {c:?}, not {command:?}")));
            }
        }
        cfg.command = Some(command.to_string());
        macro_rules! overlay {
            ($($f:ident),*) => {$(
                if flags.$f.is_some() {
                    cfg.$f = flags.$f.clone();
                }
            )*};
        }
        overlay!(family, spec, alpha, n, big_n, t, construction, z, schedule, points, preset, out, format, seed, only);
        for item in &flags.tol {
            let (k, v) = parse_tol(item)?;
            cfg.tol.insert(k, v);
        }
        cfg.tolerances()?;
        Ok(cfg)
    }

    /// Default gates with the overrides applied.
    pub fn tolerances(&self) -> Result<Tolerances> {
        let mut tol = Tolerances::default();
        for (k, v) in &self.tol {
            tol.set(k, *v)
                .map_err(|e| CliError::Config(format!("tolerance {k}={v}: {e}; known keys: {}", Tolerances::KEYS.join(", "))))?;
        }
        Ok(tol)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(zerodist_core::verify::DEFAULT_SEED)
    }

    pub fn family_name(&self) -> &str {
        match (&self.family, &self.spec) {
            (Some(f), _) => f,
            (None, Some(_)) => "custom",
            (None, None) => "constant",
        }
    }

    pub fn family(&self) -> Result<CoefficientFamily> {
        let construction = self.construction.as_deref().map(parse_construction).transpose()?;
        if let Some(path) = &self.spec {
            let desc = FamilyDescriptor::load(path)?;
            if let Some(f) = &self.family {
                if *f != "custom" && *f != desc.kind {
                    return Err(CliError::Validation(format!(
                        "--family {f} disagrees with descriptor kind {:?}",
                        desc.kind
                    )));
                }
            }
            if self.alpha.is_some() {
                return Err(CliError::Validation("--alpha cannot override a descriptor file".into()));
            }
            return desc.build(construction);
        }
        let fam = named_family(self.family_name(), self.alpha)?;
        Ok(fam.with_construction(construction.unwrap_or(zerodist_core::Construction::Factorized)))
    }

    pub fn degree(&self, default: usize) -> Result<usize> {
        let n = self.n.unwrap_or(default);
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(CliError::Validation(format!("n must lie in 1..={MAX_DEGREE}, got {n}")));
        }
        Ok(n)
    }

    pub fn t(&self, default: f64) -> Result<f64> {
        let t = self.t.unwrap_or(default);
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Validation(format!("t must be positive and finite, got {t}")));
        }
        Ok(t)
    }

    pub fn points(&self, default: usize) -> Result<usize> {
        let p = self.points.unwrap_or(default);
        if !(2..=MAX_POINTS).contains(&p) {
            return Err(CliError::Validation(format!("points must lie in 2..={MAX_POINTS}, got {p}")));
        }
        Ok(p)
    }

    pub fn schedule(&self, default: &[usize]) -> Result<Vec<usize>> {
        let s = self.schedule.clone().unwrap_or_else(|| default.to_vec());
        if s.is_empty() || s.iter().any(|&n| !(1..=MAX_DEGREE).contains(&n)) {
            return Err(CliError::Validation(format!("schedule entries must lie in 1..={MAX_DEGREE}")));
        }
        Ok(s)
    }

    pub fn z_points(&self) -> Result<Option<Vec<Complex64>>> {
        self.z
            .as_ref()
            .map(|zs| zs.iter().map(|s| parse_complex(s)).collect::<Result<Vec<_>>>())
            .transpose()
    }
}

/// Parses `3`, `-1`, `2i`, `-i`, `1.5+1.5i`, `1e-3-2e2i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || CliError::Validation(format!("cannot parse complex number {s:?}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let num = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(t.parse::<f64>().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let z = match split {
        Some(k) => Complex64::new(body[..k].parse::<f64>().map_err(|_| bad())?, num(&body[k..])?),
        None => Complex64::new(0.0, num(body)?),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}
