//! Family descriptor files and named families.
//!
//! ```json
//! {"name": "ramp", "kind": "custom",
//!  "alpha": {"grid": [[0, 0], [1, 2]], "interp": "linear"},
//!  "scale_exponent": 1}
//! ```
//!
//! `alpha` is a number for constant profiles. The named kinds fix their own
//! profile and scale exponent, so those fields must be absent or agree.

use std::path::Path;

use serde::{Deserialize, Serialize};
use zerodist_core::{AlphaProfile, CoefficientFamily, Construction, FamilyKind, LimitProfile};

use crate::error::{CliError, Result};

pub const FAMILY_NAMES: [&str; 5] = ["constant", "jacobi_pineiro", "laguerre1", "macdonald", "custom"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaSpec {
    Value(f64),
    Grid(AlphaGrid),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaGrid {
    pub grid: Vec<[f64; 2]>,
    #[serde(default = "linear")]
    pub interp: String,
}

fn linear() -> String {
    "linear".to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDescriptor {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale_exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn parse_construction(s: &str) -> Result<Construction> {
    match s {
        "pinned" => Ok(Construction::Pinned),
        "factorized" => Ok(Construction::Factorized),
        other => Err(invalid(format!("unknown construction {other:?} (pinned|factorized)"))),
    }
}

fn profile_of(alpha: &AlphaSpec) -> Result<AlphaProfile> {
    let p = match alpha {
        AlphaSpec::Value(a) => AlphaProfile::Constant(*a),
        AlphaSpec::Grid(g) => {
            if g.interp != "linear" {
                return Err(invalid(format!("unsupported interp {:?}, only \"linear\"", g.interp)));
            }
            AlphaProfile::Table(g.grid.iter().map(|&[t, a]| (t, a)).collect())
        }
    };
    p.validate()?;
    Ok(p)
}

impl FamilyDescriptor {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read family descriptor {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| invalid(format!("family descriptor {}: {e}", path.display())))
    }

    /// Builds the family; `construction` from the caller wins over the file.
    pub fn build(&self, construction: Option<Construction>) -> Result<CoefficientFamily> {
        let mut fam = match self.kind.as_str() {
            "constant" => match &self.alpha {
                Some(AlphaSpec::Value(a)) => CoefficientFamily::constant(*a)?,
                _ => return Err(invalid("constant family needs a numeric alpha")),
            },
            "jacobi_pineiro" | "laguerre1" | "macdonald" => {
                let fam = named_family(&self.kind, None)?;
                if self.alpha.is_some() {
                    return Err(invalid(format!("{} fixes its own alpha profile", self.kind)));
                }
                if let Some(p) = self.scale_exponent {
                    if p != fam.scale_exponent {
                        return Err(invalid(format!(
                            "{} has scale_exponent {}, descriptor says {p}",
                            self.kind, fam.scale_exponent
                        )));
                    }
                }
                fam
            }
            "custom" => {
                let alpha = self.alpha.as_ref().ok_or_else(|| invalid("custom family needs alpha"))?;
                let profile = LimitProfile::new(profile_of(alpha)?)?;
                CoefficientFamily::custom(self.name.clone(), profile, self.scale_exponent.unwrap_or(0.0))?
            }
            other => return Err(invalid(format!("unknown family kind {other:?}"))),
        };
        if fam.kind != FamilyKind::Custom {
            fam.name = self.name.clone();
        }
        if let Some(h) = self.horizon {
            fam = fam.with_horizon(h)?;
        }
        let file_choice = self.construction.as_deref().map(parse_construction).transpose()?;
        Ok(fam.with_construction(construction.or(file_choice).unwrap_or(Construction::Factorized)))
    }
}

/// A shipped family by name; `alpha` only applies to `constant` (default 1,
/// and `0` gives `P_n = z^n`).
pub fn named_family(name: &str, alpha: Option<f64>) -> Result<CoefficientFamily> {
    if alpha.is_some() && name != "constant" {
        return Err(invalid(format!("--alpha only applies to the constant family, not {name}")));
    }
    match name {
        "constant" if alpha == Some(0.0) => {
            Ok(CoefficientFamily::custom("zero", LimitProfile::new(AlphaProfile::Constant(0.0))?, 0.0)?)
        }
        "constant" => Ok(CoefficientFamily::constant(alpha.unwrap_or(1.0))?),
        "jacobi_pineiro" => Ok(CoefficientFamily::jacobi_pineiro()),
        "laguerre1" => Ok(CoefficientFamily::laguerre1()),
        "macdonald" => Ok(CoefficientFamily::macdonald()),
        "custom" => Err(invalid("the custom family needs --spec FILE")),
        other => Err(invalid(format!("unknown family {other:?}; expected one of {}", FAMILY_NAMES.join(", ")))),
    }
}
