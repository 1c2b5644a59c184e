use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its documented domain.
    InvalidParameter(&'static str),
    /// An `α` profile is negative, non-finite or discontinuous.
    InvalidProfile(alloc::string::String),
    /// `{s : x ≤ α(s)}` is not an interval for some `x`.
    NotAnInterval { x: f64 },
    /// A bracket of the cascade shows no sign change of `P_level`.
    InterlacingViolation { level: usize, bracket: usize, lo: f64, hi: f64 },
    /// An iteration did not reach its tolerance.
    ToleranceFailure { what: &'static str, achieved: f64, required: f64 },
    /// A ratio `P_k/P_{k-1}` collapsed below the floor: `z` sits near a zero.
    NearPole { index: usize, magnitude: f64 },
    /// `φ` was requested on (or within rounding distance of) its cut `[0, 1]`.
    OnCut { re: f64, im: f64 },
    /// Root tracking of the cubic could not separate the branches.
    Ambiguity { re: f64, im: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::InvalidProfile(why) => write!(f, "invalid alpha profile: {why}"),
            Error::NotAnInterval { x } => {
                write!(f, "level set {{s : alpha(s) >= {x}}} is not an interval")
            }
            Error::InterlacingViolation { level, bracket, lo, hi } => write!(
                f,
                "interlacing violation at level {level}: no sign change on bracket {bracket} [{lo:e}, {hi:e}]"
            ),
            Error::ToleranceFailure { what, achieved, required } => {
                write!(f, "{what}: achieved {achieved:e}, required {required:e}")
            }
            Error::NearPole { index, magnitude } => {
                write!(f, "ratio r_{index} collapsed to {magnitude:e} (point too close to a zero)")
            }
            Error::OnCut { re, im } => write!(f, "phi evaluated on its cut at {re}{im:+}i"),
            Error::Ambiguity { re, im } => {
                write!(f, "cubic branch ambiguous near {re}{im:+}i")
            }
        }
    }
}

impl core::error::Error for Error {}
