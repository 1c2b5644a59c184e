//! Zero distributions of polynomials generated by a four-term recurrence
//!
//! ```text
//! z P_{n,N}(z) = P_{n+1,N}(z) + b_{n,N} P_{n,N}(z) + c_{n,N} P_{n-1,N}(z) + d_{n,N} P_{n-2,N}(z)
//! ```
//!
//! with `P_0 = 1`, `P_{-1} = P_{-2} = 0`, whose coefficients approach the curve
//! `(3β, 3β², β³)` with `β(t) = 4α(t)/27` as `n/N → t`.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the CLI and report
//! writing live in the `zerodist` companion crate.
//!
//! Layout:
//! - [`coeffs`]: coefficient families and their limit profiles `α(t)`.
//! - [`polycore`]: overflow-safe recurrence evaluation, ratios and log-derivatives.
//! - [`zeros`]: interlacing bisection cascade and empirical zero measures.
//! - [`measures`]: limit densities, CDFs, moments and Kolmogorov–Smirnov distances.
//! - [`phifield`]: the branch function `φ`, its cubic-homotopy twin and the jump/growth/Stieltjes checks.
//! - [`toeplitz`]: banded Toeplitz matrices `T_n^α`, `Q_n(0)` and total nonnegativity.
//! - [`verify`]: the aggregated numeric checks with their pass/fail gates.
#![cfg_attr(not(test), no_std)]
#![cfg_attr(test, allow(unused_imports))]

extern crate alloc;

pub mod coeffs;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod phifield;
pub mod polycore;
pub mod quadrature;
pub mod toeplitz;
pub mod verify;
pub mod zeros;

pub use num_complex::Complex64;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use coeffs::{AlphaProfile, CoefficientFamily, Construction, FamilyKind, LimitProfile, RecurrenceCoefficients};
pub use error::{Error, Result};
pub use measures::{EmpiricalMeasure, KsReport, LimitMeasure};
pub use phifield::PhiEval;
pub use polycore::{RatioState, ScaledValue};
pub use zeros::{ZeroCascade, ZeroSet};
