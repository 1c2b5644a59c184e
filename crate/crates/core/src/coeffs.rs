//! Coefficient families `(b_{n,N}, c_{n,N}, d_{n,N})` and their limit profiles.
//!
//! Every shipped family sits exactly on the limiting curve: with `t = n/N` and
//! `β(t) = 4α(t)/27` it returns `b = 3β`, `c = 3β²`, `d = β³`. Families whose
//! original coefficients grow like `N^p` (Laguerre I: `p = 1`, Macdonald:
//! `p = 2`) are stored already divided by `N^p`, `N^{2p}`, `N^{3p}`, so every
//! downstream routine works in rescaled coordinates; [`CoefficientFamily::raw_b`]
//! and friends undo the scaling for reporting.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::format;

use num_traits::Float;

use crate::error::{Error, Result};

/// Default upper end `t*` of the `n/N` range on which profiles are evaluated.
pub const DEFAULT_HORIZON: f64 = 4.0;

/// Source of the recurrence coefficients of a doubly indexed family `P_{n,N}`.
///
/// Implement this to plug exact (non-limit) coefficients into the evaluation
/// and zero-finding routines. Only `c(k, N)` for `k ≥ 1` and `d(k, N)` for
/// `k ≥ 2` are ever read by the recurrence.
pub trait RecurrenceCoefficients {
    fn b(&self, n: usize, big_n: usize) -> f64;
    fn c(&self, n: usize, big_n: usize) -> f64;
    fn d(&self, n: usize, big_n: usize) -> f64;

    /// Exponent `p` such that original zeros are the returned zeros times `N^p`.
    fn scale_exponent(&self) -> f64 {
        0.0
    }

    /// Largest admissible `n/N`, if the coefficients are only meaningful up to some `t*`.
    fn horizon(&self) -> Option<f64> {
        None
    }
}

/// A continuous, nonnegative profile `α : [0, ∞) → [0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaProfile {
    /// `α(t) = a`.
    Constant(f64),
    /// `α(t) = slope · t`.
    Linear { slope: f64 },
    /// `α(t) = coef · t²`.
    Quadratic { coef: f64 },
    /// Piecewise-linear interpolation of `(t, α)` knots starting at `t = 0`,
    /// held constant after the last knot.
    Table(Vec<(f64, f64)>),
}

impl AlphaProfile {
    /// Checks nonnegativity, finiteness and (for tables) continuity and the
    /// level-set interval property.
    pub fn validate(&self) -> Result<()> {
        let nonneg = |v: f64, what: &str| -> Result<()> {
            if !v.is_finite() || v < 0.0 {
                Err(Error::InvalidProfile(format!("{what} must be finite and nonnegative, got {v}")))
            } else {
                Ok(())
            }
        };
        match self {
            AlphaProfile::Constant(a) => nonneg(*a, "constant alpha"),
            AlphaProfile::Linear { slope } => nonneg(*slope, "slope"),
            AlphaProfile::Quadratic { coef } => nonneg(*coef, "coefficient"),
            AlphaProfile::Table(knots) => {
                if knots.len() < 2 {
                    return Err(Error::InvalidProfile("table needs at least two knots".to_string()));
                }
                if knots[0].0 != 0.0 {
                    return Err(Error::InvalidProfile(format!(
                        "table must start at t = 0, starts at {}",
                        knots[0].0
                    )));
                }
                for &(t, a) in knots {
                    if !t.is_finite() {
                        return Err(Error::InvalidProfile(format!("non-finite knot t = {t}")));
                    }
                    nonneg(a, "table alpha")?;
                }
                for w in knots.windows(2) {
                    if w[1].0 == w[0].0 && w[1].1 != w[0].1 {
                        return Err(Error::InvalidProfile(format!(
                            "discontinuity at t = {} ({} vs {})",
                            w[0].0, w[0].1, w[1].1
                        )));
                    }
                    if w[1].0 <= w[0].0 {
                        return Err(Error::InvalidProfile(format!(
                            "knots must be strictly increasing in t (at t = {})",
                            w[1].0
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            AlphaProfile::Constant(a) => *a,
            AlphaProfile::Linear { slope } => slope * t,
            AlphaProfile::Quadratic { coef } => coef * t * t,
            AlphaProfile::Table(knots) => {
                if t <= knots[0].0 {
                    return knots[0].1;
                }
                let last = knots[knots.len() - 1];
                if t >= last.0 {
                    return last.1;
                }
                let i = knots.partition_point(|&(s, _)| s <= t);
                let (t0, a0) = knots[i - 1];
                let (t1, a1) = knots[i];
                a0 + (a1 - a0) * (t - t0) / (t1 - t0)
            }
        }
    }

    /// True when the profile is non-decreasing then non-increasing, which is
    /// exactly when every level set `{s : α(s) ≥ x}` is an interval.
    pub fn has_interval_level_sets(&self) -> bool {
        match self {
            AlphaProfile::Table(knots) => {
                let mut descending = false;
                for w in knots.windows(2) {
                    if w[1].1 < w[0].1 {
                        descending = true;
                    } else if w[1].1 > w[0].1 && descending {
                        return false;
                    }
                }
                true
            }
            _ => true,
        }
    }

    /// `[t_-(x), t_+(x)]`, the set `{s ≥ 0 : x ≤ α(s)}`; `None` when empty.
    /// `t_+` is `+∞` when the set is unbounded.
    pub fn level_set(&self, x: f64) -> Result<Option<(f64, f64)>> {
        if x <= 0.0 {
            return Ok(Some((0.0, f64::INFINITY)));
        }
        match self {
            AlphaProfile::Constant(a) => Ok((x <= *a).then_some((0.0, f64::INFINITY))),
            AlphaProfile::Linear { slope } => {
                Ok((*slope > 0.0).then(|| (x / slope, f64::INFINITY)))
            }
            AlphaProfile::Quadratic { coef } => {
                Ok((*coef > 0.0).then(|| ((x / coef).sqrt(), f64::INFINITY)))
            }
            AlphaProfile::Table(knots) => {
                if !self.has_interval_level_sets() {
                    return Err(Error::NotAnInterval { x });
                }
                // first crossing upwards, last crossing downwards
                let cross = |(t0, a0): (f64, f64), (t1, a1): (f64, f64)| {
                    t0 + (x - a0) * (t1 - t0) / (a1 - a0)
                };
                let mut lo = None;
                if knots[0].1 >= x {
                    lo = Some(0.0);
                } else {
                    for w in knots.windows(2) {
                        if w[0].1 < x && w[1].1 >= x {
                            lo = Some(cross(w[0], w[1]));
                            break;
                        }
                    }
                }
                let Some(lo) = lo else { return Ok(None) };
                let mut hi = f64::INFINITY;
                if knots[knots.len() - 1].1 < x {
                    for w in knots.windows(2).rev() {
                        if w[0].1 >= x && w[1].1 < x {
                            hi = cross(w[0], w[1]);
                            break;
                        }
                    }
                }
                Ok(Some((lo, hi)))
            }
        }
    }

    /// `max_{0 ≤ s ≤ t} α(s)`.
    pub fn sup_on(&self, t: f64) -> f64 {
        match self {
            AlphaProfile::Constant(a) => *a,
            AlphaProfile::Linear { .. } | AlphaProfile::Quadratic { .. } => self.eval(t),
            AlphaProfile::Table(knots) => knots
                .iter()
                .take_while(|&&(s, _)| s <= t)
                .map(|&(_, a)| a)
                .fold(self.eval(t), f64::max),
        }
    }

    /// True when `α(s) = 0` for every `s` in `[0, t]`.
    pub fn vanishes_on(&self, t: f64) -> bool {
        self.sup_on(t) == 0.0
    }
}

/// An `α` profile together with the horizon `t*` on which it is evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitProfile {
    pub alpha: AlphaProfile,
    pub horizon: f64,
}

impl LimitProfile {
    pub fn new(alpha: AlphaProfile) -> Result<Self> {
        Self::with_horizon(alpha, DEFAULT_HORIZON)
    }

    pub fn with_horizon(alpha: AlphaProfile, horizon: f64) -> Result<Self> {
        alpha.validate()?;
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidParameter("horizon must be positive and finite"));
        }
        Ok(Self { alpha, horizon })
    }

    pub fn alpha(&self, t: f64) -> f64 {
        self.alpha.eval(t)
    }

    pub fn beta(&self, t: f64) -> f64 {
        4.0 * self.alpha.eval(t) / 27.0
    }

    pub fn t_minus(&self, x: f64) -> Result<Option<f64>> {
        Ok(self.alpha.level_set(x)?.map(|(lo, _)| lo))
    }

    pub fn t_plus(&self, x: f64) -> Result<Option<f64>> {
        Ok(self.alpha.level_set(x)?.map(|(_, hi)| hi))
    }
}

/// Which named construction a family came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Constant,
    JacobiPineiro,
    Laguerre1,
    Macdonald,
    Custom,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Constant => "constant",
            FamilyKind::JacobiPineiro => "jacobi_pineiro",
            FamilyKind::Laguerre1 => "laguerre1",
            FamilyKind::Macdonald => "macdonald",
            FamilyKind::Custom => "custom",
        }
    }
}

/// How finite-`n` coefficients are read off the profile, with `β_k = β(k/N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Construction {
    /// On the limiting curve at every index: `b_n = 3β_n`, `c_n = 3β_n²`, `d_n = β_n³`.
    #[default]
    Pinned,
    /// `b_n = 3β_{n+1}`, `c_n = 3β_{n+1}β_n`, `d_n = β_{n+1}β_nβ_{n-1}`: the
    /// recurrence matrix is a submatrix of a product of three lower bidiagonal
    /// matrices with subdiagonal `β_{k+1}`, hence totally nonnegative.
    Factorized,
}

impl Construction {
    pub fn as_str(self) -> &'static str {
        match self {
            Construction::Pinned => "pinned",
            Construction::Factorized => "factorized",
        }
    }
}

/// Coefficients `b, c, d` built from a profile (see [`Construction`]), already
/// rescaled by `N^p`.
///
/// Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFamily {
    pub name: String,
    pub kind: FamilyKind,
    pub profile: LimitProfile,
    pub scale_exponent: f64,
    pub construction: Construction,
}

impl CoefficientFamily {
    /// Constant coefficients `3β, 3β², β³` with `β = 4α/27` (the Toeplitz case).
    pub fn constant(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter("constant family needs alpha > 0"));
        }
        Ok(Self {
            name: format!("constant(alpha={alpha})"),
            kind: FamilyKind::Constant,
            profile: LimitProfile::new(AlphaProfile::Constant(alpha))?,
            scale_exponent: 0.0,
            construction: Construction::Pinned,
        })
    }

    /// Jacobi–Piñeiro limits: `α ≡ 1`.
    pub fn jacobi_pineiro() -> Self {
        Self {
            name: "jacobi_pineiro".to_string(),
            kind: FamilyKind::JacobiPineiro,
            profile: LimitProfile {
                alpha: AlphaProfile::Constant(1.0),
                horizon: DEFAULT_HORIZON,
            },
            scale_exponent: 0.0,
            construction: Construction::Pinned,
        }
    }

    /// Multiple Laguerre I limits after `z ↦ Nz`: `β(t) = t/2`, `α(t) = 27t/8`.
    pub fn laguerre1() -> Self {
        Self {
            name: "laguerre1".to_string(),
            kind: FamilyKind::Laguerre1,
            profile: LimitProfile {
                alpha: AlphaProfile::Linear { slope: 27.0 / 8.0 },
                horizon: DEFAULT_HORIZON,
            },
            scale_exponent: 1.0,
            construction: Construction::Pinned,
        }
    }

    /// Macdonald-function limits after `z ↦ N²z`: `β(t) = t²`, `α(t) = 27t²/4`.
    pub fn macdonald() -> Self {
        Self {
            name: "macdonald".to_string(),
            kind: FamilyKind::Macdonald,
            profile: LimitProfile {
                alpha: AlphaProfile::Quadratic { coef: 27.0 / 4.0 },
                horizon: DEFAULT_HORIZON,
            },
            scale_exponent: 2.0,
            construction: Construction::Pinned,
        }
    }

    /// A family on the limiting curve of an arbitrary validated profile.
    pub fn custom(name: impl Into<String>, profile: LimitProfile, scale_exponent: f64) -> Result<Self> {
        profile.alpha.validate()?;
        if !(scale_exponent >= 0.0 && scale_exponent.is_finite()) {
            return Err(Error::InvalidParameter("scale_exponent must be finite and nonnegative"));
        }
        Ok(Self {
            name: name.into(),
            kind: FamilyKind::Custom,
            profile,
            scale_exponent,
            construction: Construction::Pinned,
        })
    }

    pub fn with_construction(mut self, construction: Construction) -> Self {
        self.construction = construction;
        self
    }

    pub fn with_horizon(mut self, horizon: f64) -> Result<Self> {
        self.profile = LimitProfile::with_horizon(self.profile.alpha, horizon)?;
        Ok(self)
    }

    pub fn alpha(&self, t: f64) -> f64 {
        self.profile.alpha(t)
    }

    pub fn beta(&self, t: f64) -> f64 {
        self.profile.beta(t)
    }

    /// The three `β` values entering `b_n`, `c_n`, `d_n` as first, second and third factor.
    fn betas(&self, n: usize, big_n: usize) -> [f64; 3] {
        let at = |k: usize| self.profile.beta(k as f64 / big_n as f64);
        match self.construction {
            Construction::Pinned => {
                let b = at(n);
                [b, b, b]
            }
            Construction::Factorized => [at(n + 1), at(n), at(n.saturating_sub(1))],
        }
    }

    /// `b` in the original (unscaled) coordinates: `N^p · b`.
    pub fn raw_b(&self, n: usize, big_n: usize) -> f64 {
        (big_n as f64).powf(self.scale_exponent) * self.b(n, big_n)
    }

    pub fn raw_c(&self, n: usize, big_n: usize) -> f64 {
        (big_n as f64).powf(2.0 * self.scale_exponent) * self.c(n, big_n)
    }

    pub fn raw_d(&self, n: usize, big_n: usize) -> f64 {
        (big_n as f64).powf(3.0 * self.scale_exponent) * self.d(n, big_n)
    }

    /// Largest deviation of `(b, c, d)` at `n = round(tN)` from `(3β(t), 3β(t)², β(t)³)`.
    pub fn limit_deviation(&self, t: f64, big_n: usize) -> f64 {
        let n = (t * big_n as f64).round() as usize;
        let beta = self.beta(t);
        let db = (self.b(n, big_n) - 3.0 * beta).abs();
        let dc = (self.c(n, big_n) - 3.0 * beta * beta).abs();
        let dd = (self.d(n, big_n) - beta * beta * beta).abs();
        db.max(dc).max(dd)
    }

    /// True when every coefficient used by `P_0 … P_n` vanishes, so `P_k = x^k`.
    pub fn is_degenerate_up_to(&self, n: usize, big_n: usize) -> bool {
        self.profile
            .alpha
            .vanishes_on(n.saturating_sub(1) as f64 / big_n as f64)
    }
}

impl RecurrenceCoefficients for CoefficientFamily {
    fn b(&self, n: usize, big_n: usize) -> f64 {
        3.0 * self.betas(n, big_n)[0]
    }

    fn c(&self, n: usize, big_n: usize) -> f64 {
        let [b0, b1, _] = self.betas(n, big_n);
        3.0 * b0 * b1
    }

    fn d(&self, n: usize, big_n: usize) -> f64 {
        let [b0, b1, b2] = self.betas(n, big_n);
        b0 * b1 * b2
    }

    fn scale_exponent(&self) -> f64 {
        self.scale_exponent
    }

    fn horizon(&self) -> Option<f64> {
        match self.profile.alpha {
            AlphaProfile::Constant(_) => None,
            _ => Some(self.profile.horizon),
        }
    }
}

/// Checks `α` for finiteness and nonnegativity on `samples + 1` equispaced
/// points of `[0, horizon]`.
pub fn check_profile_on_grid(profile: &LimitProfile, samples: usize) -> Result<()> {
    let samples = samples.max(1);
    (0..=samples)
        .map(|i| profile.horizon * i as f64 / samples as f64)
        .try_for_each(|t| {
            let a = profile.alpha(t);
            if a.is_finite() && a >= 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidProfile(format!("alpha({t}) = {a}")))
            }
        })
}

/// Scans `[0, horizon]` and reports whether every sampled level set of `α`
/// is an interval (checked on `samples` levels between 0 and `max α`).
pub fn level_sets_are_intervals_on_grid(profile: &LimitProfile, samples: usize) -> bool {
    let grid: Vec<f64> = (0..=samples)
        .map(|i| profile.alpha(profile.horizon * i as f64 / samples as f64))
        .collect();
    let top = grid.iter().copied().fold(0.0, f64::max);
    (1..samples).all(|j| {
        let x = top * j as f64 / samples as f64;
        // count maximal runs of grid points with α ≥ x
        let mut runs = 0;
        let mut inside = false;
        for &a in &grid {
            let now = a >= x;
            if now && !inside {
                runs += 1;
            }
            inside = now;
        }
        runs <= 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn constant_family_values() {
        let f = CoefficientFamily::constant(27.0 / 4.0).unwrap();
        assert!(close(f.b(0, 1), 3.0, 1e-15));
        assert!(close(f.c(4, 7), 3.0, 1e-15));
        assert!(close(f.d(9, 2), 1.0, 1e-15));

        let f = CoefficientFamily::constant(1.0).unwrap();
        assert!(close(f.b(3, 5), 4.0 / 9.0, 1e-15));
        assert!(close(f.c(3, 5), 48.0 / 729.0, 1e-15));
        assert!(close(f.d(3, 5), 64.0 / 19683.0, 1e-15));
        assert_eq!(f.b(17, 3), f.b(0, 1));
        assert_eq!(f.scale_exponent, 0.0);
    }

    #[test]
    fn constant_family_rejects_nonpositive_alpha() {
        assert!(CoefficientFamily::constant(0.0).is_err());
        assert!(CoefficientFamily::constant(-2.0).is_err());
        assert!(CoefficientFamily::constant(f64::NAN).is_err());
    }

    #[test]
    fn jacobi_pineiro_limits() {
        let f = CoefficientFamily::jacobi_pineiro();
        let q = 4.0 / 27.0;
        assert!(close(f.b(5, 10), 3.0 * q, 1e-15));
        assert!(close(f.c(5, 10), 3.0 * q * q, 1e-15));
        assert!(close(f.d(5, 10), q * q * q, 1e-15));
    }

    #[test]
    fn laguerre_rescaled_and_raw() {
        let f = CoefficientFamily::laguerre1();
        assert!(close(f.b(10, 10), 1.5, 1e-15));
        assert!(close(f.alpha(1.0), 27.0 / 8.0, 1e-15));
        assert!(close(f.d(20, 10), 1.0, 1e-15));
        // raw b = N · 3(t/2)
        assert!(close(f.raw_b(50, 100), 100.0 * 3.0 * 0.25, 1e-13));
        assert!(close(f.raw_c(50, 100), 1e4 * 3.0 * 0.0625, 1e-13));
        assert_eq!(f.scale_exponent, 1.0);
    }

    #[test]
    fn macdonald_rescaled() {
        let f = CoefficientFamily::macdonald();
        assert!(close(f.b(10, 10), 3.0, 1e-15));
        assert!(close(f.alpha(1.0), 27.0 / 4.0, 1e-15));
        assert!(close(f.d(5, 10), 1.0 / 64.0, 1e-15));
        assert!(close(f.raw_b(10, 10), 100.0 * 3.0, 1e-13));
    }

    #[test]
    fn custom_family_from_table() {
        let knots: Vec<(f64, f64)> = (0..=40).map(|i| {
            let t = i as f64 * 0.1;
            (t, t * t)
        }).collect();
        let f = CoefficientFamily::custom("sq", LimitProfile::new(AlphaProfile::Table(knots)).unwrap(), 0.0)
            .unwrap();
        // on a knot the interpolation is exact
        let t: f64 = 1.2;
        let beta = 4.0 * t * t / 27.0;
        assert!(close(f.b(12, 10), 3.0 * beta, 1e-12));

        let zero = CoefficientFamily::custom("zero", LimitProfile::new(AlphaProfile::Constant(0.0)).unwrap(), 0.0)
            .unwrap();
        assert_eq!((zero.b(3, 4), zero.c(3, 4), zero.d(3, 4)), (0.0, 0.0, 0.0));
        assert!(zero.is_degenerate_up_to(10, 3));
    }

    #[test]
    fn table_rejections() {
        let neg = AlphaProfile::Table(vec![(0.0, 1.0), (1.0, -0.5)]);
        assert!(LimitProfile::new(neg).is_err());
        let jump = AlphaProfile::Table(vec![(0.0, 1.0), (1.0, 1.0), (1.0, 2.0)]);
        assert!(matches!(LimitProfile::new(jump), Err(Error::InvalidProfile(_))));
        let late = AlphaProfile::Table(vec![(0.5, 1.0), (1.0, 2.0)]);
        assert!(LimitProfile::new(late).is_err());
    }

    #[test]
    fn curve_identities_hold_exactly_enough() {
        let fams = [
            CoefficientFamily::constant(2.0).unwrap(),
            CoefficientFamily::jacobi_pineiro(),
            CoefficientFamily::laguerre1(),
            CoefficientFamily::macdonald(),
        ];
        for f in &fams {
            for big_n in [1usize, 7, 50] {
                for n in 0..=3 * big_n {
                    let (b, c, d) = (f.b(n, big_n), f.c(n, big_n), f.d(n, big_n));
                    assert!(close(c, b * b / 3.0, 1e-14), "{} {n} {big_n}", f.name);
                    assert!(close(d, (b / 3.0).powi(3), 1e-14), "{} {n} {big_n}", f.name);
                }
            }
            for t in [0.25, 1.0, 2.5] {
                assert!(close(f.beta(t), 4.0 * f.alpha(t) / 27.0, 1e-15));
                // rational t·N lands on a grid point: exact limit
                assert!(f.limit_deviation(t, 4) < 1e-14);
            }
        }
    }

    #[test]
    fn limit_deviation_shrinks_with_n() {
        let f = CoefficientFamily::laguerre1();
        let t = 1.0 / 3.0;
        let d10 = f.limit_deviation(t, 10);
        let d1000 = f.limit_deviation(t, 1000);
        assert!(d1000 < d10);
        assert!(d1000 < 2.0 / 1000.0);
    }

    #[test]
    fn level_sets() {
        let lag = CoefficientFamily::laguerre1().profile;
        assert!(close(lag.t_minus(27.0 / 8.0).unwrap().unwrap(), 1.0, 1e-15));
        assert_eq!(lag.t_plus(2.0).unwrap(), Some(f64::INFINITY));
        let mac = CoefficientFamily::macdonald().profile;
        assert!(close(mac.t_minus(27.0 / 4.0 * 0.25).unwrap().unwrap(), 0.5, 1e-15));
        let c = CoefficientFamily::constant(2.0).unwrap().profile;
        assert_eq!(c.t_minus(3.0).unwrap(), None);
        assert_eq!(c.t_minus(1.0).unwrap(), Some(0.0));

        let hump = AlphaProfile::Table(vec![(0.0, 0.0), (1.0, 2.0), (2.0, 0.0)]);
        let (lo, hi) = hump.level_set(1.0).unwrap().unwrap();
        assert!(close(lo, 0.5, 1e-15) && close(hi, 1.5, 1e-15));
        let two_humps = AlphaProfile::Table(vec![(0.0, 0.0), (1.0, 2.0), (2.0, 0.0), (3.0, 2.0)]);
        assert!(!two_humps.has_interval_level_sets());
        assert!(matches!(two_humps.level_set(1.0), Err(Error::NotAnInterval { .. })));
    }

    #[test]
    fn grid_scans() {
        for f in [CoefficientFamily::laguerre1(), CoefficientFamily::macdonald()] {
            check_profile_on_grid(&f.profile, 400).unwrap();
            assert!(level_sets_are_intervals_on_grid(&f.profile, 400));
            for i in 1..50 {
                let x = 0.3 * i as f64;
                let lo = f.profile.t_minus(x).unwrap().unwrap();
                // α ≥ x on a sample of (t_-, horizon)
                for j in 1..10 {
                    let s = lo + (f.profile.horizon - lo) * j as f64 / 10.0;
                    if s <= f.profile.horizon {
                        assert!(f.alpha(s) >= x * (1.0 - 1e-14));
                    }
                }
            }
        }
        let two_humps = LimitProfile::new(AlphaProfile::Table(vec![
            (0.0, 0.0),
            (1.0, 2.0),
            (2.0, 0.0),
            (3.0, 2.0),
        ]))
        .unwrap();
        assert!(!level_sets_are_intervals_on_grid(&two_humps, 300));
    }
}
