//! Limit measures of the zero distributions and their comparison with
//! empirical zero-counting measures.
//!
//! The closed-form densities all have the shape `c · num(w) / y^{2/3}` on
//! `0 < y < 1` with `w = √(1-y)`, so they share one set of quadrature
//! substitutions: `y = u³` on `[0, ½]` and `y = 1 - v²` on `[½, 1]`.
//! After substitution every integrand is bounded.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::coeffs::LimitProfile;
use crate::error::{Error, Result};
use crate::phifield::phi_laurent_coeffs;
use crate::quadrature::{integrate, QuadOptions, QuadValue};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// The three unit-interval density shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    /// `υ_{[0,1]}`: `√3/(4π) · ((1+w)^{1/3} + (1-w)^{1/3}) / (y^{2/3} w)`.
    Upsilon,
    /// `g`: `3√3/(16π) · ((1+3w)(1-w)^{1/3} - (1-3w)(1+w)^{1/3}) / y^{2/3}`.
    G,
    /// `h`: `3√3/(4π) · ((1+w)^{1/3} - (1-w)^{1/3}) / y^{2/3}`.
    H,
}

impl Shape {
    /// Numerator at `w`, given `1 - w` computed without cancellation.
    fn numerator(self, w: f64, one_minus_w: f64) -> f64 {
        let p = (1.0 + w).cbrt();
        let m = one_minus_w.cbrt();
        match self {
            Shape::Upsilon => SQRT3 / (4.0 * PI) * (p + m),
            Shape::G => 3.0 * SQRT3 / (16.0 * PI) * ((1.0 + 3.0 * w) * m - (1.0 - 3.0 * w) * p),
            Shape::H => 3.0 * SQRT3 / (4.0 * PI) * (p - m),
        }
    }

    /// Density at `y`, with `omy = 1 - y` supplied by the caller.
    fn density(self, y: f64, omy: f64) -> f64 {
        if y == 0.0 {
            return f64::INFINITY;
        }
        if omy == 0.0 && self == Shape::Upsilon {
            return f64::INFINITY;
        }
        if !(y > 0.0 && omy > 0.0) {
            return 0.0;
        }
        let w = omy.sqrt();
        let val = self.numerator(w, y / (1.0 + w)) / y.powf(2.0 / 3.0);
        match self {
            Shape::Upsilon => val / w,
            _ => val,
        }
    }

    /// `density(u³) · 3u²`.
    fn lower(self, u: f64) -> f64 {
        let y = u * u * u;
        let w = (1.0 - y).sqrt();
        let val = 3.0 * self.numerator(w, y / (1.0 + w));
        match self {
            Shape::Upsilon => val / w,
            _ => val,
        }
    }

    /// `density(1 - v²) · 2v`.
    fn upper(self, v: f64) -> f64 {
        let y = (1.0 - v) * (1.0 + v);
        let val = 2.0 * self.numerator(v, 1.0 - v) / y.powf(2.0 / 3.0);
        match self {
            Shape::Upsilon => val,
            _ => val * v,
        }
    }

    /// `∫_0^y density · k(y)` for `y ≤ ½` through `y = u³`.
    fn integrate_lower<T, K>(self, y: f64, mut kernel: K, opts: QuadOptions) -> Result<T>
    where
        T: QuadValue,
        K: FnMut(f64) -> T,
    {
        integrate(|u: f64| kernel(u * u * u) * self.lower(u), 0.0, y.cbrt(), opts).map(|r| r.value)
    }

    /// `∫_y^1 density · k(y)` for `y ≥ ½` through `y = 1 - v²`; takes `1 - y`.
    fn integrate_upper<T, K>(self, omy: f64, mut kernel: K, opts: QuadOptions) -> Result<T>
    where
        T: QuadValue,
        K: FnMut(f64) -> T,
    {
        integrate(|v: f64| kernel((1.0 - v) * (1.0 + v)) * self.upper(v), 0.0, omy.sqrt(), opts)
            .map(|r| r.value)
    }

    fn cdf(self, y: f64, omy: f64, opts: QuadOptions) -> Result<f64> {
        if y <= 0.0 {
            return Ok(0.0);
        }
        if omy <= 0.0 {
            return Ok(1.0);
        }
        let v = if y <= 0.5 {
            self.integrate_lower(y, |_| 1.0, opts)?
        } else {
            1.0 - self.integrate_upper(omy, |_| 1.0, opts)?
        };
        Ok(v.clamp(0.0, 1.0))
    }

    fn integrate_all<T, K>(self, mut kernel: K, opts: QuadOptions) -> Result<T>
    where
        T: QuadValue,
        K: FnMut(f64) -> T,
    {
        Ok(self.integrate_lower(0.5, &mut kernel, opts)? + self.integrate_upper(0.5, &mut kernel, opts)?)
    }
}

/// Density of `υ_{[0,1]}`: zero outside `(0, 1)`, `+∞` at both endpoints.
pub fn upsilon_unit_density(x: f64) -> f64 {
    if x < 0.0 || x > 1.0 {
        return 0.0;
    }
    Shape::Upsilon.density(x, 1.0 - x)
}

/// Density of `υ_{[0,α]}`, `(1/α) υ_{[0,1]}(x/α)`.
pub fn upsilon_alpha_density(alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter("alpha must be positive (alpha = 0 is the Dirac measure)"));
    }
    if x < 0.0 || x > alpha {
        return Ok(0.0);
    }
    Ok(Shape::Upsilon.density(x / alpha, (alpha - x) / alpha) / alpha)
}

/// `g(y)` on `[0, 1]`, zero outside.
pub fn g(y: f64) -> f64 {
    if y < 0.0 || y > 1.0 {
        return 0.0;
    }
    Shape::G.density(y, 1.0 - y)
}

/// `h(y)` on `[0, 1]`, zero outside.
pub fn h(y: f64) -> f64 {
    if y < 0.0 || y > 1.0 {
        return 0.0;
    }
    Shape::H.density(y, 1.0 - y)
}

/// `8/(27t) · g(8x/(27t))` on `(0, 27t/8)`.
pub fn nu_l_density(t: f64, x: f64) -> Result<f64> {
    positive_t(t)?;
    let s = 27.0 * t / 8.0;
    if x < 0.0 || x > s {
        return Ok(0.0);
    }
    Ok(Shape::G.density(x / s, (s - x) / s) / s)
}

/// `4/(27t²) · h(4x/(27t²))` on `(0, 27t²/4)`.
pub fn nu_m_density(t: f64, x: f64) -> Result<f64> {
    positive_t(t)?;
    let s = 27.0 * t * t / 4.0;
    if x < 0.0 || x > s {
        return Ok(0.0);
    }
    Ok(Shape::H.density(x / s, (s - x) / s) / s)
}

fn positive_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter("t must be positive and finite"))
    }
}

/// `∫_lo^hi f` split at the midpoint, with `s = lo + v²` and `s = hi - v²` on
/// the two halves to absorb inverse square-root endpoint behaviour.
fn integrate_both_ends<F>(mut f: F, lo: f64, hi: f64, opts: QuadOptions) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let half = 0.5 * (hi - lo);
    let root = half.sqrt();
    let left = integrate(|v: f64| 2.0 * v * f(lo + v * v), 0.0, root, opts)?.value;
    let right = integrate(|v: f64| 2.0 * v * f(hi - v * v), 0.0, root, opts)?.value;
    Ok(left + right)
}

/// `[min(t, t_-(x)), min(t, t_+(x))]`, or `None` if empty.
fn active_window(profile: &LimitProfile, t: f64, x: f64) -> Result<Option<(f64, f64)>> {
    if !profile.alpha.has_interval_level_sets() {
        return Err(Error::NotAnInterval { x });
    }
    Ok(profile.alpha.level_set(x)?.and_then(|(lo, hi)| {
        let (a, b) = (lo.min(t), hi.min(t));
        (a < b).then_some((a, b))
    }))
}

/// `(1/t) ∫_{min(t,t_-(x))}^{min(t,t_+(x))} (1/α(s)) υ_{[0,1]}(x/α(s)) ds`.
pub fn nu_profile_density(profile: &LimitProfile, t: f64, x: f64) -> Result<f64> {
    positive_t(t)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    let Some((a, b)) = active_window(profile, t, x)? else { return Ok(0.0) };
    let integrand = |s: f64| {
        let al = profile.alpha(s);
        if !(al > x) {
            return 0.0;
        }
        Shape::Upsilon.density(x / al, (al - x) / al) / al
    };
    Ok(integrate_both_ends(integrand, a, b, QuadOptions::default())? / t)
}

/// `μ(P_n)`: uniform mass on a sorted list of points.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMeasure {
    points: Vec<f64>,
}

impl EmpiricalMeasure {
    pub fn new(mut points: Vec<f64>) -> Self {
        points.sort_by(f64::total_cmp);
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// `#{x_j ≤ x} / n`.
    pub fn cdf(&self, x: f64) -> f64 {
        if self.points.is_empty() {
            return 0.0;
        }
        self.points.partition_point(|&p| p <= x) as f64 / self.points.len() as f64
    }

    pub fn moment(&self, k: i32) -> f64 {
        self.points.iter().map(|x| x.powi(k)).sum::<f64>() / self.points.len() as f64
    }
}

/// A limit distribution of zeros.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitMeasure {
    UpsilonUnit,
    UpsilonAlpha(f64),
    NuProfile { profile: LimitProfile, t: f64 },
    NuL { t: f64 },
    NuM { t: f64 },
    Dirac0,
}

impl LimitMeasure {
    /// `υ_{[0,α]}`, or `δ_0` for `α = 0`.
    pub fn upsilon(alpha: f64) -> Result<Self> {
        if alpha == 0.0 {
            Ok(LimitMeasure::Dirac0)
        } else if alpha > 0.0 && alpha.is_finite() {
            Ok(LimitMeasure::UpsilonAlpha(alpha))
        } else {
            Err(Error::InvalidParameter("alpha must be finite and nonnegative"))
        }
    }

    /// `ν_t` for a profile whose level sets are intervals.
    pub fn nu_profile(profile: LimitProfile, t: f64) -> Result<Self> {
        positive_t(t)?;
        if !profile.alpha.has_interval_level_sets() {
            return Err(Error::NotAnInterval { x: f64::NAN });
        }
        if profile.alpha.vanishes_on(t) {
            return Ok(LimitMeasure::Dirac0);
        }
        Ok(LimitMeasure::NuProfile { profile, t })
    }

    pub fn nu_l(t: f64) -> Result<Self> {
        positive_t(t)?;
        Ok(LimitMeasure::NuL { t })
    }

    pub fn nu_m(t: f64) -> Result<Self> {
        positive_t(t)?;
        Ok(LimitMeasure::NuM { t })
    }

    pub fn name(&self) -> &'static str {
        match self {
            LimitMeasure::UpsilonUnit => "upsilon_unit",
            LimitMeasure::UpsilonAlpha(_) => "upsilon_alpha",
            LimitMeasure::NuProfile { .. } => "nu_profile",
            LimitMeasure::NuL { .. } => "nu_L",
            LimitMeasure::NuM { .. } => "nu_M",
            LimitMeasure::Dirac0 => "dirac0",
        }
    }

    /// The shape and the right end `S` of the support `(0, S)`, for the closed forms.
    fn scaled_shape(&self) -> Option<(Shape, f64)> {
        match *self {
            LimitMeasure::UpsilonUnit => Some((Shape::Upsilon, 1.0)),
            LimitMeasure::UpsilonAlpha(a) => Some((Shape::Upsilon, a)),
            LimitMeasure::NuL { t } => Some((Shape::G, 27.0 * t / 8.0)),
            LimitMeasure::NuM { t } => Some((Shape::H, 27.0 * t * t / 4.0)),
            _ => None,
        }
    }

    /// `[lo, hi]`, the closed support.
    pub fn support(&self) -> (f64, f64) {
        match self {
            LimitMeasure::Dirac0 => (0.0, 0.0),
            LimitMeasure::NuProfile { profile, t } => (0.0, profile.alpha.sup_on(*t)),
            m => (0.0, m.scaled_shape().map_or(0.0, |(_, s)| s)),
        }
    }

    /// Density with respect to Lebesgue measure; `δ_0` has none and reports `0` off the origin.
    pub fn density(&self, x: f64) -> Result<f64> {
        match self {
            LimitMeasure::Dirac0 => Ok(if x == 0.0 { f64::INFINITY } else { 0.0 }),
            LimitMeasure::NuProfile { profile, t } => nu_profile_density(profile, *t, x),
            m => {
                let (shape, s) = m.scaled_shape().expect("closed-form kind");
                if x < 0.0 || x > s {
                    return Ok(0.0);
                }
                Ok(shape.density(x / s, (s - x) / s) / s)
            }
        }
    }

    /// `μ((-∞, x])`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        let opts = QuadOptions { abs_tol: 1e-12, ..QuadOptions::default() };
        match self {
            LimitMeasure::Dirac0 => Ok(if x >= 0.0 { 1.0 } else { 0.0 }),
            LimitMeasure::NuProfile { profile, t } => nu_profile_cdf(profile, *t, x, opts),
            m => {
                let (shape, s) = m.scaled_shape().expect("closed-form kind");
                shape.cdf(x / s, (s - x) / s, opts)
            }
        }
    }

    /// `μ((-∞, x))`; differs from [`cdf`](Self::cdf) only at atoms.
    pub fn cdf_left(&self, x: f64) -> Result<f64> {
        match self {
            LimitMeasure::Dirac0 => Ok(if x > 0.0 { 1.0 } else { 0.0 }),
            m => m.cdf(x),
        }
    }

    /// Smallest `x` with `cdf(x) ≥ p`, by bisection.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter("quantile level must lie in [0, 1]"));
        }
        let (mut lo, mut hi) = self.support();
        if lo == hi {
            return Ok(lo);
        }
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(hi);
            }
            if self.cdf(mid)? >= p {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// `∫ dμ`, computed from the density rather than assumed.
    pub fn total_mass(&self) -> Result<f64> {
        let opts = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-13, ..QuadOptions::default() };
        match self {
            LimitMeasure::Dirac0 => Ok(1.0),
            LimitMeasure::NuProfile { profile, t } => {
                let (_, hi) = self.support();
                nu_profile_cdf(profile, *t, hi, opts)
            }
            m => {
                let (shape, _) = m.scaled_shape().expect("closed-form kind");
                shape.integrate_all(|_| 1.0, opts)
            }
        }
    }
}

/// `(1/t) [ |[0,t] \ [t_-, t_+]| + ∫_{[0,t] ∩ [t_-, t_+]} F_{υ_{[0,1]}}(x/α(s)) ds ]`.
fn nu_profile_cdf(profile: &LimitProfile, t: f64, x: f64, opts: QuadOptions) -> Result<f64> {
    if x < 0.0 {
        return Ok(0.0);
    }
    let below = match active_window(profile, t, x)? {
        None => t,
        Some((a, b)) => {
            let mut inner_err = None;
            let inner = integrate_both_ends(
                |s: f64| {
                    let al = profile.alpha(s);
                    if !(al > x) {
                        return 1.0;
                    }
                    match Shape::Upsilon.cdf(x / al, (al - x) / al, opts) {
                        Ok(v) => v,
                        Err(e) => {
                            inner_err.get_or_insert(e);
                            0.0
                        }
                    }
                },
                a,
                b,
                opts,
            )?;
            if let Some(e) = inner_err {
                return Err(e);
            }
            (t - (b - a)) + inner
        }
    };
    Ok((below / t).clamp(0.0, 1.0))
}

/// `D_n = sup_x |F_emp(x) - F(x)|` and where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsReport {
    pub n: usize,
    pub statistic: f64,
    pub location: f64,
}

/// Exact KS distance: the supremum is attained at a jump of `F_emp`, where
/// both one-sided limits are compared. Ties are grouped into one jump.
pub fn ks_statistic(emp: &EmpiricalMeasure, limit: &LimitMeasure) -> Result<KsReport> {
    let pts = emp.points();
    if pts.is_empty() {
        return Err(Error::InvalidParameter("empirical measure is empty"));
    }
    let n = pts.len();
    let mut best = KsReport { n, statistic: 0.0, location: pts[0] };
    let mut i = 0;
    while i < n {
        let x = pts[i];
        let mut j = i;
        while j < n && pts[j] == x {
            j += 1;
        }
        let before = i as f64 / n as f64;
        let after = j as f64 / n as f64;
        let d = (limit.cdf_left(x)? - before).abs().max((limit.cdf(x)? - after).abs());
        if d > best.statistic {
            best.statistic = d;
            best.location = x;
        }
        i = j;
    }
    Ok(best)
}

/// `m_k = ∫ x^k dυ_{[0,1]}` from the expansion `-φ'/φ(z) = Σ m_k z^{-k-1}`.
///
/// With `φ = z^{-1} A(1/z)`, `m_k = k l_k` for `log A(u) = Σ l_k u^k`, and
/// `k l_k` follows from `u A' = (u L') A`.
pub fn moments_upsilon(k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    // A_j = a_{j+1}
    let a = phi_laurent_coeffs(k + 1);
    let mut m = Vec::with_capacity(k + 1);
    m.push(1.0);
    for j in 1..=k {
        let mut v = j as f64 * a[j];
        for i in 1..j {
            v -= m[i] * a[j - i];
        }
        m.push(v);
    }
    m[k]
}

/// `∫ x^k dυ_{[0,1]}` by quadrature of the density.
pub fn moment_by_quadrature(k: i32) -> Result<f64> {
    let opts = QuadOptions { abs_tol: 1e-14, rel_tol: 1e-14, ..QuadOptions::default() };
    Shape::Upsilon.integrate_all(|y| y.powi(k), opts)
}

/// `∫ dμ(x) / (z - x)`.
pub fn stieltjes_transform(measure: &LimitMeasure, z: Complex64) -> Result<Complex64> {
    let opts = QuadOptions { abs_tol: 1e-12, rel_tol: 1e-12, max_intervals: 4000 };
    match measure {
        LimitMeasure::Dirac0 => Ok(z.inv()),
        LimitMeasure::NuProfile { profile, t } => {
            let (t, profile) = (*t, profile);
            let mut inner_err = None;
            let mut component = |s: f64, re: bool| -> f64 {
                let al = profile.alpha(s);
                let v = if al == 0.0 {
                    Ok(z.inv())
                } else {
                    Shape::Upsilon
                        .integrate_all(|y| (z - al * y).inv(), opts)
                };
                match v {
                    Ok(c) => if re { c.re } else { c.im },
                    Err(e) => {
                        inner_err.get_or_insert(e);
                        0.0
                    }
                }
            };
            let re = integrate(|s: f64| component(s, true), 0.0, t, opts)?.value;
            let im = integrate(|s: f64| component(s, false), 0.0, t, opts)?.value;
            if let Some(e) = inner_err {
                return Err(e);
            }
            Ok(Complex64::new(re, im) / t)
        }
        m => {
            let (shape, s) = m.scaled_shape().expect("closed-form kind");
            shape.integrate_all(|y| (z - s * y).inv(), opts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::AlphaProfile;

    fn binom(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn density_at_half() {
        let w = 0.5f64.sqrt();
        let expected = SQRT3 / (4.0 * PI) * ((1.0 + w).cbrt() + (1.0 - w).cbrt()) / (0.5f64.powf(2.0 / 3.0) * w);
        assert!((upsilon_unit_density(0.5) - expected).abs() < 1e-15);
        assert_eq!(upsilon_unit_density(-0.3), 0.0);
        assert_eq!(upsilon_unit_density(1.3), 0.0);
        assert!(upsilon_unit_density(0.0).is_infinite());
        assert!(upsilon_unit_density(1.0).is_infinite());
    }

    #[test]
    fn origin_exponent() {
        // x^{2/3} ρ(x) → √3 · 2^{1/3} / (4π)
        let limit = SQRT3 * 2f64.cbrt() / (4.0 * PI);
        let x = 1e-24;
        assert!((upsilon_unit_density(x) * x.powf(2.0 / 3.0) - limit).abs() < 1e-7);
    }

    #[test]
    fn scaling_rule() {
        assert!((upsilon_alpha_density(2.0, 1.0).unwrap() - 0.5 * upsilon_unit_density(0.5)).abs() < 1e-15);
        assert_eq!(upsilon_alpha_density(1.0, 0.3).unwrap(), upsilon_unit_density(0.3));
        assert!(upsilon_alpha_density(0.0, 0.3).is_err());
        assert!(upsilon_alpha_density(-1.0, 0.3).is_err());
    }

    #[test]
    fn soft_edges() {
        assert_eq!(g(1.0), 0.0);
        assert_eq!(h(1.0), 0.0);
        assert!(g(0.999_999) > 0.0 && g(0.999_999) < 1e-2);
        assert!(h(0.5) > 0.0);
        assert_eq!(nu_l_density(1.0, 27.0 / 8.0 + 1e-9).unwrap(), 0.0);
        assert_eq!(nu_m_density(1.0, -1e-9).unwrap(), 0.0);
    }

    #[test]
    fn normalisation() {
        for m in [
            LimitMeasure::UpsilonUnit,
            LimitMeasure::UpsilonAlpha(3.0),
            LimitMeasure::NuL { t: 1.0 },
            LimitMeasure::NuM { t: 1.0 },
            LimitMeasure::NuL { t: 8.0 / 27.0 },
        ] {
            let mass = m.total_mass().unwrap();
            assert!((mass - 1.0).abs() < 1e-10, "{m:?}: {mass}");
            let (_, hi) = m.support();
            assert_eq!(m.cdf(hi).unwrap(), 1.0);
            assert_eq!(m.cdf(0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn cdf_is_monotone_and_continuous_at_half() {
        let m = LimitMeasure::UpsilonUnit;
        let below = m.cdf(0.5 - 1e-12).unwrap();
        let above = m.cdf(0.5 + 1e-12).unwrap();
        assert!((above - below).abs() < 1e-9);
        let mut last = 0.0;
        for i in 1..100 {
            let c = m.cdf(i as f64 / 100.0).unwrap();
            assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn square_root_edge() {
        // 1 - F(1 - ε) ≈ (2c₁) √ε with c₁ = √3 · 2^{1/3}/(4π) · ... ; check the ratio at two scales
        let m = LimitMeasure::UpsilonUnit;
        let tail = |e: f64| 1.0 - m.cdf(1.0 - e).unwrap();
        let ratio = tail(1e-6) / tail(1e-8);
        assert!((ratio - 10.0).abs() < 1e-3, "{ratio}");
    }

    #[test]
    fn moments_three_ways() {
        assert_eq!(moments_upsilon(0), 1.0);
        assert!((moments_upsilon(1) - 4.0 / 9.0).abs() < 1e-15);
        assert!((moments_upsilon(2) - 80.0 / 243.0).abs() < 1e-15);
        for k in 1..=6u64 {
            let closed = binom(3 * k, k) * (4.0f64 / 27.0).powi(k as i32);
            assert!((moments_upsilon(k as usize) - closed).abs() < 1e-14, "k = {k}");
            let quad = moment_by_quadrature(k as i32).unwrap();
            assert!((quad - closed).abs() < 1e-10, "k = {k}: {quad} vs {closed}");
        }
    }

    #[test]
    fn profile_reduces_to_constant() {
        let p = LimitProfile::new(AlphaProfile::Constant(2.0)).unwrap();
        for x in [0.1, 0.7, 1.5, 1.99] {
            let a = nu_profile_density(&p, 0.8, x).unwrap();
            let b = upsilon_alpha_density(2.0, x).unwrap();
            assert!((a - b).abs() < 1e-9 * b, "{x}");
        }
    }

    #[test]
    fn profile_matches_closed_forms() {
        let lag = LimitProfile::new(AlphaProfile::Linear { slope: 27.0 / 8.0 }).unwrap();
        let mac = LimitProfile::new(AlphaProfile::Quadratic { coef: 27.0 / 4.0 }).unwrap();
        for x in [0.05, 0.5, 1.7, 3.0, 3.3] {
            let a = nu_profile_density(&lag, 1.0, x).unwrap();
            let b = nu_l_density(1.0, x).unwrap();
            assert!((a - b).abs() < 1e-8, "L {x}: {a} vs {b}");
        }
        for x in [0.05, 0.5, 3.0, 6.0, 6.7] {
            let a = nu_profile_density(&mac, 1.0, x).unwrap();
            let b = nu_m_density(1.0, x).unwrap();
            assert!((a - b).abs() < 1e-8, "M {x}: {a} vs {b}");
        }
    }

    #[test]
    fn profile_cdf_matches_closed_form_cdf() {
        let lag = LimitProfile::new(AlphaProfile::Linear { slope: 27.0 / 8.0 }).unwrap();
        let m = LimitMeasure::nu_profile(lag, 1.0).unwrap();
        let l = LimitMeasure::NuL { t: 1.0 };
        for x in [0.2, 1.0, 2.5] {
            assert!((m.cdf(x).unwrap() - l.cdf(x).unwrap()).abs() < 1e-8);
        }
        assert!((m.total_mass().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn vanishing_profile_is_dirac() {
        let p = LimitProfile::new(AlphaProfile::Constant(0.0)).unwrap();
        assert_eq!(LimitMeasure::nu_profile(p, 1.0).unwrap(), LimitMeasure::Dirac0);
        assert_eq!(LimitMeasure::upsilon(0.0).unwrap(), LimitMeasure::Dirac0);
    }

    #[test]
    fn ks_quantile_construction() {
        let m = LimitMeasure::UpsilonUnit;
        let n = 40;
        let pts = (0..n)
            .map(|j| m.quantile((j as f64 + 0.5) / n as f64).unwrap())
            .collect();
        let r = ks_statistic(&EmpiricalMeasure::new(pts), &m).unwrap();
        assert!((r.statistic - 0.5 / n as f64).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn ks_single_atom() {
        let m = LimitMeasure::UpsilonUnit;
        let c = m.cdf(0.5).unwrap();
        let r = ks_statistic(&EmpiricalMeasure::new(alloc::vec![0.5]), &m).unwrap();
        assert!((r.statistic - c.max(1.0 - c)).abs() < 1e-15);
        assert_eq!(r.location, 0.5);
    }

    #[test]
    fn ks_against_dirac_with_ties() {
        let emp = EmpiricalMeasure::new(alloc::vec![0.0, 0.0, 0.0, 1.0]);
        let r = ks_statistic(&emp, &LimitMeasure::Dirac0).unwrap();
        assert!((r.statistic - 0.25).abs() < 1e-15);
        let exact = EmpiricalMeasure::new(alloc::vec![0.0; 5]);
        assert_eq!(ks_statistic(&exact, &LimitMeasure::Dirac0).unwrap().statistic, 0.0);
        assert!(ks_statistic(&EmpiricalMeasure::new(Vec::new()), &LimitMeasure::Dirac0).is_err());
    }

    #[test]
    fn stieltjes_tail_and_reflection() {
        let m = LimitMeasure::UpsilonUnit;
        let z = Complex64::new(1e6, 0.0);
        let s = stieltjes_transform(&m, z).unwrap();
        assert!((s * z - 1.0).norm() < 1e-6);
        let w = Complex64::new(0.3, 0.4);
        let a = stieltjes_transform(&m, w).unwrap();
        let b = stieltjes_transform(&m, w.conj()).unwrap();
        assert!((a - b.conj()).norm() < 1e-13);
        // expansion at infinity: 1/z + m₁/z² + ...
        let big = Complex64::new(50.0, 0.0);
        let series: Complex64 = (0..12).map(|k| moments_upsilon(k) / big.powi(k as i32 + 1)).sum();
        assert!((stieltjes_transform(&m, big).unwrap() - series).norm() < 1e-14);
    }

    #[test]
    fn empirical_cdf() {
        let e = EmpiricalMeasure::new(alloc::vec![0.3, 0.1, 0.2, 0.2]);
        assert_eq!(e.points(), &[0.1, 0.2, 0.2, 0.3]);
        assert_eq!(e.cdf(0.2), 0.75);
        assert_eq!(e.cdf(0.0), 0.0);
        assert_eq!(e.cdf(1.0), 1.0);
        assert!((e.moment(1) - 0.2).abs() < 1e-15);
    }
}
