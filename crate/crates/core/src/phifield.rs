//! The branch function `φ` and the numeric checks built on it.
//!
//! `φ` is evaluated two independent ways:
//!
//! - [`phi`]: the explicit radical formula
//!   `φ(z) = 27/4 · ((3ω/2) z^{1/3} {ω(-1+√(1-z))^{1/3} + (-1-√(1-z))^{1/3}} - 1)`,
//!   `ω = e^{2πi/3}`, with the square root cut along `[0, ∞)` (argument in
//!   `[0, 2π)`) and principal cube roots (argument in `(-π, π]`);
//! - [`phi_cubic_oracle`]: Newton root tracking of `zw = (1 + 4w/27)³` along a
//!   path from `z = 10⁴`, where the wanted root is `w ≈ 1/z`.
//!
//! Both must agree everywhere off `[0, 1]`; branch-rule slips show up as
//! disagreement on whole regions.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::coeffs::RecurrenceCoefficients;
use crate::error::{Error, Result};
use crate::measures::{stieltjes_transform, LimitMeasure};
use crate::polycore::{eval_ratio_seq, log_derivatives};
use crate::zeros::ZeroCascade;

/// Distance below which `z` counts as lying on the cut `[0, 1]`.
pub const CUT_TOLERANCE: f64 = 1e-14;

const K: f64 = 4.0 / 27.0;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// Distance from `z` to the segment `[0, 1]`.
pub fn dist_to_cut(z: Complex64) -> f64 {
    if z.re < 0.0 {
        z.norm()
    } else if z.re > 1.0 {
        (z - 1.0).norm()
    } else {
        z.im.abs()
    }
}

/// `√w` with `arg w ∈ [0, 2π)`, so the result lies in the closed upper half plane.
pub fn branch_sqrt(w: Complex64) -> Complex64 {
    let mut theta = w.im.atan2(w.re);
    if theta < 0.0 {
        theta += 2.0 * PI;
    }
    Complex64::from_polar(w.norm().sqrt(), 0.5 * theta)
}

/// `w^{1/3}` with `arg w ∈ (-π, π]`.
pub fn branch_cbrt(w: Complex64) -> Complex64 {
    let mut theta = w.im.atan2(w.re);
    if theta <= -PI {
        theta = PI;
    }
    Complex64::from_polar(w.norm().cbrt(), theta / 3.0)
}

/// `X = 1 + 4φ/27`, from the radical formula.
///
/// With `a = (u₊)^{1/3}`, `b = (u₋)^{1/3}` and `a³ + b³ = u₊ + u₋ = -2`,
/// `ωa + b = -2 / (ω²a² + b² - ωab)`; this form has no cancellation as `|z| → ∞`.
///
/// On the negative axis itself the two branch rules pick sides inconsistently
/// (`√(1-z)` its value from below, `z^{1/3}` from above), so there the common
/// limit `X = 3|z|^{1/3} / (a² + ab + b²)` with real `a = (√(1-z) - 1)^{1/3}`,
/// `b = (√(1-z) + 1)^{1/3}` is used.
fn phi_shifted(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re < 0.0 {
        let s = (1.0 - z.re).sqrt();
        let a = (s - 1.0).cbrt();
        let b = (s + 1.0).cbrt();
        return c64(3.0 * (-z.re).cbrt() / (a * a + a * b + b * b), 0.0);
    }
    let w = omega();
    let s = branch_sqrt(c64(1.0, 0.0) - z);
    let a = branch_cbrt(c64(-1.0, 0.0) + s);
    let b = branch_cbrt(c64(-1.0, 0.0) - s);
    let zc = branch_cbrt(z);
    let denom = w * w * a * a + b * b - w * a * b;
    -3.0 * w * zc / denom
}

/// `φ(z)` together with `φ'(z)/φ(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiEval {
    pub z: Complex64,
    pub phi: Complex64,
    pub phi_log_deriv: Complex64,
}

/// `φ` by the radical formula, for `z` off `[0, 1]`.
pub fn phi(z: Complex64) -> Result<PhiEval> {
    if !(dist_to_cut(z) > CUT_TOLERANCE) {
        return Err(Error::OnCut { re: z.re, im: z.im });
    }
    let x = phi_shifted(z);
    Ok(PhiEval {
        z,
        phi: 6.75 * (x - 1.0),
        // (4φ/27 + 1) / (z (8φ/27 - 1)) with 4φ/27 + 1 = X
        phi_log_deriv: x / (z * (2.0 * x - 3.0)),
    })
}

/// `φ'(z)/φ(z)`.
pub fn phi_log_derivative(z: Complex64) -> Result<Complex64> {
    phi(z).map(|p| p.phi_log_deriv)
}

/// `1/α · φ(z/α)` for `α > 0`, `1/z` for `α = 0`: the limit of `P_n/P_{n+1}`.
pub fn scaled_phi(alpha: f64, z: Complex64) -> Result<Complex64> {
    if alpha == 0.0 {
        return Ok(z.inv());
    }
    Ok(phi(z / alpha)?.phi / alpha)
}

/// `1/α · (φ'/φ)(z/α)` for `α > 0`, `-1/z` for `α = 0`.
pub fn scaled_phi_log_derivative(alpha: f64, z: Complex64) -> Result<Complex64> {
    if alpha == 0.0 {
        return Ok(-z.inv());
    }
    Ok(phi_log_derivative(z / alpha)? / alpha)
}

// (4/27)³ w³ + 3(4/27)² w² + (3·4/27 - z) w + 1
fn cubic(w: Complex64, z: Complex64) -> (Complex64, Complex64) {
    let a3 = K * K * K;
    let a2 = 3.0 * K * K;
    let a1 = 3.0 * K - z;
    let p = ((w * a3 + a2) * w + a1) * w + 1.0;
    let dp = (w * (3.0 * a3) + 2.0 * a2) * w + a1;
    (p, dp)
}

/// Distance from root `w` of the cubic at `z` to the other two roots.
fn root_spacing(w: Complex64, z: Complex64) -> f64 {
    let a3 = K * K * K;
    let q1 = 3.0 * K * K + w * a3;
    let q0 = (3.0 * K - z) + w * q1;
    // a3 v² + q1 v + q0
    let disc = (q1 * q1 - 4.0 * a3 * q0).sqrt();
    let r1 = (-q1 + disc) / (2.0 * a3);
    let r2 = (-q1 - disc) / (2.0 * a3);
    (w - r1).norm().min((w - r2).norm())
}

fn newton_polish(mut w: Complex64, z: Complex64, iters: usize) -> Option<Complex64> {
    for _ in 0..iters {
        let (p, dp) = cubic(w, z);
        if dp.norm() == 0.0 {
            return None;
        }
        let step = p / dp;
        w -= step;
        if step.norm() <= 4.0 * f64::EPSILON * w.norm() {
            return Some(w);
        }
    }
    let (p, _) = cubic(w, z);
    (p.norm() <= 1e-12).then_some(w)
}

/// Anchor of the root-tracking path.
pub const HOMOTOPY_ANCHOR: f64 = 1e4;

/// `φ(z)` as the root of `zw = (1 + 4w/27)³` continued from `w ≈ 1/z` at
/// `z = 10⁴` along `10⁴ → z + iσ(2 + |Re z| + |Im z|) → z` (`σ = sign Im z`),
/// a path that keeps clear of `[0, 1]` until its last, vertical leg.
/// Each accepted step moves the tracked root by at most a tenth of its
/// distance to the other two roots.
pub fn phi_cubic_oracle(z: Complex64) -> Result<Complex64> {
    if !(dist_to_cut(z) > CUT_TOLERANCE) {
        return Err(Error::OnCut { re: z.re, im: z.im });
    }
    let ambiguous = || Error::Ambiguity { re: z.re, im: z.im };
    let anchor = c64(HOMOTOPY_ANCHOR, 0.0);
    let mut w = newton_polish(anchor.inv(), anchor, 50).ok_or_else(ambiguous)?;
    let sigma = if z.im < 0.0 { -1.0 } else { 1.0 };
    let waypoint = c64(z.re, z.im + sigma * (2.0 + z.re.abs() + z.im.abs()));
    for (from, to) in [(anchor, waypoint), (waypoint, z)] {
        let mut tau = 0.0;
        let mut h: f64 = 0.05;
        let mut here = from;
        while tau < 1.0 {
            let step = h.min(1.0 - tau);
            let next_z = from + (to - from) * (tau + step);
            let spacing = root_spacing(w, here);
            // predictor along dw/dz = w / p'(w)
            let (_, dp) = cubic(w, here);
            let guess = w + (next_z - here) * w / dp;
            match newton_polish(guess, next_z, 30) {
                Some(cand) if (cand - w).norm() <= 0.1 * spacing => {
                    w = cand;
                    here = next_z;
                    tau += step;
                    h = (2.0 * step).min(0.25);
                }
                _ => {
                    h = 0.5 * step;
                    if h < 1e-13 {
                        return Err(ambiguous());
                    }
                }
            }
        }
    }
    if root_spacing(w, z) <= 1e-9 * w.norm().max(1.0) {
        return Err(ambiguous());
    }
    Ok(w)
}

/// Laurent coefficients `a_1 … a_m` of `φ(z) = Σ a_k z^{-k}` at infinity.
///
/// Lagrange inversion of `w = z^{-1} (1 + 4w/27)³` gives
/// `a_k = (1/k) · C(3k, k-1) · (4/27)^{k-1}`.
pub fn phi_laurent_coeffs(m: usize) -> Vec<f64> {
    (1..=m)
        .map(|k| {
            let mut binom = 1.0;
            // C(3k, k-1)
            for i in 0..k - 1 {
                binom *= (3 * k - i) as f64 / (i + 1) as f64;
            }
            binom * K.powi(k as i32 - 1) / k as f64
        })
        .collect()
}

/// The `k`-th coefficient of `Σ a_j z^{-j}` by the trapezoidal rule on `|z| = radius`.
pub fn laurent_coefficient_by_contour<F>(mut f: F, k: i32, radius: f64, points: usize) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let mut acc = c64(0.0, 0.0);
    for j in 0..points {
        let z = Complex64::from_polar(radius, 2.0 * PI * (j as f64 + 0.5) / points as f64);
        acc += f(z)? * z.powi(k);
    }
    Ok(acc / points as f64)
}

/// Closed-form jump `m(x) = (√3 i / (2x^{2/3})) (v₊ + v₋)/√(1-x)` of `φ'/φ`
/// across `(0, 1)`, `v± = (1 ± √(1-x))^{1/3}`.
pub fn jump_m(x: f64) -> Result<Complex64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidParameter("jump_m needs 0 < x < 1"));
    }
    let w = (1.0 - x).sqrt();
    let vp = (1.0 + w).cbrt();
    let vm = (x / (1.0 + w)).cbrt();
    Ok(c64(0.0, 3f64.sqrt() * (vp + vm) / (2.0 * x.powf(2.0 / 3.0) * w)))
}

/// One-sided difference `φ'/φ(x + iε) - φ'/φ(x - iε)` at three `ε`, combined
/// by Richardson extrapolation assuming a power series in `ε`.
pub fn jump_numeric(x: f64, eps: [f64; 3]) -> Result<Complex64> {
    let diff = |e: f64| -> Result<Complex64> {
        Ok(phi_log_derivative(c64(x, e))? - phi_log_derivative(c64(x, -e))?)
    };
    let d = [diff(eps[0])?, diff(eps[1])?, diff(eps[2])?];
    let r01 = eps[0] / eps[1];
    let r12 = eps[1] / eps[2];
    let first = [(d[1] * r01 - d[0]) / (r01 - 1.0), (d[2] * r12 - d[1]) / (r12 - 1.0)];
    let r02 = eps[0] / eps[2];
    let ratio2 = r02 * r12;
    Ok((first[1] * ratio2 - first[0]) / (ratio2 - 1.0))
}

/// Least-squares slope of `ys` against `xs`.
pub fn fitted_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Log–log slopes of `|φ'/φ|` along `iε`, `1 + iε` and far out along `iR`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub eps: Vec<f64>,
    pub near_zero: Vec<f64>,
    pub near_one: Vec<f64>,
    pub slope_at_zero: f64,
    pub slope_at_one: f64,
    pub slope_far: f64,
}

pub fn branch_point_growth_check() -> Result<GrowthReport> {
    let eps: Vec<f64> = (1..=6).map(|k| 10f64.powi(-k)).collect();
    let log_eps: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let near_zero = eps
        .iter()
        .map(|&e| phi_log_derivative(c64(0.0, e)).map(|v| v.norm()))
        .collect::<Result<Vec<_>>>()?;
    let near_one = eps
        .iter()
        .map(|&e| phi_log_derivative(c64(1.0, e)).map(|v| v.norm()))
        .collect::<Result<Vec<_>>>()?;
    let far_r: Vec<f64> = (2..=6).map(|k| 10f64.powi(k)).collect();
    let far = far_r
        .iter()
        .map(|&r| phi_log_derivative(c64(0.0, r)).map(|v| v.norm().ln()))
        .collect::<Result<Vec<_>>>()?;
    let ln = |v: &[f64]| v.iter().map(|x| x.ln()).collect::<Vec<_>>();
    Ok(GrowthReport {
        slope_at_zero: fitted_slope(&log_eps, &ln(&near_zero)),
        slope_at_one: fitted_slope(&log_eps, &ln(&near_one)),
        slope_far: fitted_slope(&ln(&far_r), &far),
        eps,
        near_zero,
        near_one,
    })
}

/// One row of a two-sided identity check at `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckRow {
    pub z: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub rows: Vec<CheckRow>,
}

impl IdentityReport {
    pub fn max_abs_err(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_err).fold(0.0, f64::max)
    }

    /// Largest `|lhs - rhs| / |lhs|`.
    pub fn max_rel_err(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.abs_err / r.lhs.norm())
            .fold(0.0, f64::max)
    }
}

/// `φ'/φ(z)` against `-∫ dυ_{[0,1]}(x)/(z - x)` computed by quadrature.
pub fn stieltjes_identity_check(grid: &[Complex64]) -> Result<IdentityReport> {
    let rows = grid
        .iter()
        .map(|&z| {
            let lhs = phi_log_derivative(z)?;
            let rhs = -stieltjes_transform(&LimitMeasure::UpsilonUnit, z)?;
            Ok(CheckRow { z, lhs, rhs, abs_err: (lhs - rhs).norm() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport { rows })
}

/// `zφ(z)` against `(1 + 4φ(z)/27)³` with `φ` from the radical formula.
pub fn algebraic_identity_check(grid: &[Complex64]) -> Result<IdentityReport> {
    let rows = grid
        .iter()
        .map(|&z| {
            let p = phi(z)?.phi;
            let lhs = z * p;
            let rhs = (1.0 + p * K).powi(3);
            Ok(CheckRow { z, lhs, rhs, abs_err: (lhs - rhs).norm() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport { rows })
}

/// Radical formula against cubic root tracking.
pub fn dual_oracle_check(grid: &[Complex64]) -> Result<IdentityReport> {
    let rows = grid
        .iter()
        .map(|&z| {
            let lhs = phi(z)?.phi;
            let rhs = phi_cubic_oracle(z)?;
            Ok(CheckRow { z, lhs, rhs, abs_err: (lhs - rhs).norm() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport { rows })
}

/// Closed-form jump against the Richardson-extrapolated one-sided difference.
pub fn jump_check(xs: &[f64], eps: [f64; 3]) -> Result<IdentityReport> {
    let rows = xs
        .iter()
        .map(|&x| {
            let lhs = jump_m(x)?;
            let rhs = jump_numeric(x, eps)?;
            Ok(CheckRow { z: c64(x, 0.0), lhs, rhs, abs_err: (lhs - rhs).norm() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport { rows })
}

/// Ratio asymptotics `P_n/P_{n+1}(z) → (1/α) φ(z/α)` at one `(z, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRow {
    pub z: Complex64,
    pub n: usize,
    pub ratio: Complex64,
    pub limit: Complex64,
    pub error: f64,
    /// `|(P'_n/P_n - P'_{n+1}/P_{n+1})(z) - (1/α)(φ'/φ)(z/α)|`.
    pub derivative_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub alpha: f64,
    pub big_n: usize,
    /// Hull `[m, M]` of the zeros up to the largest degree used.
    pub zero_hull: (f64, f64),
    pub rows: Vec<RatioRow>,
}

impl RatioReport {
    /// Errors at `z` in schedule order.
    pub fn errors_at(&self, z: Complex64) -> Vec<f64> {
        self.rows.iter().filter(|r| r.z == z).map(|r| r.error).collect()
    }

    pub fn strictly_decreasing_at(&self, z: Complex64) -> bool {
        self.errors_at(z).windows(2).all(|w| w[1] < w[0])
    }
}

/// Tabulates `e_n(z)` for every `z` in `grid` and `n` in `schedule`.
///
/// The zeros are computed up to `max(schedule) + 1` first: interlacing
/// failures propagate, and every `z` must keep `margin` away from their hull.
pub fn ratio_asymptotics_check<R>(
    rec: &R,
    alpha: f64,
    grid: &[Complex64],
    schedule: &[usize],
    big_n: usize,
    margin: f64,
) -> Result<RatioReport>
where
    R: RecurrenceCoefficients + ?Sized,
{
    let top = schedule.iter().copied().max().unwrap_or(0) + 1;
    let cascade = ZeroCascade::run(rec, top, big_n)?;
    let hull = cascade
        .levels
        .iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let mut rows = Vec::with_capacity(grid.len() * schedule.len());
    for &z in grid {
        let dist = if z.re < hull.0 {
            (z - hull.0).norm()
        } else if z.re > hull.1 {
            (z - hull.1).norm()
        } else {
            z.im.abs()
        };
        if dist < margin {
            return Err(Error::InvalidParameter("ratio check point too close to the zero hull"));
        }
        let limit = scaled_phi(alpha, z)?;
        let dlimit = scaled_phi_log_derivative(alpha, z)?;
        for &n in schedule {
            let ratio = eval_ratio_seq(rec, n, big_n, z)?.inverse();
            let s = log_derivatives(rec, n + 1, big_n, z)?;
            rows.push(RatioRow {
                z,
                n,
                ratio,
                limit,
                error: (ratio - limit).norm(),
                derivative_error: ((s[n] - s[n + 1]) - dlimit).norm(),
            });
        }
    }
    Ok(RatioReport { alpha, big_n, zero_hull: hull, rows })
}
