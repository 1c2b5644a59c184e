//! Zeros of `P_{n,N}` by an interlacing cascade.
//!
//! Level `k + 1` is bracketed by the zeros of level `k` plus the endpoints
//! `∓R`, where `R = sup_k (1 + |b_k| + |c_k| + |d_k|)` bounds the spectrum of
//! the Hessenberg matrix `L_{n,N}`. If the zeros interlace, every bracket holds
//! exactly one sign change of `P_{k+1}`; each is then resolved by bisection
//! with Newton steps accepted only while they stay inside the shrinking bracket.
//! A bracket without a sign change is reported as an
//! [`Error::InterlacingViolation`] instead of being guessed around.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::coeffs::RecurrenceCoefficients;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::measures::EmpiricalMeasure;
use crate::polycore::{eval_p_dp_raw, eval_p_raw};

const MAX_ITER: usize = 400;

/// Which hypotheses of the zero-distribution theorem a level satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationFlags {
    pub real_simple: bool,
    pub interlaced_with_prev: bool,
}

/// The sorted zeros of one `P_{n,N}`, in rescaled coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub n: usize,
    pub big_n: usize,
    pub zeros: Vec<f64>,
    pub bound: f64,
    pub scale_exponent: f64,
    pub flags: ValidationFlags,
}

impl ZeroSet {
    /// Zeros in the original coordinates, `x · N^p`.
    pub fn raw_zeros(&self) -> Vec<f64> {
        let s = (self.big_n as f64).powf(self.scale_exponent);
        self.zeros.iter().map(|x| x * s).collect()
    }
}

/// `R = sup_{k ≤ n} (1 + |b_k| + |c_k| + |d_k|)`.
pub fn spectral_bound<R>(rec: &R, n: usize, big_n: usize) -> f64
where
    R: RecurrenceCoefficients + ?Sized,
{
    (0..=n)
        .map(|k| 1.0 + rec.b(k, big_n).abs() + rec.c(k, big_n).abs() + rec.d(k, big_n).abs())
        .fold(1.0, f64::max)
}

/// The lower Hessenberg matrix with `P_{n,N}(z) = det(z I - L_{n,N})`.
pub fn recurrence_matrix<R>(rec: &R, n: usize, big_n: usize) -> Matrix
where
    R: RecurrenceCoefficients + ?Sized,
{
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = rec.b(i, big_n);
        if i + 1 < n {
            m[(i, i + 1)] = 1.0;
        }
        if i >= 1 {
            m[(i, i - 1)] = rec.c(i, big_n);
        }
        if i >= 2 {
            m[(i, i - 2)] = rec.d(i, big_n);
        }
    }
    m
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// The unique zero of `P_n` in `(lo, hi)`, given `sign P_n(lo) = sign_lo ≠ 0`
/// and an opposite sign at `hi`.
fn solve_bracket<R>(rec: &R, n: usize, big_n: usize, lo: f64, hi: f64, sign_lo: i8) -> Result<f64>
where
    R: RecurrenceCoefficients + ?Sized,
{
    let (mut lo, mut hi) = (lo, hi);
    let mut x = 0.5 * (lo + hi);
    let mut last_step = hi - lo;
    for _ in 0..MAX_ITER {
        let (p, dp, _) = eval_p_dp_raw(rec, n, big_n, x);
        if p == 0.0 {
            return Ok(x);
        }
        if sign(p) == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        let width = hi - lo;
        let newton = x - p / dp;
        let next = if dp != 0.0 && newton > lo && newton < hi && (newton - x).abs() < 0.5 * last_step {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        let tol = 2.0 * f64::EPSILON * next.abs().max(f64::MIN_POSITIVE);
        if step <= tol || width <= tol || next <= lo || next >= hi {
            return Ok(next.clamp(lo, hi));
        }
        last_step = step;
        x = next;
    }
    Err(Error::ToleranceFailure {
        what: "bracketed root iteration",
        achieved: hi - lo,
        required: 2.0 * f64::EPSILON * x.abs(),
    })
}

/// One cascade level: zeros of `P_level` from the zeros of `P_{level-1}`.
fn next_level<R>(rec: &R, level: usize, big_n: usize, bound: f64, prev: &[f64]) -> Result<Vec<f64>>
where
    R: RecurrenceCoefficients + ?Sized,
{
    let mut points = Vec::with_capacity(prev.len() + 2);
    points.push(-bound);
    points.extend_from_slice(prev);
    points.push(bound);
    let signs: Vec<i8> = points.iter().map(|&x| sign(eval_p_raw(rec, level, big_n, x).0)).collect();
    let mut out = Vec::with_capacity(level);
    for j in 0..points.len() - 1 {
        let (sa, sb) = (signs[j], signs[j + 1]);
        if sa == 0 || sb == 0 || sa == sb {
            return Err(Error::InterlacingViolation {
                level,
                bracket: j,
                lo: points[j],
                hi: points[j + 1],
            });
        }
        out.push(solve_bracket(rec, level, big_n, points[j], points[j + 1], sa)?);
    }
    if out.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InterlacingViolation { level, bracket: 0, lo: -bound, hi: bound });
    }
    Ok(out)
}

/// Every level `P_1 … P_n` of one cascade run.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCascade {
    pub big_n: usize,
    pub bound: f64,
    pub scale_exponent: f64,
    /// `levels[k - 1]` holds the zeros of `P_k`.
    pub levels: Vec<Vec<f64>>,
    /// All coefficients vanish, so `P_k = x^k` and every zero sits at 0.
    pub degenerate: bool,
}

impl ZeroCascade {
    pub fn run<R>(rec: &R, n: usize, big_n: usize) -> Result<Self>
    where
        R: RecurrenceCoefficients + ?Sized,
    {
        let mut out = Self::start(rec, n, big_n)?;
        if out.degenerate {
            return Ok(out);
        }
        for level in 1..=n {
            let prev = out.levels.last().map(Vec::as_slice).unwrap_or(&[]);
            let next = next_level(rec, level, big_n, out.bound, prev)?;
            out.levels.push(next);
        }
        Ok(out)
    }

    fn start<R>(rec: &R, n: usize, big_n: usize) -> Result<Self>
    where
        R: RecurrenceCoefficients + ?Sized,
    {
        if n == 0 {
            return Err(Error::InvalidParameter("zero cascade needs n >= 1"));
        }
        if big_n == 0 {
            return Err(Error::InvalidParameter("N must be at least 1"));
        }
        if let Some(h) = rec.horizon() {
            if n as f64 > h * big_n as f64 {
                return Err(Error::InvalidParameter("n/N exceeds the profile horizon"));
            }
        }
        let degenerate = (0..n).all(|k| rec.b(k, big_n) == 0.0 && rec.c(k, big_n) == 0.0 && rec.d(k, big_n) == 0.0);
        let levels = if degenerate { (1..=n).map(|k| vec![0.0; k]).collect() } else { Vec::with_capacity(n) };
        Ok(Self {
            big_n,
            bound: spectral_bound(rec, n, big_n),
            scale_exponent: rec.scale_exponent(),
            levels,
            degenerate,
        })
    }

    pub fn max_level(&self) -> usize {
        self.levels.len()
    }

    /// Zeros of `P_k` for `1 ≤ k ≤ max_level`.
    pub fn level(&self, k: usize) -> ZeroSet {
        let simple = !self.degenerate;
        ZeroSet {
            n: k,
            big_n: self.big_n,
            zeros: self.levels[k - 1].clone(),
            bound: self.bound,
            scale_exponent: self.scale_exponent,
            flags: ValidationFlags {
                real_simple: simple,
                interlaced_with_prev: simple,
            },
        }
    }

    pub fn last(&self) -> ZeroSet {
        self.level(self.max_level())
    }
}

/// Zeros of `P_{n,N}` (all lower levels are computed on the way and dropped).
pub fn zero_cascade<R>(rec: &R, n: usize, big_n: usize) -> Result<ZeroSet>
where
    R: RecurrenceCoefficients + ?Sized,
{
    let mut cascade = ZeroCascade::start(rec, n, big_n)?;
    if cascade.degenerate {
        return Ok(cascade.last());
    }
    let mut prev: Vec<f64> = Vec::new();
    for level in 1..=n {
        prev = next_level(rec, level, big_n, cascade.bound, &prev)?;
    }
    cascade.levels = vec![prev];
    let mut zs = cascade.level(1);
    zs.n = n;
    Ok(zs)
}

/// Zeros of `P_{n,N}` by sign changes on `points` equally spaced nodes of
/// `[-R, R]`, each refined by plain bisection. Independent of the cascade;
/// misses zeros closer together than the grid spacing.
pub fn grid_isolation_zeros<R>(rec: &R, n: usize, big_n: usize, points: usize) -> Vec<f64>
where
    R: RecurrenceCoefficients + ?Sized,
{
    let bound = spectral_bound(rec, n, big_n);
    let sgn = |x: f64| sign(eval_p_raw(rec, n, big_n, x).0);
    let h = 2.0 * bound / points as f64;
    let mut out = Vec::new();
    let mut x0 = -bound;
    let mut s0 = sgn(x0);
    for i in 1..=points {
        let x1 = if i == points { bound } else { -bound + h * i as f64 };
        let s1 = sgn(x1);
        if s1 == 0 {
            out.push(x1);
        } else if s0 != 0 && s1 != s0 {
            let (mut lo, mut hi) = (x0, x1);
            loop {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if sgn(mid) == s0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        x0 = x1;
        s0 = s1;
    }
    out
}

/// Outcome of checking real/simple/interlacing zeros on levels `1..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub n_max: usize,
    pub big_n: usize,
    pub bound: f64,
    /// Highest level whose zeros were found and checked.
    pub levels_passed: usize,
    pub real_simple: bool,
    pub interlacing: bool,
    /// `min` over levels and `j` of the gaps between interlacing zeros.
    pub worst_interlacing_margin: f64,
    /// Smallest gap between neighbouring zeros of one level.
    pub min_zero_gap: f64,
    pub degenerate: bool,
    pub failure: Option<Error>,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.real_simple && self.interlacing && self.failure.is_none() && self.levels_passed == self.n_max
    }
}

/// Runs the cascade up to `n_max` and records, rather than raises, failures.
pub fn validate_hypotheses<R>(rec: &R, n_max: usize, big_n: usize) -> HypothesisReport
where
    R: RecurrenceCoefficients + ?Sized,
{
    let mut report = HypothesisReport {
        n_max,
        big_n,
        bound: spectral_bound(rec, n_max, big_n),
        levels_passed: 0,
        real_simple: true,
        interlacing: true,
        worst_interlacing_margin: f64::INFINITY,
        min_zero_gap: f64::INFINITY,
        degenerate: false,
        failure: None,
    };
    let cascade = match ZeroCascade::start(rec, n_max, big_n) {
        Ok(c) => c,
        Err(e) => {
            report.real_simple = false;
            report.interlacing = false;
            report.failure = Some(e);
            return report;
        }
    };
    if cascade.degenerate {
        report.degenerate = true;
        report.real_simple = n_max <= 1;
        report.interlacing = n_max <= 1;
        report.levels_passed = n_max;
        report.min_zero_gap = if n_max <= 1 { f64::INFINITY } else { 0.0 };
        report.worst_interlacing_margin = if n_max <= 1 { f64::INFINITY } else { 0.0 };
        return report;
    }
    let mut prev: Vec<f64> = Vec::new();
    for level in 1..=n_max {
        match next_level(rec, level, big_n, cascade.bound, &prev) {
            Ok(zs) => {
                for w in zs.windows(2) {
                    report.min_zero_gap = report.min_zero_gap.min(w[1] - w[0]);
                }
                for (j, &y) in prev.iter().enumerate() {
                    let m = (y - zs[j]).min(zs[j + 1] - y);
                    report.worst_interlacing_margin = report.worst_interlacing_margin.min(m);
                }
                report.levels_passed = level;
                prev = zs;
            }
            Err(e) => {
                if matches!(e, Error::InterlacingViolation { .. }) {
                    report.interlacing = false;
                }
                report.failure = Some(e);
                break;
            }
        }
    }
    if report.min_zero_gap <= 0.0 {
        report.real_simple = false;
    }
    if report.worst_interlacing_margin <= 0.0 {
        report.interlacing = false;
    }
    report
}

/// `ν(P_{n,N}) = (1/n) Σ δ_{x_j}` on the rescaled zeros (`x/N^p` in original coordinates).
pub fn empirical_measure(zs: &ZeroSet) -> EmpiricalMeasure {
    EmpiricalMeasure::new(zs.zeros.clone())
}
