//! Overflow-safe evaluation of `P_{n,N}`, `P'_{n,N}` and the ratios `P_{k}/P_{k-1}`.
//!
//! Real evaluations run the recurrence on plain `f64` triples and rescale by
//! exact powers of two whenever the magnitudes leave `[2^-600, 2^600]`; the
//! result is reported as a [`ScaledValue`] (sign, natural log of the modulus).
//! Complex evaluations use the ratio form
//! `r_{k+1} = z - b_k - c_k/r_k - d_k/(r_k r_{k-1})`, which never overflows.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Mul, Neg};

use num_complex::Complex64;
use num_traits::Float;

use crate::coeffs::RecurrenceCoefficients;
use crate::error::{Error, Result};

/// Default floor on `|r_k|` below which a ratio evaluation reports a pole.
pub const NEAR_POLE_FLOOR: f64 = 1e-280;

const RESCALE_BITS: i64 = 600;
const BIG: f64 = f64::from_bits(((1023 + RESCALE_BITS) as u64) << 52);
const SMALL: f64 = f64::from_bits(((1023 - RESCALE_BITS) as u64) << 52);

/// A real number stored as `sign · exp(log_mag)`.
///
/// `sign == 0` exactly when `log_mag == -∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub sign: i8,
    pub log_mag: f64,
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue { sign: 0, log_mag: f64::NEG_INFINITY };
    pub const ONE: ScaledValue = ScaledValue { sign: 1, log_mag: 0.0 };

    pub fn from_f64(v: f64) -> Self {
        Self::from_parts(v, 0)
    }

    /// `mantissa · 2^exp2`.
    fn from_parts(mantissa: f64, exp2: i64) -> Self {
        if mantissa == 0.0 {
            return Self::ZERO;
        }
        Self {
            sign: if mantissa > 0.0 { 1 } else { -1 },
            log_mag: mantissa.abs().ln() + exp2 as f64 * core::f64::consts::LN_2,
        }
    }

    /// Back to `f64`; saturates to `±∞` or `0` outside the `f64` range.
    pub fn to_f64(self) -> f64 {
        f64::from(self.sign) * self.log_mag.exp()
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// `self + other` without leaving log space.
    pub fn add(self, other: Self) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = match self.log_mag.partial_cmp(&other.log_mag) {
            Some(Ordering::Less) => (other, self),
            _ => (self, other),
        };
        let ratio = (small.log_mag - big.log_mag).exp();
        let factor = if big.sign == small.sign { 1.0 + ratio } else { 1.0 - ratio };
        if factor == 0.0 {
            return Self::ZERO;
        }
        Self { sign: big.sign, log_mag: big.log_mag + factor.ln() }
    }

    /// `|self/other|` as a natural log.
    pub fn log_abs_ratio(self, other: Self) -> f64 {
        self.log_mag - other.log_mag
    }
}

impl Mul for ScaledValue {
    type Output = ScaledValue;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self { sign: self.sign * rhs.sign, log_mag: self.log_mag + rhs.log_mag }
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;

    fn neg(self) -> Self {
        Self { sign: -self.sign, log_mag: self.log_mag }
    }
}

#[inline]
fn rescale<const K: usize>(vals: &mut [f64; K], exp2: &mut i64) {
    let m = vals.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if m > BIG {
        vals.iter_mut().for_each(|v| *v *= SMALL);
        *exp2 += RESCALE_BITS;
    } else if m < SMALL && m > 0.0 {
        vals.iter_mut().for_each(|v| *v *= BIG);
        *exp2 -= RESCALE_BITS;
    }
}

/// `P_{n,N}(x)` as (mantissa, binary exponent).
pub(crate) fn eval_p_raw<R>(rec: &R, n: usize, big_n: usize, x: f64) -> (f64, i64)
where
    R: RecurrenceCoefficients + ?Sized,
{
    // [P_k, P_{k-1}, P_{k-2}]
    let mut p = [1.0, 0.0, 0.0];
    let mut exp2 = 0i64;
    for k in 0..n {
        let mut next = (x - rec.b(k, big_n)) * p[0];
        if k >= 1 {
            next -= rec.c(k, big_n) * p[1];
        }
        if k >= 2 {
            next -= rec.d(k, big_n) * p[2];
        }
        p = [next, p[0], p[1]];
        rescale(&mut p, &mut exp2);
    }
    (p[0], exp2)
}

/// `(P_{n,N}(x), P'_{n,N}(x))` as mantissas sharing one binary exponent.
pub(crate) fn eval_p_dp_raw<R>(rec: &R, n: usize, big_n: usize, x: f64) -> (f64, f64, i64)
where
    R: RecurrenceCoefficients + ?Sized,
{
    // [P_k, P_{k-1}, P_{k-2}, P'_k, P'_{k-1}, P'_{k-2}]
    let mut v = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let mut exp2 = 0i64;
    for k in 0..n {
        let shift = x - rec.b(k, big_n);
        let mut p = shift * v[0];
        let mut dp = v[0] + shift * v[3];
        if k >= 1 {
            let c = rec.c(k, big_n);
            p -= c * v[1];
            dp -= c * v[4];
        }
        if k >= 2 {
            let d = rec.d(k, big_n);
            p -= d * v[2];
            dp -= d * v[5];
        }
        v = [p, v[0], v[1], dp, v[3], v[4]];
        rescale(&mut v, &mut exp2);
    }
    (v[0], v[3], exp2)
}

/// `P_{n,N}(x)` in sign/log-magnitude form.
pub fn eval_p<R>(rec: &R, n: usize, big_n: usize, x: f64) -> ScaledValue
where
    R: RecurrenceCoefficients + ?Sized,
{
    let (m, e) = eval_p_raw(rec, n, big_n, x);
    ScaledValue::from_parts(m, e)
}

/// `(P_{n,N}(x), P'_{n,N}(x))` from the differentiated recurrence
/// `P'_{k+1} = P_k + (x - b_k) P'_k - c_k P'_{k-1} - d_k P'_{k-2}`.
pub fn eval_p_and_dp<R>(rec: &R, n: usize, big_n: usize, x: f64) -> (ScaledValue, ScaledValue)
where
    R: RecurrenceCoefficients + ?Sized,
{
    let (p, dp, e) = eval_p_dp_raw(rec, n, big_n, x);
    (ScaledValue::from_parts(p, e), ScaledValue::from_parts(dp, e))
}

/// State of the ratio recurrence after reaching `r_index = P_index/P_{index-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioState {
    pub index: usize,
    /// `r_index`.
    pub current: Complex64,
    /// `r_{index-1}`; `None` when `index == 1` (the ratio against `P_{-1} = 0`).
    pub previous: Option<Complex64>,
    /// `ln |P_index(z)|`, accumulated as `Σ ln |r_k|`.
    pub log_abs: f64,
}

impl RatioState {
    /// `P_{index-1}(z) / P_index(z)`.
    pub fn inverse(&self) -> Complex64 {
        self.current.inv()
    }
}

fn step_ratio<R>(rec: &R, k: usize, big_n: usize, z: Complex64, r: Option<Complex64>, r_prev: Option<Complex64>) -> Complex64
where
    R: RecurrenceCoefficients + ?Sized,
{
    let mut next = z - rec.b(k, big_n);
    if let Some(rk) = r {
        next -= rec.c(k, big_n) / rk;
        if let Some(rk1) = r_prev {
            next -= rec.d(k, big_n) / (rk * rk1);
        }
    }
    next
}

/// Ratio recurrence up to `r_{n+1} = P_{n+1}/P_n` at `z`, with the default pole floor.
pub fn eval_ratio_seq<R>(rec: &R, n: usize, big_n: usize, z: Complex64) -> Result<RatioState>
where
    R: RecurrenceCoefficients + ?Sized,
{
    eval_ratio_seq_with_floor(rec, n, big_n, z, NEAR_POLE_FLOOR)
}

pub fn eval_ratio_seq_with_floor<R>(
    rec: &R,
    n: usize,
    big_n: usize,
    z: Complex64,
    floor: f64,
) -> Result<RatioState>
where
    R: RecurrenceCoefficients + ?Sized,
{
    let mut r: Option<Complex64> = None;
    let mut r_prev: Option<Complex64> = None;
    let mut log_abs = 0.0;
    for k in 0..=n {
        let next = step_ratio(rec, k, big_n, z, r, r_prev);
        let mag = next.norm();
        if !(mag >= floor) {
            return Err(Error::NearPole { index: k + 1, magnitude: mag });
        }
        log_abs += mag.ln();
        r_prev = r;
        r = Some(next);
    }
    Ok(RatioState {
        index: n + 1,
        current: r.unwrap_or(Complex64::new(1.0, 0.0)),
        previous: r_prev,
        log_abs,
    })
}

/// `s_k = P'_k(z)/P_k(z)` for `k = 0..=n`, computed alongside the ratios.
pub fn log_derivatives<R>(rec: &R, n: usize, big_n: usize, z: Complex64) -> Result<Vec<Complex64>>
where
    R: RecurrenceCoefficients + ?Sized,
{
    let mut out = Vec::with_capacity(n + 1);
    out.push(Complex64::new(0.0, 0.0));
    let mut r: Option<Complex64> = None;
    let mut r_prev: Option<Complex64> = None;
    for k in 0..n {
        let next = step_ratio(rec, k, big_n, z, r, r_prev);
        if !(next.norm() >= NEAR_POLE_FLOOR) {
            return Err(Error::NearPole { index: k + 1, magnitude: next.norm() });
        }
        let mut acc = Complex64::new(1.0, 0.0) + (z - rec.b(k, big_n)) * out[k];
        if let Some(rk) = r {
            acc -= rec.c(k, big_n) * out[k - 1] / rk;
            if let Some(rk1) = r_prev {
                acc -= rec.d(k, big_n) * out[k - 2] / (rk * rk1);
            }
        }
        out.push(acc / next);
        r_prev = r;
        r = Some(next);
    }
    Ok(out)
}

/// `(1/n) P'_{n,N}(z) / P_{n,N}(z)` for `n ≥ 1`.
pub fn log_derivative_ratio<R>(rec: &R, n: usize, big_n: usize, z: Complex64) -> Result<Complex64>
where
    R: RecurrenceCoefficients + ?Sized,
{
    if n == 0 {
        return Err(Error::InvalidParameter("log_derivative_ratio needs n >= 1"));
    }
    let s = log_derivatives(rec, n, big_n, z)?;
    Ok(s[n] / n as f64)
}

/// `(1/n) Σ_j 1/(z - x_j)` over known zeros.
pub fn log_derivative_from_zeros(zeros: &[f64], z: Complex64) -> Complex64 {
    let sum: Complex64 = zeros.iter().map(|&x| (z - x).inv()).sum();
    sum / zeros.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::CoefficientFamily;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Plain `f64` recurrence, no scaling: the reference for small degrees.
    fn naive(rec: &CoefficientFamily, n: usize, big_n: usize, x: f64) -> f64 {
        let (mut p0, mut p1, mut p2) = (1.0, 0.0, 0.0);
        for k in 0..n {
            let next = (x - rec.b(k, big_n)) * p0 - rec.c(k, big_n) * p1 - rec.d(k, big_n) * p2;
            p2 = p1;
            p1 = p0;
            p0 = next;
        }
        p0
    }

    #[test]
    fn degree_zero_and_one() {
        let f = CoefficientFamily::constant(27.0 / 4.0).unwrap();
        assert_eq!(eval_p(&f, 0, 1, 123.0), ScaledValue::ONE);
        assert!(eval_p(&f, 1, 1, 3.0).is_zero());
        let (_, dp) = eval_p_and_dp(&f, 1, 1, -7.5);
        assert_eq!(dp, ScaledValue::ONE);
    }

    #[test]
    fn q3_at_zero_is_minus_ten() {
        let f = CoefficientFamily::constant(27.0 / 4.0).unwrap();
        let v = eval_p(&f, 3, 1, 0.0);
        assert_eq!(v.sign, -1);
        assert!((v.log_mag - 10f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn quadratic_derivative() {
        let f = CoefficientFamily::constant(1.0).unwrap();
        for x in [-2.0, 0.1, 0.7, 3.0] {
            let (_, dp) = eval_p_and_dp(&f, 2, 1, x);
            let expected = 2.0 * x - (f.b(0, 1) + f.b(1, 1));
            assert!((dp.to_f64() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn derivative_matches_central_differences() {
        let f = CoefficientFamily::laguerre1();
        for &x in &[-0.3, 0.4, 1.7, 2.9] {
            let n = 25;
            let (_, dp) = eval_p_and_dp(&f, n, 20, x);
            let h = 1e-6 * x.abs().max(1.0);
            let fd = (naive(&f, n, 20, x + h) - naive(&f, n, 20, x - h)) / (2.0 * h);
            assert!((dp.to_f64() - fd).abs() <= 1e-6 * fd.abs().max(1.0), "x={x}");
        }
    }

    #[test]
    fn matches_naive_where_naive_is_safe() {
        let f = CoefficientFamily::macdonald();
        for n in 0..40 {
            for &x in &[-1.0, 0.2, 1.3, 5.0] {
                let v = eval_p(&f, n, 30, x).to_f64();
                let w = naive(&f, n, 30, x);
                assert!((v - w).abs() <= 1e-12 * w.abs().max(1e-300), "n={n} x={x}: {v} vs {w}");
            }
        }
    }

    #[test]
    fn no_overflow_at_high_degree() {
        let f = CoefficientFamily::constant(1.0).unwrap();
        let v = eval_p(&f, 100_000, 1, 1e6);
        assert_eq!(v.sign, 1);
        assert!(v.log_mag.is_finite());
        // monic: ln P_n(x) ≈ n ln x for x ≫ zeros
        assert!((v.log_mag / 100_000.0 - 1e6f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn monic_leading_behaviour() {
        let f = CoefficientFamily::laguerre1();
        let x = 1e6f64;
        for n in 1..=50 {
            let v = eval_p(&f, n, 40, x);
            assert!((v.log_mag - n as f64 * x.ln()).abs() < 1e-4, "n={n}");
        }
    }

    #[test]
    fn ratio_first_step() {
        let f = CoefficientFamily::constant(2.0).unwrap();
        let z = c64(0.3, 1.1);
        let st = eval_ratio_seq(&f, 0, 1, z).unwrap();
        assert_eq!(st.current, z - f.b(0, 1));
        assert!(st.previous.is_none());
    }

    #[test]
    fn ratio_tail_is_one_over_z() {
        let f = CoefficientFamily::constant(1.0).unwrap();
        let z = c64(1e6, 0.0);
        let st = eval_ratio_seq(&f, 300, 1, z).unwrap();
        assert!((st.inverse() - z.inv()).norm() <= 1e-9);
    }

    #[test]
    fn near_pole_is_reported() {
        let f = CoefficientFamily::constant(27.0 / 4.0).unwrap();
        // z = b_0 makes r_1 vanish
        let err = eval_ratio_seq(&f, 5, 1, c64(3.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NearPole { index: 1, .. }));
    }

    #[test]
    fn log_derivative_first_degree() {
        let f = CoefficientFamily::constant(1.0).unwrap();
        let z = c64(2.0, -0.5);
        let v = log_derivative_ratio(&f, 1, 1, z).unwrap();
        assert!((v - (z - f.b(0, 1)).inv()).norm() < 1e-15);
        assert!(log_derivative_ratio(&f, 0, 1, z).is_err());
    }

    #[test]
    fn scaled_value_add_and_mul() {
        let a = ScaledValue::from_f64(3.0);
        let b = ScaledValue::from_f64(-5.0);
        assert!((a.add(b).to_f64() + 2.0).abs() < 1e-14);
        assert!(((a * b).to_f64() + 15.0).abs() < 1e-13);
        assert!(a.add(-a).is_zero());
        assert_eq!(ScaledValue::ZERO.add(a), a);
        assert_eq!((-a).sign, -1);
    }
}
