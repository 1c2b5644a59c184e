//! Banded Toeplitz matrices `T_n^α` whose characteristic polynomials obey the
//! constant-coefficient recurrence with `b = 3β`, `c = 3β²`, `d = β³`.
//!
//! Eigenvalues are never computed with a matrix solver: they are the zeros of
//! `Q_n` from the cascade. The matrices themselves serve determinant identities
//! and total-nonnegativity checks.

use alloc::vec::Vec;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffs::CoefficientFamily;
use crate::error::{Error, Result};
use crate::linalg::{combinations, Matrix};
use crate::measures::{ks_statistic, EmpiricalMeasure, KsReport, LimitMeasure};
use crate::polycore::eval_p;
use crate::zeros::ZeroCascade;

/// Largest dimension for exhaustive minor enumeration.
pub const EXHAUSTIVE_TN_MAX: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToeplitzSpec {
    pub alpha: f64,
    pub n: usize,
}

impl ToeplitzSpec {
    pub fn new(alpha: f64, n: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter("Toeplitz matrices need alpha > 0"));
        }
        Ok(Self { alpha, n })
    }

    pub fn beta(&self) -> f64 {
        4.0 * self.alpha / 27.0
    }

    /// `T_n^α`: `3β` on the diagonal, `1` above, `3β²` and `β³` on the two subdiagonals.
    pub fn matrix(&self) -> Matrix {
        let b = self.beta();
        let mut m = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            m[(i, i)] = 3.0 * b;
            if i + 1 < self.n {
                m[(i, i + 1)] = 1.0;
                m[(i + 1, i)] = 3.0 * b * b;
            }
            if i + 2 < self.n {
                m[(i + 2, i)] = b * b * b;
            }
        }
        m
    }

    /// `Ã_n^α`, `(n+1) × (n+1)` lower bidiagonal with `1` on the diagonal and `β` below.
    pub fn factor(&self) -> Matrix {
        let mut a = Matrix::identity(self.n + 1);
        for i in 1..=self.n {
            a[(i, i - 1)] = self.beta();
        }
        a
    }

    /// `T̃_n^α`, lower triangular Toeplitz with first column `(1, 3β, 3β², β³, 0, …)`.
    pub fn tilde(&self) -> Matrix {
        let b = self.beta();
        let band = [1.0, 3.0 * b, 3.0 * b * b, b * b * b];
        let mut m = Matrix::zeros(self.n + 1, self.n + 1);
        for i in 0..=self.n {
            for (k, &v) in band.iter().enumerate() {
                if i + k <= self.n {
                    m[(i + k, i)] = v;
                }
            }
        }
        m
    }

    /// `T_n` as rows `1..=n`, columns `0..n` of `T̃_n`.
    pub fn embedded_in_tilde(&self) -> Matrix {
        let rows: Vec<usize> = (1..=self.n).collect();
        let cols: Vec<usize> = (0..self.n).collect();
        self.tilde().select(&rows, &cols)
    }
}

/// `Q_n^α(0) = (-β)^n (1 + 3n/2 + n²/2)`.
pub fn qn_at_zero(alpha: f64, n: usize) -> f64 {
    let beta = 4.0 * alpha / 27.0;
    let nf = n as f64;
    (-beta).powi(n as i32) * (1.0 + 1.5 * nf + 0.5 * nf * nf)
}

/// `Q_n^α(0)` from the recurrence.
pub fn qn_at_zero_recurrence(alpha: f64, n: usize) -> Result<f64> {
    let fam = CoefficientFamily::constant(alpha)?;
    Ok(eval_p(&fam, n, 1, 0.0).to_f64())
}

/// `T_n^α` is nonsingular iff `Q_n^α(0) ≠ 0`.
pub fn tn_nonsingular_check(alpha: f64, n: usize) -> bool {
    alpha > 0.0 && qn_at_zero(alpha, n) != 0.0
}

/// Minors of one matrix, summarised.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinorSummary {
    pub checked: usize,
    pub min_minor: f64,
    /// Minors below `-tolerance`.
    pub negative: usize,
    pub tolerance: f64,
}

impl MinorSummary {
    pub fn nonnegative(&self) -> bool {
        self.negative == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TnReport {
    pub alpha: f64,
    pub n: usize,
    pub factor: MinorSummary,
    pub tilde: MinorSummary,
    pub t_n: MinorSummary,
    /// `max |Ã³ - T̃|` entrywise.
    pub cube_error: f64,
}

impl TnReport {
    pub fn all_nonnegative(&self) -> bool {
        self.factor.nonnegative() && self.tilde.nonnegative() && self.t_n.nonnegative()
    }
}

fn entry_scale(m: &Matrix) -> f64 {
    let mut s: f64 = 1.0;
    for i in 0..m.rows() {
        let row: f64 = (0..m.cols()).map(|j| m[(i, j)].abs()).sum();
        s = s.max(row);
    }
    s
}

fn exhaustive_minors(m: &Matrix) -> MinorSummary {
    let scale = entry_scale(m);
    let mut out = MinorSummary { checked: 0, min_minor: f64::INFINITY, negative: 0, tolerance: 0.0 };
    for k in 1..=m.rows().min(m.cols()) {
        let tol = 1e-12 * scale.powi(k as i32);
        out.tolerance = out.tolerance.max(tol);
        let rows = combinations(m.rows(), k);
        let cols = combinations(m.cols(), k);
        for r in &rows {
            for c in &cols {
                let v = m.select(r, c).det();
                out.checked += 1;
                out.min_minor = out.min_minor.min(v);
                if v < -tol {
                    out.negative += 1;
                }
            }
        }
    }
    out
}

/// All minors of `Ã_n`, `T̃_n = Ã_n³` and `T_n` for `n ≤ 6`.
pub fn total_nonnegativity_smalln(alpha: f64, n: usize) -> Result<TnReport> {
    if n > EXHAUSTIVE_TN_MAX {
        return Err(Error::InvalidParameter("exhaustive minor enumeration is limited to n <= 6"));
    }
    let spec = ToeplitzSpec::new(alpha, n)?;
    let a = spec.factor();
    let tilde = spec.tilde();
    let cube = &(&a * &a) * &a;
    let mut cube_error: f64 = 0.0;
    for i in 0..=n {
        for j in 0..=n {
            cube_error = cube_error.max((cube[(i, j)] - tilde[(i, j)]).abs());
        }
    }
    Ok(TnReport {
        alpha,
        n,
        factor: exhaustive_minors(&a),
        tilde: exhaustive_minors(&tilde),
        t_n: exhaustive_minors(&spec.matrix()),
        cube_error,
    })
}

fn random_subset<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    // partial Fisher–Yates
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    let mut out = pool[..k].to_vec();
    out.sort_unstable();
    out
}

/// `samples` random square minors of `T̃_n` with order up to `max_order`.
pub fn total_nonnegativity_sampled(
    alpha: f64,
    n: usize,
    samples: usize,
    max_order: usize,
    seed: u64,
) -> Result<MinorSummary> {
    let m = ToeplitzSpec::new(alpha, n)?.tilde();
    let dim = n + 1;
    let scale = entry_scale(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = MinorSummary { checked: 0, min_minor: f64::INFINITY, negative: 0, tolerance: 0.0 };
    for _ in 0..samples {
        let k = rng.random_range(1..=max_order.clamp(1, dim));
        let rows = random_subset(&mut rng, dim, k);
        let cols = random_subset(&mut rng, dim, k);
        let v = m.select(&rows, &cols).det();
        let tol = 1e-12 * scale.powi(k as i32);
        out.tolerance = out.tolerance.max(tol);
        out.checked += 1;
        out.min_minor = out.min_minor.min(v);
        if v < -tol {
            out.negative += 1;
        }
    }
    Ok(out)
}

/// `max_x |det(xI - T_n) - Q_n(x)|`, the determinant by cofactor expansion.
pub fn char_poly_identity(alpha: f64, n: usize, xs: &[f64]) -> Result<f64> {
    if n > 8 {
        return Err(Error::InvalidParameter("cofactor expansion is limited to n <= 8"));
    }
    let t = ToeplitzSpec::new(alpha, n)?.matrix();
    let fam = CoefficientFamily::constant(alpha)?;
    let mut worst: f64 = 0.0;
    for &x in xs {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = if i == j { x } else { 0.0 } - t[(i, j)];
            }
        }
        let det = m.det_cofactor();
        let q = eval_p(&fam, n, 1, x).to_f64();
        worst = worst.max((det - q).abs() / q.abs().max(1.0));
    }
    Ok(worst)
}

/// KS distance between the eigenvalues of `T_n^α` (the zeros of `Q_n^α`)
/// and `υ_{[0,α]}`, for each `n` of the schedule.
pub fn toeplitz_limit_check(alpha: f64, schedule: &[usize]) -> Result<Vec<KsReport>> {
    let fam = CoefficientFamily::constant(alpha)?;
    let top = schedule.iter().copied().max().unwrap_or(0);
    if top == 0 {
        return Err(Error::InvalidParameter("schedule needs a degree >= 1"));
    }
    let cascade = ZeroCascade::run(&fam, top, 1)?;
    let limit = LimitMeasure::upsilon(alpha)?;
    schedule
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::InvalidParameter("schedule degrees must be >= 1"));
            }
            let zs = cascade.level(n);
            ks_statistic(&EmpiricalMeasure::new(zs.zeros), &limit)
        })
        .collect()
}

/// `max_j |x_j(α, n) - α x_j(1, n)|`.
pub fn scaling_equivariance(alpha: f64, n: usize) -> Result<f64> {
    let unit = ZeroCascade::run(&CoefficientFamily::constant(1.0)?, n, 1)?.last();
    let scaled = ZeroCascade::run(&CoefficientFamily::constant(alpha)?, n, 1)?.last();
    Ok(unit
        .zeros
        .iter()
        .zip(&scaled.zeros)
        .map(|(u, s)| (s - alpha * u).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qn_examples() {
        assert_eq!(qn_at_zero(1.0, 0), 1.0);
        // β = 1: (+1)(1 + 3 + 2)
        assert_eq!(qn_at_zero(27.0 / 4.0, 2), 6.0);
        assert!(qn_at_zero(1.0, 3) < 0.0);
        for n in [1, 2, 3] {
            assert!(tn_nonsingular_check(1.0, n));
        }
        assert!(tn_nonsingular_check(27.0 / 4.0, 10));
        assert!(!tn_nonsingular_check(0.0, 3));
    }

    #[test]
    fn qn_closed_form_matches_recurrence() {
        for alpha in [1.0, 2.0, 27.0 / 4.0] {
            for n in 0..=50 {
                let a = qn_at_zero(alpha, n);
                let b = qn_at_zero_recurrence(alpha, n).unwrap();
                assert!((a - b).abs() <= 1e-12 * a.abs(), "alpha {alpha}, n {n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn structure() {
        let s = ToeplitzSpec::new(27.0 / 4.0, 3).unwrap();
        let t = s.tilde();
        let first: Vec<f64> = (0..4).map(|i| t[(i, 0)]).collect();
        assert_eq!(first, [1.0, 3.0, 3.0, 1.0]);
        assert_eq!(s.embedded_in_tilde(), s.matrix());
        let one = ToeplitzSpec::new(1.0, 1).unwrap().matrix();
        assert!((one[(0, 0)] - 4.0 / 9.0).abs() < 1e-15);
        assert!(ToeplitzSpec::new(0.0, 3).is_err());
    }

    #[test]
    fn small_n_total_nonnegativity() {
        let r = total_nonnegativity_smalln(27.0 / 4.0, 3).unwrap();
        assert!(r.all_nonnegative());
        assert_eq!(r.cube_error, 0.0);
        let r = total_nonnegativity_smalln(1.0, 4).unwrap();
        assert!(r.all_nonnegative(), "{r:?}");
        // Σ_k C(5,k)² minors of a 5 × 5 matrix
        assert_eq!(r.tilde.checked, 251);
        assert!(total_nonnegativity_smalln(1.0, 7).is_err());
    }

    #[test]
    fn sampled_minors_are_deterministic() {
        let a = total_nonnegativity_sampled(1.0, 20, 500, 6, 7).unwrap();
        let b = total_nonnegativity_sampled(1.0, 20, 500, 6, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.nonnegative());
    }

    #[test]
    fn characteristic_polynomial() {
        let xs = [-1.0, 0.0, 0.3, 0.9, 2.0];
        for n in 1..=8 {
            assert!(char_poly_identity(1.0, n, &xs).unwrap() < 1e-10);
        }
    }

    #[test]
    fn equivariance_and_positivity() {
        assert!(scaling_equivariance(2.0, 60).unwrap() < 1e-10);
        let zs = ZeroCascade::run(&CoefficientFamily::constant(2.0).unwrap(), 60, 1).unwrap().last();
        assert!(zs.zeros.iter().all(|&x| x > 0.0 && x < 2.0));
    }

    #[test]
    fn degree_one_eigenvalue() {
        let r = toeplitz_limit_check(1.0, &[1]).unwrap();
        let c = LimitMeasure::UpsilonUnit.cdf(4.0 / 9.0).unwrap();
        assert!((r[0].statistic - c.max(1.0 - c)).abs() < 1e-12);
    }
}
