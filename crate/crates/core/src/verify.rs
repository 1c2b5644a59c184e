//! The numbered acceptance checks, shared by the test suite and the CLI.
//!
//! Each check returns a [`CheckOutcome`] holding one or more gated metrics;
//! a numeric error inside a check is reported as a failed outcome, not raised.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffs::{AlphaProfile, CoefficientFamily, Construction, LimitProfile};
use crate::error::{Error, Result};
use crate::measures::{
    ks_statistic, moment_by_quadrature, moments_upsilon, nu_l_density, nu_m_density, nu_profile_density,
    upsilon_unit_density, EmpiricalMeasure, KsReport, LimitMeasure,
};
use crate::phifield::{
    algebraic_identity_check, branch_point_growth_check, dist_to_cut, dual_oracle_check, jump_numeric,
    laurent_coefficient_by_contour, phi, phi_cubic_oracle, phi_laurent_coeffs, ratio_asymptotics_check,
    stieltjes_identity_check,
};
use crate::toeplitz::{qn_at_zero, qn_at_zero_recurrence, scaling_equivariance};
use crate::zeros::{grid_isolation_zeros, ZeroCascade};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Gate values; every field can be overridden by name through [`Tolerances::set`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub algebraic: f64,
    pub dual_oracle: f64,
    pub tail: f64,
    pub laurent: f64,
    pub normalization: f64,
    pub jump: f64,
    pub growth: f64,
    pub stieltjes: f64,
    pub derivation: f64,
    pub qn_zero: f64,
    pub ks_constant: f64,
    pub ks_slack: f64,
    pub ks_laguerre: f64,
    pub ks_macdonald: f64,
    pub ratio: f64,
    pub ratio_alpha0: f64,
    pub zero_oracle: f64,
    pub equivariance: f64,
    pub moments: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebraic: 1e-12,
            dual_oracle: 1e-10,
            tail: 2e-6,
            laurent: 1e-6,
            normalization: 1e-8,
            jump: 1e-4,
            growth: 0.05,
            stieltjes: 1e-7,
            derivation: 1e-6,
            qn_zero: 1e-12,
            ks_constant: 0.05,
            ks_slack: 0.2,
            ks_laguerre: 0.07,
            ks_macdonald: 0.07,
            ratio: 1e-3,
            ratio_alpha0: 1e-14,
            zero_oracle: 1e-10,
            equivariance: 1e-10,
            moments: 1e-8,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 19] = [
        "algebraic",
        "dual_oracle",
        "tail",
        "laurent",
        "normalization",
        "jump",
        "growth",
        "stieltjes",
        "derivation",
        "qn_zero",
        "ks_constant",
        "ks_slack",
        "ks_laguerre",
        "ks_macdonald",
        "ratio",
        "ratio_alpha0",
        "zero_oracle",
        "equivariance",
        "moments",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "algebraic" => &mut self.algebraic,
            "dual_oracle" => &mut self.dual_oracle,
            "tail" => &mut self.tail,
            "laurent" => &mut self.laurent,
            "normalization" => &mut self.normalization,
            "jump" => &mut self.jump,
            "growth" => &mut self.growth,
            "stieltjes" => &mut self.stieltjes,
            "derivation" => &mut self.derivation,
            "qn_zero" => &mut self.qn_zero,
            "ks_constant" => &mut self.ks_constant,
            "ks_slack" => &mut self.ks_slack,
            "ks_laguerre" => &mut self.ks_laguerre,
            "ks_macdonald" => &mut self.ks_macdonald,
            "ratio" => &mut self.ratio,
            "ratio_alpha0" => &mut self.ratio_alpha0,
            "zero_oracle" => &mut self.zero_oracle,
            "equivariance" => &mut self.equivariance,
            "moments" => &mut self.moments,
            _ => return None,
        })
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        let mut copy = *self;
        copy.slot(key).map(|v| *v)
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::InvalidParameter("tolerance must be finite and nonnegative"));
        }
        match self.slot(key) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(Error::InvalidParameter("unknown tolerance key")),
        }
    }
}

/// One gated quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    pub name: String,
    pub achieved: f64,
    pub required: f64,
    pub passed: bool,
}

impl Metric {
    /// Passes when `achieved ≤ required`.
    pub fn at_most(name: impl Into<String>, achieved: f64, required: f64) -> Self {
        Self { name: name.into(), achieved, required, passed: achieved <= required }
    }

    /// A yes/no property, reported as `1` (holds) or `0`.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), achieved: if ok { 1.0 } else { 0.0 }, required: 1.0, passed: ok }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub metrics: Vec<Metric>,
    /// Set when the check could not run to completion.
    pub error: Option<String>,
    /// Recorded values that are not gates, e.g. the KS distances.
    pub notes: Vec<(String, f64)>,
}

impl CheckOutcome {
    fn new(id: u8, name: &'static str) -> Self {
        Self { id, name, metrics: Vec::new(), error: None, notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.metrics.is_empty() && self.metrics.iter().all(|m| m.passed)
    }

    fn finish(mut self, r: Result<()>) -> Self {
        if let Err(e) = r {
            self.error = Some(format!("{e}"));
        }
        self
    }

    /// `PASS`/`FAIL` followed by every metric as `name=achieved (<= required)`.
    pub fn summary_line(&self) -> String {
        let mut s = format!("{} [{:>2}] {}", if self.passed() { "PASS" } else { "FAIL" }, self.id, self.name);
        for m in &self.metrics {
            s.push_str(&format!(
                "; {}={:.3e} ({}{:.3e})",
                m.name,
                m.achieved,
                if m.passed { "ok, req " } else { "FAILS req " },
                m.required
            ));
        }
        if let Some(e) = &self.error {
            s.push_str(&format!("; error: {e}"));
        }
        s
    }
}

/// A point at distance exactly `d` from `[0, 1]`; `u ∈ [0, 1)` walks the boundary
/// of the stadium `{dist = d}`.
pub fn point_at_distance(d: f64, u: f64) -> Complex64 {
    let arc = PI * d;
    let total = 2.0 + 2.0 * arc;
    let mut s = u * total;
    if s < 1.0 {
        return Complex64::new(s, d);
    }
    s -= 1.0;
    if s < arc {
        // right cap, from the top
        return Complex64::new(1.0, 0.0) + Complex64::from_polar(d, PI / 2.0 - s / d);
    }
    s -= arc;
    if s < 1.0 {
        return Complex64::new(1.0 - s, -d);
    }
    s -= 1.0;
    Complex64::from_polar(d, -PI / 2.0 - s / d)
}

/// `count` seeded points with `dist(z, [0,1])` log-uniform in `[d_min, d_max]`.
pub fn random_z_grid(seed: u64, count: usize, d_min: f64, d_max: f64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (d_min.ln(), d_max.ln());
    (0..count)
        .map(|_| {
            let d = (lo + (hi - lo) * rng.random::<f64>()).exp();
            point_at_distance(d, rng.random::<f64>())
        })
        .collect()
}

/// Which checks to run and with what gates.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub tol: Tolerances,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { tol: Tolerances::default(), seed: DEFAULT_SEED }
    }
}

/// Names accepted by [`select_checks`], with the checks they cover.
pub const GROUPS: [(&str, &[u8]); 10] = [
    ("phi", &[1, 2, 3]),
    ("measures", &[4, 8, 13]),
    ("jump", &[5]),
    ("growth", &[6]),
    ("stieltjes", &[7]),
    ("toeplitz", &[9]),
    ("ks", &[10]),
    ("ratio", &[11]),
    ("zeros", &[12]),
    ("moments", &[13]),
];

/// Check ids for a comma-separated list of group names or numbers.
pub fn select_checks(spec: &str) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Ok(id) = item.parse::<u8>() {
            if !(1..=13).contains(&id) {
                return Err(Error::InvalidParameter("check numbers run from 1 to 13"));
            }
            out.push(id);
        } else if let Some((_, ids)) = GROUPS.iter().find(|(name, _)| *name == item) {
            out.extend_from_slice(ids);
        } else {
            return Err(Error::InvalidParameter("unknown check group"));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn run_check(id: u8, cfg: &VerifyConfig) -> CheckOutcome {
    match id {
        1 => check_algebraic_identity(cfg),
        2 => check_dual_oracle(cfg),
        3 => check_tail(cfg),
        4 => check_normalization(cfg),
        5 => check_jump(cfg),
        6 => check_growth(cfg),
        7 => check_stieltjes(cfg),
        8 => check_derivation(cfg),
        9 => check_qn_zero(cfg),
        10 => check_ks(cfg),
        11 => check_ratio(cfg),
        12 => check_zero_oracle(cfg),
        13 => check_moments(cfg),
        _ => CheckOutcome::new(id, "unknown").finish(Err(Error::InvalidParameter("no such check"))),
    }
}

pub fn run_checks(ids: &[u8], cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    ids.iter().map(|&id| run_check(id, cfg)).collect()
}

/// The 1000-point grid shared by checks 1 and 2.
pub fn identity_grid(seed: u64) -> Vec<Complex64> {
    random_z_grid(seed, 1000, 0.01, 100.0)
}

pub fn check_algebraic_identity(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(1, "phi algebraic identity");
    let r = (|| {
        let rep = algebraic_identity_check(&identity_grid(cfg.seed))?;
        out.metrics.push(Metric::at_most("max_rel_residual", rep.max_rel_err(), cfg.tol.algebraic));
        Ok(())
    })();
    out.finish(r)
}

pub fn check_dual_oracle(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(2, "phi dual oracle");
    let r = (|| {
        let grid: Vec<_> = identity_grid(cfg.seed).into_iter().filter(|&z| dist_to_cut(z) >= 0.1).collect();
        out.notes.push(("points".into(), grid.len() as f64));
        let rep = dual_oracle_check(&grid)?;
        out.metrics.push(Metric::at_most("max_abs_diff", rep.max_abs_err(), cfg.tol.dual_oracle));
        Ok(())
    })();
    out.finish(r)
}

pub fn check_tail(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(3, "phi tail and z^-2 coefficient");
    let r = (|| {
        let mut worst: f64 = 0.0;
        for k in 0..8 {
            let z = Complex64::from_polar(1e6, PI * k as f64 / 4.0);
            worst = worst.max((z * phi(z)?.phi - 1.0).norm());
        }
        out.metrics.push(Metric::at_most("max_|z phi - 1|", worst, cfg.tol.tail));
        let direct = laurent_coefficient_by_contour(|z| phi(z).map(|p| p.phi), 2, 3.0, 64)?;
        let cubic = laurent_coefficient_by_contour(phi_cubic_oracle, 2, 3.0, 64)?;
        let series = phi_laurent_coeffs(2)[1];
        out.notes.push(("coefficient_direct".into(), direct.re));
        out.notes.push(("coefficient_cubic".into(), cubic.re));
        out.metrics.push(Metric::at_most("|direct - cubic|", (direct - cubic).norm(), cfg.tol.laurent));
        out.metrics.push(Metric::at_most("|direct - 4/9|", (direct - series).norm(), cfg.tol.laurent));
        Ok(())
    })();
    out.finish(r)
}

pub fn check_normalization(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(4, "normalization");
    let r = (|| {
        for (label, m) in [
            ("upsilon_unit", LimitMeasure::UpsilonUnit),
            ("nu_L(t=1)", LimitMeasure::nu_l(1.0)?),
            ("nu_M(t=1)", LimitMeasure::nu_m(1.0)?),
        ] {
            let mass = m.total_mass()?;
            out.metrics.push(Metric::at_most(format!("|mass-1| {label}"), (mass - 1.0).abs(), cfg.tol.normalization));
        }
        Ok(())
    })();
    out.finish(r)
}

pub fn check_jump(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(5, "jump of phi'/phi");
    let r = (|| {
        let mut worst: f64 = 0.0;
        for j in 1..=19 {
            let x = 0.05 * j as f64;
            let expected = Complex64::new(0.0, 2.0 * PI * upsilon_unit_density(x));
            let got = jump_numeric(x, [1e-3, 1e-4, 1e-5])?;
            worst = worst.max((got - expected).norm() / expected.norm());
        }
        out.metrics.push(Metric::at_most("max_rel_err", worst, cfg.tol.jump));
        Ok(())
    })();
    out.finish(r)
}

pub fn check_growth(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(6, "branch-point exponents");
    let r = (|| {
        let g = branch_point_growth_check()?;
        out.notes.push(("slope_at_0".into(), g.slope_at_zero));
        out.notes.push(("slope_at_1".into(), g.slope_at_one));
        out.notes.push(("slope_far".into(), g.slope_far));
        out.metrics.push(Metric::at_most("|slope_0 + 2/3|", (g.slope_at_zero + 2.0 / 3.0).abs(), cfg.tol.growth));
        out.metrics.push(Metric::at_most("|slope_1 + 1/2|", (g.slope_at_one + 0.5).abs(), cfg.tol.growth));
        Ok(())
    })();
    out.finish(r)
}

pub fn stieltjes_grid(seed: u64) -> Vec<Complex64> {
    random_z_grid(seed ^ 0x5f37_59df, 50, 0.05, 5.0)
}

pub fn check_stieltjes(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(7, "Stieltjes identity");
    let r = (|| {
        let rep = stieltjes_identity_check(&stieltjes_grid(cfg.seed))?;
        out.metrics.push(Metric::at_most("max_abs_err", rep.max_abs_err(), cfg.tol.stieltjes));
        Ok(())
    })();
    out.finish(r)
}

pub fn check_derivation(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(8, "profile average vs closed forms");
    let r = (|| {
        let lag = LimitProfile::new(AlphaProfile::Linear { slope: 27.0 / 8.0 })?;
        let mac = LimitProfile::new(AlphaProfile::Quadratic { coef: 27.0 / 4.0 })?;
        let t = 1.0;
        let (sl, sm) = (27.0 * t / 8.0, 27.0 * t * t / 4.0);
        let (mut el, mut em): (f64, f64) = (0.0, 0.0);
        for i in 0..100 {
            let u = (i as f64 + 0.5) / 100.0;
            el = el.max((nu_profile_density(&lag, t, u * sl)? - nu_l_density(t, u * sl)?).abs());
            em = em.max((nu_profile_density(&mac, t, u * sm)? - nu_m_density(t, u * sm)?).abs());
        }
        out.metrics.push(Metric::at_most("max_err_L", el, cfg.tol.derivation));
        out.metrics.push(Metric::at_most("max_err_M", em, cfg.tol.derivation));
        Ok(())
    })();
    out.finish(r)
}

pub fn check_qn_zero(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(9, "Toeplitz Q_n(0) closed form");
    let r = (|| {
        let mut worst: f64 = 0.0;
        for alpha in [1.0, 2.0, 27.0 / 4.0] {
            for n in 0..=50 {
                let a = qn_at_zero(alpha, n);
                let b = qn_at_zero_recurrence(alpha, n)?;
                worst = worst.max((a - b).abs() / a.abs());
            }
        }
        out.metrics.push(Metric::at_most("max_rel_err", worst, cfg.tol.qn_zero));
        Ok(())
    })();
    out.finish(r)
}

/// KS distances of the constant family (`n = 100, 200, 400`) and the two
/// varying families at `n = N = 300`.
#[derive(Debug, Clone, PartialEq)]
pub struct KsSummary {
    pub constant: Vec<KsReport>,
    pub laguerre: KsReport,
    pub macdonald: KsReport,
}

pub fn ks_summary() -> Result<KsSummary> {
    let unit = CoefficientFamily::constant(1.0)?;
    let cascade = ZeroCascade::run(&unit, 400, 1)?;
    let constant = [100, 200, 400]
        .iter()
        .map(|&n| ks_statistic(&EmpiricalMeasure::new(cascade.level(n).zeros), &LimitMeasure::UpsilonUnit))
        .collect::<Result<Vec<_>>>()?;
    let varying = |fam: CoefficientFamily, limit: LimitMeasure| -> Result<KsReport> {
        let zs = crate::zeros::zero_cascade(&fam, 300, 300)?;
        ks_statistic(&EmpiricalMeasure::new(zs.zeros), &limit)
    };
    Ok(KsSummary {
        constant,
        laguerre: varying(CoefficientFamily::laguerre1().with_construction(Construction::Factorized), LimitMeasure::nu_l(1.0)?)?,
        macdonald: varying(CoefficientFamily::macdonald().with_construction(Construction::Factorized), LimitMeasure::nu_m(1.0)?)?,
    })
}

pub fn check_ks(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(10, "zero distribution KS");
    let r = (|| {
        let s = ks_summary()?;
        let d: Vec<f64> = s.constant.iter().map(|r| r.statistic).collect();
        for (n, v) in [100, 200, 400].iter().zip(&d) {
            out.notes.push((format!("D_{n} constant"), *v));
        }
        out.notes.push(("D_300 laguerre".into(), s.laguerre.statistic));
        out.notes.push(("D_300 macdonald".into(), s.macdonald.statistic));
        out.metrics.push(Metric::at_most("D_400 constant", d[2], cfg.tol.ks_constant));
        let slack = 1.0 + cfg.tol.ks_slack;
        out.metrics.push(Metric::holds("D_100 >= D_200 >= D_400 (slack)", d[1] <= slack * d[0] && d[2] <= slack * d[1]));
        out.metrics.push(Metric::at_most("D_300 laguerre", s.laguerre.statistic, cfg.tol.ks_laguerre));
        out.metrics.push(Metric::at_most("D_300 macdonald", s.macdonald.statistic, cfg.tol.ks_macdonald));
        Ok(())
    })();
    out.finish(r)
}

pub const RATIO_POINTS: [(f64, f64); 3] = [(3.0, 0.0), (-1.0, 0.0), (1.5, 1.5)];
pub const RATIO_SCHEDULE: [usize; 4] = [50, 100, 200, 400];

pub fn check_ratio(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(11, "ratio asymptotics");
    let r = (|| {
        let grid: Vec<Complex64> = RATIO_POINTS.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        let unit = CoefficientFamily::constant(1.0)?;
        let rep = ratio_asymptotics_check(&unit, 1.0, &grid, &RATIO_SCHEDULE, 1, 0.1)?;
        for &z in &grid {
            let errs = rep.errors_at(z);
            for (n, e) in RATIO_SCHEDULE.iter().zip(&errs) {
                out.notes.push((format!("e_{n}({z})"), *e));
            }
            out.metrics.push(Metric::holds(format!("e_n strictly decreasing at {z}"), rep.strictly_decreasing_at(z)));
            out.metrics.push(Metric::at_most(format!("e_400({z})"), errs[errs.len() - 1], cfg.tol.ratio));
        }
        let zero = CoefficientFamily::custom("zero", LimitProfile::new(AlphaProfile::Constant(0.0))?, 0.0)?;
        let rep0 = ratio_asymptotics_check(&zero, 0.0, &grid, &RATIO_SCHEDULE, 1, 0.1)?;
        let worst0 = rep0.rows.iter().map(|r| r.error).fold(0.0, f64::max);
        out.metrics.push(Metric::at_most("alpha=0 max error", worst0, cfg.tol.ratio_alpha0));
        Ok(())
    })();
    out.finish(r)
}

/// Families and `N` used by the zero-oracle comparison.
fn oracle_families() -> Result<Vec<(CoefficientFamily, usize)>> {
    Ok(vec![
        (CoefficientFamily::constant(1.0)?, 1),
        (CoefficientFamily::constant(27.0 / 4.0)?, 1),
        (CoefficientFamily::jacobi_pineiro(), 12),
        (CoefficientFamily::laguerre1().with_construction(Construction::Factorized), 12),
        (CoefficientFamily::macdonald().with_construction(Construction::Factorized), 12),
    ])
}

pub fn check_zero_oracle(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(12, "zero finder oracles");
    let r = (|| {
        let mut worst: f64 = 0.0;
        let mut counts_match = true;
        for (fam, big_n) in oracle_families()? {
            let cascade = ZeroCascade::run(&fam, 12, big_n)?;
            for n in 1..=12 {
                let a = cascade.level(n).zeros;
                let b = grid_isolation_zeros(&fam, n, big_n, 10_000);
                if a.len() != b.len() {
                    counts_match = false;
                    continue;
                }
                for (x, y) in a.iter().zip(&b) {
                    worst = worst.max((x - y).abs());
                }
            }
        }
        out.metrics.push(Metric::holds("zero counts agree", counts_match));
        out.metrics.push(Metric::at_most("max |cascade - grid|", worst, cfg.tol.zero_oracle));
        let eq = [2.0, 27.0 / 4.0]
            .iter()
            .map(|&a| scaling_equivariance(a, 100))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        out.metrics.push(Metric::at_most("max |x(alpha) - alpha x(1)|", eq, cfg.tol.equivariance));
        Ok(())
    })();
    out.finish(r)
}

pub fn check_moments(cfg: &VerifyConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new(13, "moments");
    let r = (|| {
        let mut worst: f64 = 0.0;
        for k in 1..=4 {
            let series = moments_upsilon(k);
            let quad = moment_by_quadrature(k as i32)?;
            out.notes.push((format!("m_{k}"), series));
            worst = worst.max((series - quad).abs());
        }
        out.metrics.push(Metric::at_most("max |quadrature - series|", worst, cfg.tol.moments));
        let m1 = (moments_upsilon(1) - 4.0 / 9.0).abs().max((moment_by_quadrature(1)? - 4.0 / 9.0).abs());
        let m2 = (moments_upsilon(2) - 80.0 / 243.0).abs().max((moment_by_quadrature(2)? - 80.0 / 243.0).abs());
        out.metrics.push(Metric::at_most("|m_1 - 4/9|", m1, cfg.tol.moments));
        out.metrics.push(Metric::at_most("|m_2 - 80/243|", m2, cfg.tol.moments));
        Ok(())
    })();
    out.finish(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stadium_points_have_the_requested_distance() {
        for d in [0.01, 0.3, 5.0] {
            for i in 0..50 {
                let z = point_at_distance(d, i as f64 / 50.0);
                assert!((dist_to_cut(z) - d).abs() < 1e-12 * d.max(1.0), "{d} {i} {z}");
            }
        }
    }

    #[test]
    fn grids_are_seeded() {
        assert_eq!(random_z_grid(3, 10, 0.1, 1.0), random_z_grid(3, 10, 0.1, 1.0));
        assert_ne!(random_z_grid(3, 10, 0.1, 1.0), random_z_grid(4, 10, 0.1, 1.0));
    }

    #[test]
    fn tolerance_keys() {
        let mut t = Tolerances::default();
        for k in Tolerances::KEYS {
            assert!(t.get(k).is_some(), "{k}");
        }
        t.set("stieltjes", 1e-5).unwrap();
        assert_eq!(t.stieltjes, 1e-5);
        assert!(t.set("nope", 1.0).is_err());
        assert!(t.set("jump", -1.0).is_err());
    }

    #[test]
    fn selection() {
        assert_eq!(select_checks("phi").unwrap(), vec![1, 2, 3]);
        assert_eq!(select_checks("13, ks,1").unwrap(), vec![1, 10, 13]);
        assert!(select_checks("14").is_err());
        assert!(select_checks("bogus").is_err());
    }

    #[test]
    fn failing_gate_is_reported() {
        let mut cfg = VerifyConfig::default();
        cfg.tol.qn_zero = 0.0;
        let o = run_check(9, &cfg);
        // the closed form is exact at n = 0, so a zero gate still can fail only through rounding
        assert_eq!(o.metrics.len(), 1);
        assert!(o.summary_line().starts_with(if o.passed() { "PASS" } else { "FAIL" }));
    }
}
