use serde_json::{json, Value};
use zerodist_core::measures::{ks_statistic, EmpiricalMeasure, LimitMeasure};
use zerodist_core::phifield::{dist_to_cut, phi, phi_cubic_oracle, ratio_asymptotics_check};
use zerodist_core::toeplitz::{
    qn_at_zero, qn_at_zero_recurrence, scaling_equivariance, total_nonnegativity_sampled, total_nonnegativity_smalln,
    MinorSummary,
};
use zerodist_core::verify::{random_z_grid, run_checks, select_checks, CheckOutcome, VerifyConfig};
use zerodist_core::zeros::{validate_hypotheses, zero_cascade, HypothesisReport};
use zerodist_core::{AlphaProfile, CoefficientFamily, Complex64, FamilyKind, RecurrenceCoefficients};

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::{Sink, Table};

/// Figure presets: `t = 8/27` for `ν^L` and `t = 2/(3√3)` for `ν^M`.
pub const PRESET_T_LAGUERRE: f64 = 8.0 / 27.0;
pub fn preset_t_macdonald() -> f64 {
    2.0 / (3.0 * 3f64.sqrt())
}

fn family_json(fam: &CoefficientFamily) -> Value {
    json!({
        "name": fam.name,
        "kind": fam.kind.as_str(),
        "construction": fam.construction.as_str(),
        "scale_exponent": fam.scale_exponent,
    })
}

/// `N` for a family: irrelevant (1) for constant profiles, `n` otherwise unless given.
fn big_n_for(cfg: &RunConfig, fam: &CoefficientFamily, n: usize) -> Result<usize> {
    let default = if fam.horizon().is_none() { 1 } else { n };
    let big_n = cfg.big_n.unwrap_or(default);
    if big_n == 0 {
        return Err(CliError::Validation("N must be at least 1".into()));
    }
    Ok(big_n)
}

fn hypotheses_json(r: &HypothesisReport) -> Value {
    json!({
        "n_max": r.n_max,
        "N": r.big_n,
        "bound": r.bound,
        "levels_passed": r.levels_passed,
        "real_simple": r.real_simple,
        "interlacing": r.interlacing,
        "worst_interlacing_margin": finite_or_null(r.worst_interlacing_margin),
        "min_zero_gap": finite_or_null(r.min_zero_gap),
        "degenerate": r.degenerate,
        "failure": r.failure.as_ref().map(|e| e.to_string()),
        "all_pass": r.all_pass(),
    })
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

pub fn cmd_zeros(cfg: &RunConfig) -> Result<()> {
    let fam = cfg.family()?;
    let n = cfg.degree(100)?;
    let big_n = big_n_for(cfg, &fam, n)?;
    let mut sink = Sink::new(cfg, "zeros");
    sink.record("family", family_json(&fam));
    sink.record("N", big_n);
    let report = validate_hypotheses(&fam, n, big_n);
    sink.report(".validation.json", &hypotheses_json(&report))?;
    if let Some(e) = &report.failure {
        sink.finish()?;
        return Err(CliError::from(e.clone()));
    }
    let zs = zero_cascade(&fam, n, big_n)?;
    let raw = zs.raw_zeros();
    let mut table = Table::new(&["k_level", "j_index", "zero", "rescaled_zero"]);
    for (j, (x, r)) in zs.zeros.iter().zip(&raw).enumerate() {
        table.push(vec![n.into(), (j + 1).into(), (*r).into(), (*x).into()]);
    }
    sink.table(&table)?;
    sink.finish()
}

fn measure_for(cfg: &RunConfig) -> Result<(LimitMeasure, Value)> {
    if let Some(p) = &cfg.preset {
        let (m, t) = match p.as_str() {
            "fig1" => (LimitMeasure::UpsilonUnit, None),
            "fig2-laguerre" => (LimitMeasure::nu_l(PRESET_T_LAGUERRE)?, Some(PRESET_T_LAGUERRE)),
            "fig2-macdonald" => (LimitMeasure::nu_m(preset_t_macdonald())?, Some(preset_t_macdonald())),
            other => {
                return Err(CliError::Validation(format!(
                    "unknown preset {other:?} (fig1|fig2-laguerre|fig2-macdonald)"
                )))
            }
        };
        return Ok((m, json!({ "preset": p, "t": t })));
    }
    let fam = cfg.family()?;
    let t = cfg.t(1.0)?;
    let m = match fam.kind {
        FamilyKind::Laguerre1 => LimitMeasure::nu_l(t)?,
        FamilyKind::Macdonald => LimitMeasure::nu_m(t)?,
        _ => match fam.profile.alpha {
            AlphaProfile::Constant(a) if a == 1.0 => LimitMeasure::UpsilonUnit,
            AlphaProfile::Constant(a) => LimitMeasure::upsilon(a)?,
            _ => LimitMeasure::nu_profile(fam.profile.clone(), t)?,
        },
    };
    Ok((m, json!({ "family": family_json(&fam), "t": t })))
}

pub fn cmd_density(cfg: &RunConfig) -> Result<()> {
    let (m, info) = measure_for(cfg)?;
    if m == LimitMeasure::Dirac0 {
        return Err(CliError::Validation("the limit is a point mass at 0; no density to tabulate".into()));
    }
    let points = cfg.points(1000)?;
    let (a, b) = m.support();
    let mut table = Table::new(&["x", "density", "cdf"]);
    for k in 0..points {
        let x = a + (b - a) * (k as f64 + 0.5) / points as f64;
        table.push(vec![x.into(), m.density(x)?.into(), m.cdf(x)?.into()]);
    }
    let mut sink = Sink::new(cfg, "density");
    sink.record("measure", m.name());
    sink.record("support", json!([a, b]));
    sink.record("source", info);
    sink.table(&table)?;
    sink.finish()
}

pub fn cmd_ks(cfg: &RunConfig) -> Result<()> {
    let fam = cfg.family()?;
    let varying = fam.horizon().is_some();
    let t = cfg.t(1.0)?;
    let schedule = cfg.schedule(&[100, 200, 400])?;
    let limit = match (&fam.kind, &fam.profile.alpha) {
        (FamilyKind::Laguerre1, _) => LimitMeasure::nu_l(t)?,
        (FamilyKind::Macdonald, _) => LimitMeasure::nu_m(t)?,
        (_, AlphaProfile::Constant(a)) => LimitMeasure::upsilon(*a)?,
        _ => LimitMeasure::nu_profile(fam.profile.clone(), t)?,
    };
    let mut table = Table::new(&["n", "N", "statistic", "location"]);
    for &n in &schedule {
        let big_n = match cfg.big_n {
            Some(b) => b,
            None if varying => ((n as f64 / t).round() as usize).max(1),
            None => 1,
        };
        let zs = zero_cascade(&fam, n, big_n)?;
        let r = ks_statistic(&EmpiricalMeasure::new(zs.zeros), &limit)?;
        table.push(vec![n.into(), big_n.into(), r.statistic.into(), r.location.into()]);
    }
    let mut sink = Sink::new(cfg, "ks");
    sink.record("family", family_json(&fam));
    sink.record("limit", limit.name());
    sink.table(&table)?;
    sink.finish()
}

pub fn cmd_ratio(cfg: &RunConfig) -> Result<()> {
    let fam = cfg.family()?;
    let AlphaProfile::Constant(alpha) = fam.profile.alpha else {
        return Err(CliError::Validation("ratio asymptotics need a constant alpha profile".into()));
    };
    let grid = cfg.z_points()?.unwrap_or_else(|| vec![Complex64::new(3.0, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(1.5, 1.5)]);
    let schedule = cfg.schedule(&[50, 100, 200, 400])?;
    let rep = ratio_asymptotics_check(&fam, alpha, &grid, &schedule, 1, 0.1)?;
    let mut table = Table::new(&[
        "z_re", "z_im", "n", "ratio_re", "ratio_im", "limit_re", "limit_im", "error", "derivative_error",
    ]);
    for r in &rep.rows {
        table.push(vec![
            r.z.re.into(),
            r.z.im.into(),
            r.n.into(),
            r.ratio.re.into(),
            r.ratio.im.into(),
            r.limit.re.into(),
            r.limit.im.into(),
            r.error.into(),
            r.derivative_error.into(),
        ]);
    }
    let tol = if alpha == 0.0 { cfg.tolerances()?.ratio_alpha0 } else { cfg.tolerances()?.ratio };
    let top = schedule.iter().copied().max().unwrap_or(0);
    let worst = rep.rows.iter().filter(|r| r.n == top).map(|r| r.error).fold(0.0, f64::max);
    let mut sink = Sink::new(cfg, "ratio");
    sink.record("family", family_json(&fam));
    sink.record("zero_hull", json!([rep.zero_hull.0, rep.zero_hull.1]));
    sink.record("max_error_at_top", worst);
    sink.table(&table)?;
    sink.finish()?;
    if worst > tol {
        return Err(CliError::Numeric(format!("e_{top} = {worst:e} exceeds ratio tolerance {tol:e}")));
    }
    Ok(())
}

pub fn cmd_phi_check(cfg: &RunConfig) -> Result<()> {
    let grid = match cfg.z_points()? {
        Some(g) => g,
        None => random_z_grid(cfg.seed(), cfg.points(1000)?, 0.01, 100.0),
    };
    let tol = cfg.tolerances()?;
    // lhs: branch formula, rhs: cubic root tracking
    let mut table = Table::new(&["z_re", "z_im", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_residual"]);
    let (mut worst_res, mut worst_diff) = (0.0f64, 0.0f64);
    for &z in &grid {
        let p = phi(z)?.phi;
        let rhs = (Complex64::new(1.0, 0.0) + p * (4.0 / 27.0)).powi(3);
        let res = (z * p - rhs).norm() / (z * p).norm();
        let o = phi_cubic_oracle(z)?;
        let diff = (p - o).norm();
        worst_res = worst_res.max(res);
        if dist_to_cut(z) >= 0.1 {
            worst_diff = worst_diff.max(diff);
        }
        table.push(vec![z.re.into(), z.im.into(), p.re.into(), p.im.into(), o.re.into(), o.im.into(), diff.into(), res.into()]);
    }
    let mut sink = Sink::new(cfg, "phi-check");
    sink.record("max_rel_residual", worst_res);
    sink.record("max_oracle_diff", worst_diff);
    sink.table(&table)?;
    sink.finish()?;
    if worst_res > tol.algebraic {
        return Err(CliError::Numeric(format!("relative residual {worst_res:e} exceeds {:e}", tol.algebraic)));
    }
    if worst_diff > tol.dual_oracle {
        return Err(CliError::Numeric(format!("oracle disagreement {worst_diff:e} exceeds {:e}", tol.dual_oracle)));
    }
    Ok(())
}

fn minors_json(m: &MinorSummary) -> Value {
    json!({
        "checked": m.checked,
        "min_minor": finite_or_null(m.min_minor),
        "negative": m.negative,
        "tolerance": m.tolerance,
    })
}

pub fn cmd_toeplitz(cfg: &RunConfig) -> Result<()> {
    let alpha = cfg.alpha.unwrap_or(1.0);
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(CliError::Validation(format!("alpha must be positive and finite, got {alpha}")));
    }
    let n = cfg.degree(6)?;
    let tol = cfg.tolerances()?;
    let mut table = Table::new(&["k", "qn_closed", "qn_recurrence", "rel_err"]);
    let mut worst = 0.0f64;
    for k in 1..=n {
        let a = qn_at_zero(alpha, k);
        let b = qn_at_zero_recurrence(alpha, k)?;
        let rel = (a - b).abs() / b.abs();
        worst = worst.max(rel);
        table.push(vec![k.into(), a.into(), b.into(), rel.into()]);
    }
    let (tn, tn_ok) = if n <= 6 {
        let r = total_nonnegativity_smalln(alpha, n)?;
        let ok = r.all_nonnegative();
        let v = json!({
            "mode": "exhaustive",
            "factor": minors_json(&r.factor),
            "tilde": minors_json(&r.tilde),
            "t_n": minors_json(&r.t_n),
            "cube_error": r.cube_error,
        });
        (v, ok)
    } else {
        let r = total_nonnegativity_sampled(alpha, n, 10_000, 8, cfg.seed())?;
        let ok = r.nonnegative();
        (json!({ "mode": "sampled", "tilde": minors_json(&r) }), ok)
    };
    let equivariance = scaling_equivariance(alpha, n.min(60))?;
    let mut sink = Sink::new(cfg, "toeplitz");
    sink.record("alpha", alpha);
    sink.report(
        ".toeplitz.json",
        &json!({
            "alpha": alpha,
            "n": n,
            "qn_max_rel_err": worst,
            "total_nonnegativity": tn,
            "scaling_equivariance": equivariance,
        }),
    )?;
    sink.table(&table)?;
    sink.finish()?;
    if worst > tol.qn_zero {
        return Err(CliError::Numeric(format!("Q_n(0) relative error {worst:e} exceeds {:e}", tol.qn_zero)));
    }
    if !tn_ok {
        return Err(CliError::Numeric("negative minor found in the total nonnegativity check".into()));
    }
    Ok(())
}

fn outcome_json(o: &CheckOutcome) -> Value {
    json!({
        "id": o.id,
        "name": o.name,
        "passed": o.passed(),
        "metrics": o.metrics.iter().map(|m| json!({
            "name": m.name,
            "achieved": finite_or_null(m.achieved),
            "required": m.required,
            "passed": m.passed,
        })).collect::<Vec<_>>(),
        "notes": o.notes.iter().map(|(k, v)| json!({ "name": k, "value": finite_or_null(*v) })).collect::<Vec<_>>(),
        "error": o.error,
    })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<()> {
    let ids = match &cfg.only {
        Some(s) => select_checks(s).map_err(|e| CliError::Validation(format!("--only {s:?}: {e}")))?,
        None => (1..=13).collect(),
    };
    let vc = VerifyConfig { tol: cfg.tolerances()?, seed: cfg.seed() };
    let outcomes = run_checks(&ids, &vc);
    for o in &outcomes {
        println!("{}", o.summary_line());
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.id).collect();
    if cfg.out.is_some() {
        let mut sink = Sink::new(cfg, "verify");
        sink.json(&json!({
            "checks": outcomes.iter().map(outcome_json).collect::<Vec<_>>(),
            "all_passed": failed.is_empty(),
        }))?;
        sink.finish()?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numeric(format!("checks failed: {failed:?}")))
    }
}
