//! Verification engine: evaluates both sides of registered identities, sweeps
//! seeds, cross-checks the G-ratio fractions and runs Bauer-Muir chain checks.

mod config;
mod report;

use std::time::Instant;

use rayon::prelude::*;

use crate::bauermuir::{approximant_check, bm_chain, chain_preset, thm41_admissible, PresetFamily};
use crate::catalog::{self, EvalOptions, Side, SideValue};
use crate::cfengine::{evaluate, CfFlag};
use crate::error::{QcfError, Result};
use crate::qseries::{rel_diff, ParameterPoint, Precision, Sym};

pub use config::{Budget, Config};
pub use report::{BmReport, CrosscheckReport, Flag, StepCheck, SweepReport, VerificationReport, REPORT_SCHEMA_VERSION};

/// Budget multiplier for identities whose right side is a modified limit.
const MODIFIED_BUDGET_FACTOR: usize = 25;

/// Tolerance handed to the series and fraction evaluators: four digits below
/// the verification tolerance, but no tighter than the working precision allows.
pub fn internal_tol(tol: f64, prec: Precision) -> f64 {
    (tol * 1e-4).max(prec.structural_tol())
}

fn check_wall(start: Instant, budget: &Budget, what: &str) -> Result<()> {
    if start.elapsed() > budget.wall {
        return Err(QcfError::BudgetExhausted(format!(
            "{what} exceeded {:.1} s",
            budget.wall.as_secs_f64()
        )));
    }
    Ok(())
}

fn side_flags(v: &SideValue, flags: &mut Vec<Flag>) {
    for f in &v.flags {
        let g = match f {
            CfFlag::Terminated => Flag::TerminatedCf,
            CfFlag::Diverged => Flag::Diverged,
            _ => continue,
        };
        if !flags.contains(&g) {
            flags.push(g);
        }
    }
}

fn eval_side(side: &Side, p: &ParameterPoint, tol: f64, budget: &Budget) -> Result<SideValue> {
    let opts = EvalOptions {
        tol,
        max_terms: budget.max_terms,
    };
    let quotients = match side {
        Side::ModifiedCf { .. } => budget.max_quotients * MODIFIED_BUDGET_FACTOR,
        _ => budget.max_quotients,
    };
    side.value(p, &opts, tol, quotients)
}

/// Evaluates both sides of `id` at `point`. Points outside the identity's
/// domain are flagged, never passed.
pub fn verify(id: &str, point: &ParameterPoint, tol: f64, budget: &Budget) -> Result<VerificationReport> {
    let rec = catalog::get(id)?;
    let start = Instant::now();
    let prec = point.precision();
    let itol = internal_tol(tol, prec);
    let mut report = VerificationReport::new(id, point, tol);
    let in_domain = rec.in_domain(point, prec.exclusion_radius());
    if !matches!(in_domain, Ok(true)) {
        report.flags.push(Flag::DomainViolation);
    }
    if let Err(e) = &in_domain {
        report.error = Some(e.to_string());
        return Ok(report);
    }
    let lhs = eval_side(&rec.lhs, point, itol, budget);
    check_wall(start, budget, id)?;
    let rhs = eval_side(&rec.rhs, point, itol, budget);
    check_wall(start, budget, id)?;
    for side in [&lhs, &rhs] {
        match side {
            Ok(v) => {
                report.n_terms += v.terms;
                report.n_quotients += v.quotients;
                side_flags(v, &mut report.flags);
            }
            Err(QcfError::Domain(m)) => {
                if !report.flags.contains(&Flag::DomainViolation) {
                    report.flags.push(Flag::DomainViolation);
                }
                report.error.get_or_insert_with(|| format!("domain error: {m}"));
            }
            Err(e) => {
                report.error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    report.lhs = lhs.ok().and_then(|v| v.value);
    report.rhs = rhs.ok().and_then(|v| v.value);
    if let (Some(l), Some(r)) = (&report.lhs, &report.rhs) {
        report.abs_diff = Some((l - r).abs_f64());
        report.rel_diff = Some(rel_diff(l, r));
    }
    report.finish();
    Ok(report)
}

/// Verifies the identity at the sampled point of one seed.
pub fn verify_seed(id: &str, seed: u64, tol: f64, prec: Precision, budget: &Budget) -> Result<VerificationReport> {
    let point = catalog::sample_point_with(id, seed, prec)?;
    let mut r = verify(id, &point, tol, budget)?;
    r.seed = Some(seed);
    Ok(r)
}

/// One report per seed `1..=n_seeds`, computed in parallel and sorted by seed.
pub fn sweep(id: &str, n_seeds: u64, tol: f64, prec: Precision, budget: &Budget) -> Result<SweepReport> {
    catalog::get(id)?;
    let start = Instant::now();
    let results: Vec<Result<VerificationReport>> = (1..=n_seeds)
        .into_par_iter()
        .map(|seed| verify_seed(id, seed, tol, prec, budget))
        .collect();
    let mut reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    reports.sort_by_key(|r| r.seed);
    Ok(SweepReport::aggregate(id, tol, prec, reports, start.elapsed()))
}

/// [`sweep`] over every registered identity, in registry order.
pub fn sweep_all(n_seeds: u64, tol: f64, prec: Precision, budget: &Budget) -> Result<Vec<SweepReport>> {
    catalog::records()
        .iter()
        .map(|r| sweep(r.id, n_seeds, tol, prec, budget))
        .collect()
}

fn family(name: &str) -> Result<PresetFamily> {
    match name {
        "f1" | "gcf1" | "cor1cf" => Ok(PresetFamily::F1),
        "f2" | "gcf3" => Ok(PresetFamily::F2),
        "f3" | "gcf4" => Ok(PresetFamily::F3),
        "f4" | "gcf2" => Ok(PresetFamily::F4),
        other => Err(QcfError::UnknownIdentity(other.to_string())),
    }
}

/// Convergence requirement beyond the shared exclusions: `|b| < 1` for f3 and
/// `|aq| < 1` for f4.
fn family_domain(f: PresetFamily, p: &ParameterPoint, margin: f64) -> Result<bool> {
    let base = thm41_admissible(p, margin)?;
    Ok(base
        && match f {
            PresetFamily::F3 => p.get(Sym::B)?.abs_f64() < 1.0 - margin,
            PresetFamily::F4 => (p.get(Sym::A)? * p.get(Sym::Q)?).abs_f64() < 1.0 - margin,
            _ => true,
        })
}

/// Evaluates the listed G-ratio fractions (`f1`..`f4`) at one point and
/// reports the largest pairwise deviation.
pub fn crosscheck_equal_cfs(
    ids: &[&str],
    point: &ParameterPoint,
    tol: f64,
    budget: &Budget,
) -> Result<CrosscheckReport> {
    let prec = point.precision();
    let itol = internal_tol(tol, prec);
    let mut report = CrosscheckReport::new(ids, point, tol);
    let mut values = Vec::with_capacity(ids.len());
    for id in ids {
        let f = family(id)?;
        if !family_domain(f, point, prec.exclusion_radius()).unwrap_or(false) {
            report.push_flag(Flag::DomainViolation);
        }
        let r = evaluate(&f.build(point)?, itol, budget.max_quotients)?;
        report.n_quotients.push(r.n_used);
        if r.value.is_none() {
            report.push_flag(Flag::Diverged);
        }
        values.push(r.value);
    }
    for (i, x) in values.iter().enumerate() {
        for y in &values[i + 1..] {
            if let (Some(x), Some(y)) = (x, y) {
                report.max_deviation = report.max_deviation.max(rel_diff(x, y));
            }
        }
    }
    report.values = values;
    report.finish();
    Ok(report)
}

/// Extra digits so that `lambda_n`, which can shrink like `|q|^n` while being
/// computed from terms of size one, stays resolvable up to index `n_max`.
fn guard_digits(p: &ParameterPoint, n_max: usize) -> Result<u32> {
    let mq = p.q()?.abs_f64();
    if mq == 0.0 {
        return Ok(0);
    }
    Ok(((n_max as f64) * -mq.log10()).ceil().clamp(0.0, 1000.0) as u32)
}

/// Runs `steps` Bauer-Muir steps of a chain preset, checks every step's
/// transform against `S_n(w_n)` for `n <= check_n`, and compares the frozen
/// prefix with the target fraction's coefficients.
///
/// Admissible points are evaluated with [`guard_digits`] added to their
/// precision. Inadmissible ones run at their own precision, so an excluded
/// `lambda` surfaces as a degenerate step.
pub fn bm_verify(preset: &str, point: &ParameterPoint, steps: usize, check_n: usize, tol: f64) -> Result<BmReport> {
    let pr = chain_preset(preset)?;
    let mut report = BmReport::new(preset, point, steps, check_n, tol);
    let prec = point.precision();
    let work = if thm41_admissible(point, prec.exclusion_radius())? {
        let extra = guard_digits(point, steps + check_n + 2)?;
        point.with_precision(Precision::digits(prec.get() + extra))
    } else {
        report.flags.push(Flag::DomainViolation);
        point.clone()
    };
    report.working_precision = work.precision();
    let point = &work;
    let src = pr.source.build(point)?;
    let target = pr.target.build(point)?;
    let chain = bm_chain(&src, pr.w_family(point)?, steps, pr.head)?;
    for (i, bm) in chain.steps.iter().enumerate() {
        let c = approximant_check(bm, check_n, tol).map_err(|e| e.at_step(i))?;
        report.approximant.push(StepCheck {
            step: i,
            max_deviation: c.max_deviation,
            pass: c.pass,
        });
    }
    let mut worst = if steps > 0 {
        rel_diff(&chain.frozen_b[0], &target.b0)
    } else {
        0.0
    };
    for (j, b) in chain.frozen_b.iter().enumerate().skip(1) {
        worst = worst.max(rel_diff(b, &target.b(j)?));
    }
    for (j, a) in chain.frozen_a.iter().enumerate() {
        worst = worst.max(rel_diff(a, &target.a(j + 1)?));
    }
    report.prefix_deviation = worst;
    report.finish();
    Ok(report)
}

#[cfg(test)]
mod tests;
