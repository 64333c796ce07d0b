//! Builds the job list of a suite, runs it on a dedicated pool and merges the
//! records in job order, so the thread count never changes the report.

use super::config::{SuiteConfig, SuiteName};
use super::report::SuiteResult;
use crate::corpus::trig_corpus;
use crate::duality::{biconjugate_deviation, norm_from_tail, ConvexProfile, TailProfile};
use crate::error::{GlsError, Result};
use crate::gls::{gls_norm, GlsConfig};
use crate::norms::{lp, lp_continuous, Variant};
use crate::numeric::golden;
use crate::operators::checks::{bound_check, CheckConfig, CheckKind, CheckRecord, ALL_CHECKS};
use crate::operators::leindler::{leindler_ratio, t_critical, t_witness, Which};
use crate::psi::parse_psi;
use crate::sharpness::{asymptotic_check, exp_grid, hilbert_attainment, weighted_tail_gap, AsymptoticTag};
use crate::source::{Coeffs, Family, SampledFunction, Source, Weight, WeightedSequence};
use rayon::prelude::*;
use std::collections::BTreeMap;

const NORMS_JOBS: [&str; 4] = ["zeta_band", "gm_band", "degenerate_psi", "homogeneity"];
const DUALITY_JOBS: [&str; 2] = ["tail_round_trip", "biconjugate"];
const SHARPNESS_JOBS: [&str; 6] =
    ["hilbert_attainment", "leindler_attainment", "hilbert_ratio_bound", "tail_gap", "gm_hilbert_band", "gdelta_sin_log"];

/// Job names of a suite in execution order.
pub fn job_names(suite: SuiteName) -> Vec<&'static str> {
    match suite {
        SuiteName::Norms => NORMS_JOBS.to_vec(),
        SuiteName::Duality => DUALITY_JOBS.to_vec(),
        SuiteName::Operators => ALL_CHECKS.iter().map(|k| k.name()).collect(),
        SuiteName::Sharpness => SHARPNESS_JOBS.to_vec(),
        SuiteName::All => {
            [SuiteName::Norms, SuiteName::Duality, SuiteName::Operators, SuiteName::Sharpness].into_iter().flat_map(job_names).collect()
        }
    }
}

/// `p = 0` marks records without an exponent.
fn rec(id: String, p: f64, lhs: f64, rhs: f64, tol: f64) -> CheckRecord {
    CheckRecord::new(id, p, lhs, rhs, tol)
}

fn run_job(name: &str, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let tol = cfg.tol;
    let mut out = Vec::new();
    match name {
        "zeta_band" => {
            for l in [1.0, 2.0, 4.0] {
                let grid: Vec<f64> = (1..=8).map(|k| l + 0.25 * k as f64).collect();
                let r = asymptotic_check(AsymptoticTag::ZetaL, &[l], &grid)?;
                for (p, v) in grid.iter().zip(&r.ratios) {
                    out.push(rec(format!("zeta_band/L={l}/p={p}"), *p, v.max(1.0 / v), 2.0, 0.0));
                }
            }
        }
        "gm_band" => {
            let grid = golden::lin_grid(2.0, 50.0, 25);
            for m in [1.0, 2.0] {
                let r = asymptotic_check(AsymptoticTag::GmBand, &[m], &grid)?;
                out.push(rec(format!("gm_band/m={m}"), 50.0, r.band, 10.0, 0.0));
            }
        }
        "degenerate_psi" => {
            for (i, t) in trig_corpus(&cfg.corpus)?.iter().enumerate() {
                let f = Source::Function(SampledFunction::new(Family::Trig(t.clone())));
                for r in [1.5, 3.0] {
                    let g = gls_norm(&f, &parse_psi(&format!("degenerate:{r}"))?, Variant::Plain, &GlsConfig::default())?.value;
                    let direct = lp(&f, r, Variant::Plain)?.value;
                    out.push(rec(format!("degenerate_psi/{}[{i}]/r={r}", cfg.corpus), r, (g - direct).abs(), 0.0, 0.0));
                }
            }
        }
        "homogeneity" => {
            for (i, t) in trig_corpus(&cfg.corpus)?.iter().enumerate() {
                let f = SampledFunction::new(Family::Trig(t.clone()));
                for lam in [-2.5, 0.125] {
                    for p in [1.5, 4.0] {
                        let scaled = lp_continuous(&f.scale(lam), p, false)?.value;
                        let base = lam.abs() * lp_continuous(&f, p, false)?.value;
                        out.push(rec(format!("homogeneity/{}[{i}]/lambda={lam}/p={p}", cfg.corpus), p, (scaled - base).abs(), 0.0, 0.0));
                    }
                }
            }
        }
        "tail_round_trip" => {
            for l in [1.0, 2.0] {
                for q in [0.0, 1.0] {
                    let s: Source = WeightedSequence::new(Coeffs::PowerLog { decay: 1.0 / l, log_power: q }, Weight::Unit, None)?.into();
                    let profile = TailProfile::from_source(&s)?;
                    for p in [l + 0.5, l + 1.0, l + 2.0] {
                        let direct = lp(&s, p, Variant::Plain)?.value;
                        let via = norm_from_tail(&profile, p)?;
                        out.push(rec(format!("tail_round_trip/L={l}/q={q}/p={p}"), p, (via / direct - 1.0).abs(), 0.01, 0.0));
                    }
                }
            }
        }
        "biconjugate" => {
            let zs = golden::log_grid(2.5, 150.0, 17);
            let profiles = [ConvexProfile::new("z^2/2", |z| 0.5 * z * z), ConvexProfile::new("z ln z - z", |z| z * z.ln() - z)];
            for w in &profiles {
                out.push(rec(format!("biconjugate/{}", w.name), 0.0, biconjugate_deviation(w, &zs, 512), 1e-6, 0.0));
            }
        }
        "hilbert_attainment" => {
            let v = hilbert_attainment(8, 50.0)?;
            out.push(rec("hilbert_attainment/gdelta_sin(Delta=8)/p=50".into(), 50.0, 0.75, v, 0.0));
        }
        "leindler_attainment" => {
            let (s, theta) = (2.0, 1.0);
            let p = 0.98 * t_critical(s, theta);
            let x = t_witness(s, theta, cfg.budget.unwrap_or(100_000))?;
            out.push(rec(format!("leindler_attainment/{}/p={p}", x.label()), p, 0.8, leindler_ratio(&x, Which::T, p)?, 0.0));
        }
        "hilbert_ratio_bound" => {
            for delta in [1u32, 8] {
                for p in [1.5, 2.0, 4.0, 8.0, 16.0, 50.0] {
                    out.push(rec(format!("hilbert_ratio_bound/Delta={delta}/p={p}"), p, hilbert_attainment(delta, p)?, 1.0, tol));
                }
            }
        }
        "tail_gap" => {
            for delta in [0.0, 1.0] {
                let r = weighted_tail_gap(3.0, delta, &exp_grid(2.0, 10.0, 33))?;
                let e = r.exponent.ok_or_else(|| GlsError::invalid("tail gap needs at least two levels"))?;
                out.push(rec(format!("tail_gap/b=3/Delta={delta}"), 3.0, (e - 1.0).abs(), 0.15, 0.0));
            }
        }
        "gm_hilbert_band" => {
            let xs: Vec<f64> = (1..=12).map(|k| 10f64.powi(-k)).collect();
            let r = asymptotic_check(AsymptoticTag::GmHilbert, &[1.0], &xs)?;
            out.push(rec("gm_hilbert_band/m=1".into(), 0.0, r.band, 10.0, 0.0));
        }
        "gdelta_sin_log" => {
            let r = asymptotic_check(AsymptoticTag::GdeltaSinLog, &[1.0], &[1e-2, 1e-3, 1e-6, 1e-12])?;
            let first = (r.ratios[0] - 1.0).abs();
            out.push(rec("gdelta_sin_log/Delta=1".into(), 0.0, r.final_deviation, first, 0.0));
        }
        _ => {
            let kind = CheckKind::parse(name)?;
            let check = CheckConfig { tol, psis: cfg.psis.clone(), leindler_n: cfg.budget.unwrap_or(100_000), ..CheckConfig::default() };
            let corpus = if kind.uses_trig_corpus() { cfg.corpus.as_str() } else { kind.default_corpus() };
            out = bound_check(kind, corpus, &check)?;
        }
    }
    Ok(out)
}

fn metadata(cfg: &SuiteConfig) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("corpus".into(), cfg.corpus.clone());
    m.insert("tol".into(), format!("{:e}", cfg.tol));
    m.insert("psis".into(), cfg.psis.join(" "));
    m.insert("budget".into(), cfg.budget.map_or("default".into(), |b| b.to_string()));
    m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    m
}

/// Runs the configured suite. Specs are resolved before any computation;
/// the report is identical for identical configs whatever the thread count.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteResult> {
    cfg.validate()?;
    let jobs: Vec<&str> = match &cfg.checks {
        Some(list) => job_names(cfg.suite).into_iter().filter(|j| list.iter().any(|c| c == j)).collect(),
        None => job_names(cfg.suite),
    };
    let run = || -> Vec<Result<Vec<CheckRecord>>> { jobs.par_iter().map(|j| run_job(j, cfg)).collect() };
    let results = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| GlsError::invalid(format!("cannot build thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let mut records = Vec::new();
    for r in results {
        records.extend(r?);
    }
    let mut meta = metadata(cfg);
    meta.insert("checks".into(), jobs.join(" "));
    Ok(SuiteResult::from_records(cfg.suite.name(), records, meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::{emit_report, Format};

    #[test]
    fn empty_check_list_passes_with_warning() {
        let cfg = SuiteConfig { checks: Some(vec![]), ..SuiteConfig::new(SuiteName::Operators) };
        let r = run_suite(&cfg).unwrap();
        assert!(r.pass && r.records.is_empty() && !r.warnings.is_empty());
    }

    #[test]
    fn unknown_spec_rejected_before_running() {
        let cfg = SuiteConfig { psis: vec!["nope:1".into()], ..SuiteConfig::new(SuiteName::Operators) };
        assert!(run_suite(&cfg).is_err());
        let cfg = SuiteConfig { checks: Some(vec!["nope".into()]), ..SuiteConfig::new(SuiteName::Norms) };
        assert!(run_suite(&cfg).is_err());
        let cfg = SuiteConfig { tol: 0.0, ..SuiteConfig::new(SuiteName::Norms) };
        assert!(run_suite(&cfg).is_err());
    }

    #[test]
    fn report_independent_of_threads() {
        let base = SuiteConfig { checks: Some(vec!["pichorides".into(), "kaczmarz".into()]), ..SuiteConfig::new(SuiteName::Operators) };
        let one = run_suite(&SuiteConfig { threads: Some(1), ..base.clone() }).unwrap();
        let four = run_suite(&SuiteConfig { threads: Some(4), ..base }).unwrap();
        assert_eq!(emit_report(&one, Format::Json).unwrap(), emit_report(&four, Format::Json).unwrap());
        assert!(one.pass);
    }
}
