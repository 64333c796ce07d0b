//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when a
//! criterion fails, except for those listed in `KNOWN_FAILURES`, which are still
//! printed as FAIL with their measured values.

use glspace_core::corpus::trig_corpus;
use glspace_core::duality::{biconjugate_deviation, ln_n_from_psi, norm_from_tail, ConvexProfile, TailProfile};
use glspace_core::gls::{gls_norm, GlsConfig};
use glspace_core::norms::{lp, lp_continuous, Variant};
use glspace_core::numeric::golden;
use glspace_core::operators::checks::{bound_check, CheckConfig, CheckKind, CheckRecord};
use glspace_core::operators::fourier::fourier_line_lp;
use glspace_core::operators::hilbert::hilbert_trig;
use glspace_core::operators::leindler::{leindler_ratio, t_critical, t_witness, u_critical, u_witness};
use glspace_core::operators::{fourier_line, Which};
use glspace_core::psi::parse_psi;
use glspace_core::sharpness::{asymptotic_check, exp_grid, hilbert_attainment, weighted_tail_gap, AsymptoticTag};
use glspace_core::source::{Coeffs, Family, SampledFunction, Source, TrigPolynomial, Weight, WeightedSequence};
use glspace_core::suite::{emit_report, run_suite, Format, SuiteConfig, SuiteName};
use glspace_core::Result;
use std::f64::consts::{E, PI};
use std::process::ExitCode;

/// The ratio `ln ln N(u) / ln u` tends to `m` only like `m - ln(m e)/ln u`,
/// which is still 10 to 13 percent off at `u = e^8`.
const KNOWN_FAILURES: [&str; 1] = ["AC7b"];

const HILBERT_TOL: f64 = 1e-6;
const HILBERT_L2_TOL: f64 = 1e-10;
const HILBERT_ATTAINMENT: f64 = 0.75;
const GLS_TOL: f64 = 1e-5;
const LEINDLER_N: u64 = 100_000;
const LEINDLER_ATTAINMENT: f64 = 0.8;
const TAIL_ROUND_TRIP: f64 = 0.01;
const ZETA_BAND: (f64, f64) = (0.5, 2.0);
const GM_BAND: f64 = 10.0;
const BICONJUGATE_TOL: f64 = 1e-6;
const LOGLOG_TOL: f64 = 0.05;
const HY_NORM_TOL: f64 = 1e-6;
const HY_LOG_BAND: (f64, f64) = (0.9, 1.1);
const PARSEVAL_TOL: f64 = 1e-8;
const GAP_BAND: f64 = 0.15;

/// `-2 Ci(1e-4)`, the transform of `|x|^{-1} 1{|x| ≥ 1}` at `t = 1e-4` (mpmath, 30 digits).
const INV_ABS_TAIL_F: f64 = 17.2662494191493;
/// `|F[e^{-x²/2}]|_2 = (2π √π)^{1/2}` (mpmath).
const GAUSSIAN_F_L2: f64 = 3.337162865918206;

type Criterion = (&'static str, &'static str, fn() -> Result<Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn records_summary(records: &[CheckRecord]) -> (bool, String) {
    let worst = records.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    let failed = records.iter().filter(|r| !r.pass).count();
    (
        records.iter().all(|r| r.pass) && !records.is_empty(),
        format!("{} records, {failed} failing, worst lhs/rhs {worst:.6}", records.len()),
    )
}

fn trig_lp(t: &TrigPolynomial, p: f64) -> Result<f64> {
    Ok(lp_continuous(&SampledFunction::new(Family::Trig(t.clone())), p, false)?.value)
}

fn ac1a() -> Result<Outcome> {
    let cfg = CheckConfig { tol: HILBERT_TOL, ..CheckConfig::default() };
    let (pass, s) = records_summary(&bound_check(CheckKind::Pichorides, "trig-20", &cfg)?);
    outcome(pass, format!("|H f|_p <= K_H(p)|f|_p on trig-20, p in {{1.25,1.5,2,3,4,8}}: {s}"))
}

fn ac1b() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for t in trig_corpus("trig-20")? {
        let r = trig_lp(&hilbert_trig(&t), 2.0)? / trig_lp(&t.mean_zero(), 2.0)?;
        worst = worst.max((r - 1.0).abs());
    }
    outcome(worst <= HILBERT_L2_TOL, format!("max |ratio - 1| at p = 2 on mean-zero parts: {worst:.2e}"))
}

fn ac1c() -> Result<Outcome> {
    let r = hilbert_attainment(8, 50.0)?;
    outcome(
        r >= HILBERT_ATTAINMENT,
        format!("|H g|_50 / (K_H(50)|g|_50) for the Delta = 8 sine family: {r:.5} (threshold {HILBERT_ATTAINMENT})"),
    )
}

fn ac2() -> Result<Outcome> {
    let cfg = CheckConfig { tol: GLS_TOL, ..CheckConfig::default() };
    let (pass, s) = records_summary(&bound_check(CheckKind::HilbertGls, "trig-20", &cfg)?);
    outcome(pass, format!("GLS norm of H f against the transformed psi, {}: {s}", cfg.psis.join(" and ")))
}

fn ac3() -> Result<Outcome> {
    let cfg = CheckConfig { leindler_n: LEINDLER_N, ..CheckConfig::default() };
    let (bound_ok, s) = records_summary(&bound_check(CheckKind::Leindler, "leindler", &cfg)?);
    let (sv, theta) = (2.0, 1.0);
    let p = 0.98 * t_critical(sv, theta);
    let t = leindler_ratio(&t_witness(sv, theta, LEINDLER_N)?, Which::T, p)?;
    let pu = 0.98 * u_critical(sv, theta);
    let u = leindler_ratio(&u_witness(sv, theta, LEINDLER_N)?, Which::U, pu)?;
    outcome(
        bound_ok && t >= LEINDLER_ATTAINMENT,
        format!("T and U bounds, N = {LEINDLER_N}: {s}; T ratio at p = {p:.2}: {t:.4} (threshold {LEINDLER_ATTAINMENT}); U ratio at p = {pu:.2}: {u:.4}"),
    )
}

fn ac4() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for l in [1.0, 2.0] {
        for q in [0.0, 1.0] {
            let s: Source = WeightedSequence::new(Coeffs::PowerLog { decay: 1.0 / l, log_power: q }, Weight::Unit, None)?.into();
            let profile = TailProfile::from_source(&s)?;
            for p in [l + 0.5, l + 1.0, l + 2.0] {
                let direct = lp(&s, p, Variant::Plain)?.value;
                worst = worst.max((norm_from_tail(&profile, p)? / direct - 1.0).abs());
            }
        }
    }
    outcome(worst < TAIL_ROUND_TRIP, format!("max relative gap, tail integral vs direct sum: {worst:.2e}"))
}

fn ac5() -> Result<Outcome> {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for l in [1.0, 2.0, 4.0] {
        let grid: Vec<f64> = (1..=8).map(|k| l + 0.25 * k as f64).collect();
        for r in asymptotic_check(AsymptoticTag::ZetaL, &[l], &grid)?.ratios {
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    outcome(lo >= ZETA_BAND.0 && hi <= ZETA_BAND.1, format!("normalized zeta ratios lie in [{lo:.4}, {hi:.4}]"))
}

fn ac6() -> Result<Outcome> {
    let grid = golden::lin_grid(2.0, 50.0, 25);
    let mut bands = Vec::new();
    for m in [1.0, 2.0] {
        bands.push(asymptotic_check(AsymptoticTag::GmBand, &[m], &grid)?.band);
    }
    let worst = bands.iter().copied().fold(0.0, f64::max);
    outcome(worst < GM_BAND, format!("max/min of |g_m|_p / p^(1/m) over p in [2, 50]: m=1 {:.3}, m=2 {:.3}", bands[0], bands[1]))
}

fn ac7a() -> Result<Outcome> {
    let zs = golden::log_grid(2.5, 150.0, 17);
    let profiles = [ConvexProfile::new("z^2/2", |z| 0.5 * z * z), ConvexProfile::new("z ln z - z", |z| z * z.ln() - z)];
    let devs: Vec<f64> = profiles.iter().map(|w| biconjugate_deviation(w, &zs, 512)).collect();
    outcome(devs.iter().all(|d| *d < BICONJUGATE_TOL), format!("biconjugate deviation: {:.2e} and {:.2e}", devs[0], devs[1]))
}

fn ac7b() -> Result<Outcome> {
    let ln_u: f64 = 8.0;
    let mut pass = true;
    let mut parts = Vec::new();
    for m in [1.0f64, 2.0] {
        let psi = parse_psi(&format!("exp:{}", 1.0 / m))?;
        let lnln = |x: f64| -> Result<f64> { Ok(ln_n_from_psi(&psi, x.exp())?.ln_n.ln()) };
        let c = ln_n_from_psi(&psi, ln_u.exp())?;
        let closed = (m * ln_u).exp() / (m * E);
        let ratio = c.ln_n.ln() / ln_u;
        let dev = (ratio / m - 1.0).abs();
        let h = 0.25;
        let slope = (lnln(ln_u + h)? - lnln(ln_u - h)?) / (2.0 * h);
        pass &= dev < LOGLOG_TOL;
        parts.push(format!(
            "m={m}: ln N = {:.6e} (closed form {closed:.6e}), ln ln N / ln u = {ratio:.4}, deviation {:.1}%, local slope {slope:.4}",
            c.ln_n,
            100.0 * dev
        ));
    }
    outcome(pass, parts.join("; "))
}

fn ac8() -> Result<Outcome> {
    let f = SampledFunction::new(Family::InvAbsTail);
    let mut norm_dev: f64 = 0.0;
    for q in [1.25, 1.5, 1.75] {
        let v = lp_continuous(&f, q, false)?.value.powf(q);
        norm_dev = norm_dev.max((v / (2.0 / (q - 1.0)) - 1.0).abs());
    }
    let t: f64 = 1e-4;
    let ft = fourier_line(&f, t)?.re;
    let log_ratio = ft / (2.0 * t.ln().abs());
    let oracle_dev = (ft / INV_ABS_TAIL_F - 1.0).abs();
    let g = SampledFunction::new(Family::Gaussian);
    let lhs = fourier_line_lp(&g, 2.0)?;
    let rhs = (2.0 * PI).sqrt() * lp_continuous(&g, 2.0, false)?.value;
    let parseval = (lhs / rhs - 1.0).abs();
    let frozen = (lhs / GAUSSIAN_F_L2 - 1.0).abs();
    outcome(
        norm_dev <= HY_NORM_TOL && (HY_LOG_BAND.0..=HY_LOG_BAND.1).contains(&log_ratio) && oracle_dev <= 1e-6 && parseval <= PARSEVAL_TOL && frozen <= PARSEVAL_TOL,
        format!(
            "|f|_q^q vs 2/(q-1): {norm_dev:.2e}; F(1e-4)/(2|ln t|) = {log_ratio:.4} (vs oracle {oracle_dev:.1e}); Parseval {parseval:.1e} (vs oracle {frozen:.1e})"
        ),
    )
}

fn ac9() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for delta in [0.0, 1.0] {
        let e = weighted_tail_gap(3.0, delta, &exp_grid(2.0, 10.0, 33))?.exponent;
        pass &= e.is_some_and(|e| (e - 1.0).abs() <= GAP_BAND);
        parts.push(format!("Delta={delta}: {}", e.map_or("none".into(), |e| format!("{e:.4}"))));
    }
    outcome(pass, format!("gap exponent over ln u in [2, 10]: {}", parts.join(", ")))
}

fn ac10() -> Result<Outcome> {
    let corpus = trig_corpus("trig-20")?;
    let mut failures = Vec::new();
    let conj_ok = corpus.iter().all(|t| {
        let z = t.mean_zero();
        hilbert_trig(&hilbert_trig(&z)) == z.scale(-1.0)
    });
    if !conj_ok {
        failures.push("H∘H");
    }
    let proj_ok = corpus
        .iter()
        .all(|t| (0..=t.degree() + 2).all(|m| t.partial_sum(m).partial_sum(m) == t.partial_sum(m)) && t.partial_sum(t.degree()) == *t);
    if !proj_ok {
        failures.push("s_M");
    }
    let mut degenerate_ok = true;
    let mut homogeneity_ok = true;
    for t in corpus.iter().take(5) {
        let f = Source::Function(SampledFunction::new(Family::Trig(t.clone())));
        for r in [1.5, 3.0] {
            let g = gls_norm(&f, &parse_psi(&format!("degenerate:{r}"))?, Variant::Plain, &GlsConfig::default())?.value;
            degenerate_ok &= g == lp(&f, r, Variant::Plain)?.value;
        }
    }
    // Each source with a psi supported where its norms are finite.
    let sources: Vec<(Source, Variant, &str)> = vec![
        (Source::Function(SampledFunction::new(Family::Trig(corpus[0].clone()))), Variant::Plain, "exp:0.5"),
        (Source::Function(SampledFunction::new(Family::Gaussian)), Variant::Plain, "exp:0.5"),
        (Source::Function(SampledFunction::new(Family::Gaussian)), Variant::Nu, "power:2,60,1,1"),
        (
            WeightedSequence::new(Coeffs::PowerLog { decay: 0.5, log_power: 1.0 }, Weight::Unit, None)?.into(),
            Variant::Plain,
            "power:2,60,1,1",
        ),
        (WeightedSequence::new(Coeffs::PowerLog { decay: 1.0, log_power: 0.0 }, Weight::Unit, None)?.into(), Variant::Nu, "power:2,60,1,1"),
        (t_witness(2.0, 1.0, 1000)?.into(), Variant::Beta, "exp:0.5"),
    ];
    for (s, v, spec) in &sources {
        for lam in [-2.5, 0.125] {
            for p in [2.5, 4.0] {
                homogeneity_ok &= lp(&s.scale(lam), p, *v)?.value == lam.abs() * lp(s, p, *v)?.value;
            }
            let psi = parse_psi(spec)?;
            let cfg = GlsConfig::default();
            homogeneity_ok &= gls_norm(&s.scale(lam), &psi, *v, &cfg)?.value == lam.abs() * gls_norm(s, &psi, *v, &cfg)?.value;
        }
    }
    if !degenerate_ok {
        failures.push("degenerate psi");
    }
    if !homogeneity_ok {
        failures.push("homogeneity");
    }
    let cfg = SuiteConfig {
        checks: Some(["pichorides", "kaczmarz", "zeta_band", "degenerate_psi", "homogeneity"].map(String::from).to_vec()),
        ..SuiteConfig::new(SuiteName::All)
    };
    let one = emit_report(&run_suite(&SuiteConfig { threads: Some(1), ..cfg.clone() })?, Format::Json)?;
    let four = emit_report(&run_suite(&SuiteConfig { threads: Some(4), ..cfg.clone() })?, Format::Json)?;
    let again = emit_report(&run_suite(&SuiteConfig { threads: Some(4), ..cfg })?, Format::Json)?;
    if one != four || four != again {
        failures.push("determinism");
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "H∘H = -I, s_M projection, degenerate psi, homogeneity and report determinism all exact".into()
        } else {
            format!("broken: {}", failures.join(", "))
        },
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("AC1a", "Hilbert bound on the corpus", ac1a),
        ("AC1b", "Hilbert isometry at p = 2", ac1b),
        ("AC1c", "Hilbert constant attainment", ac1c),
        ("AC2", "GLS Hilbert bound", ac2),
        ("AC3", "Leindler bounds and attainment", ac3),
        ("AC4", "tail round trip", ac4),
        ("AC5", "zeta asymptotic band", ac5),
        ("AC6", "g_m band", ac6),
        ("AC7a", "biconjugation", ac7a),
        ("AC7b", "log log growth of N", ac7b),
        ("AC8", "Hausdorff-Young example", ac8),
        ("AC9", "weighted tail gap", ac9),
        ("AC10", "exact invariants", ac10),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = std::time::Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let known = KNOWN_FAILURES.contains(&id);
        let tag = match (pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("{id:<5} {tag:<12} {name}: {detail} [{:.1}s]", start.elapsed().as_secs_f64());
        if !pass && !known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all criteria pass except the known failures {KNOWN_FAILURES:?}");
        ExitCode::SUCCESS
    }
}
