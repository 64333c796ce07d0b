//! The GLS norm `sup_p |f|_p / ψ(p)`, the fundamental function, and the
//! trend tests for the closure `G⁰(ψ)` and for `ψ/θ → 0`.

use crate::error::{GlsError, Result};
use crate::norms::{lp, Variant};
use crate::numeric::golden;
use crate::psi::{PsiFunction, Support};
use crate::source::Source;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlsConfig {
    /// Upper probing limit when the support is unbounded.
    pub p_max: f64,
    /// Points of the coarse grid.
    pub coarse: usize,
    /// Inset depth of the coarse grid.
    pub start_depth: u32,
    pub max_depth: u32,
    /// Relative increase that keeps inset-deepening going.
    pub increase_threshold: f64,
    /// Consecutive non-shrinking increases that mean "unbounded".
    pub unbounded_run: usize,
    /// Additional exponents to probe (ignored when outside the support).
    pub extra_probes: Vec<f64>,
}

impl Default for GlsConfig {
    fn default() -> Self {
        GlsConfig {
            p_max: 50.0,
            coarse: 64,
            start_depth: 2,
            max_depth: 40,
            increase_threshold: 1e-3,
            unbounded_run: 5,
            extra_probes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Finite,
    Unbounded,
}

/// Where the maximizer sits relative to the probed interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArgmaxSite {
    Interior,
    /// At the deepest lower inset: the sup is approached as `p → A⁺`.
    LowerEnd,
    /// At the deepest upper inset, or at `p_max` for unbounded supports.
    UpperEnd,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    /// Largest probed ratio (a lower bound when the verdict is unbounded).
    pub value: f64,
    pub argmax_p: f64,
    pub argmax_site: ArgmaxSite,
    pub verdict: Verdict,
    pub inset_depth: u32,
    /// Relative change over the last two refinement rounds.
    pub stability: f64,
    /// Relative quadrature/truncation error of `|f|_p` at the maximizer.
    pub errors: Vec<f64>,
    pub evaluations: usize,
}

struct Probe<'a> {
    source: &'a Source,
    psi: &'a PsiFunction,
    variant: Variant,
    best: (f64, f64, f64),
    evaluations: usize,
}

impl Probe<'_> {
    fn ratio(&mut self, p: f64) -> Result<f64> {
        let n = lp(self.source, p, self.variant)?;
        let r = n.value / self.psi.eval(p)?;
        self.evaluations += 1;
        if r > self.best.1 || self.best.1.is_nan() {
            self.best = (p, r, n.error / n.value.max(f64::MIN_POSITIVE));
        }
        Ok(r)
    }
}

/// Probing interval at inset depth `k`.
pub fn inset_interval(support: Support, p_max: f64, k: u32) -> Result<(f64, f64)> {
    match support {
        Support::Point(r) => Ok((r, r)),
        Support::Open { lo, hi } => {
            let scale = 0.25 * 0.5f64.powi(k as i32);
            if hi.is_finite() {
                let e = scale * (hi - lo);
                Ok((lo + e, hi - e))
            } else {
                if !(p_max > lo) {
                    return Err(GlsError::invalid(format!("p_max = {p_max} must exceed the lower end {lo}")));
                }
                Ok((lo + scale * (p_max - lo), p_max))
            }
        }
    }
}

/// Grid clustered geometrically toward both ends of `[a, b]` (toward `a` only when `upper_fixed`).
fn clustered_grid(lo: f64, hi: f64, a: f64, b: f64, n: usize, upper_fixed: bool) -> Vec<f64> {
    let mut g = Vec::with_capacity(n + 2);
    if upper_fixed {
        for d in golden::log_grid(a - lo, b - lo, n) {
            g.push(lo + d);
        }
    } else {
        let mid = 0.5 * (a + b);
        let half = n / 2;
        for d in golden::log_grid(a - lo, mid - lo, half.max(2)) {
            g.push(lo + d);
        }
        for d in golden::log_grid(hi - b, hi - mid, (n - half).max(2)) {
            g.push(hi - d);
        }
    }
    g.retain(|p| *p >= a && *p <= b);
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

/// `‖source‖_{G(ψ)} = sup_{p ∈ supp ψ} |source|_p / ψ(p)`.
pub fn gls_norm(source: &Source, psi: &PsiFunction, variant: Variant, cfg: &GlsConfig) -> Result<NormReport> {
    let base = source.base();
    if let Support::Point(r) = psi.support() {
        let n = lp(&base, r, variant)?;
        return Ok(NormReport {
            value: source.apply_abs_amplitude(n.value),
            argmax_p: r,
            argmax_site: ArgmaxSite::Exact,
            verdict: Verdict::Finite,
            inset_depth: 0,
            stability: 0.0,
            errors: vec![n.error / n.value.max(f64::MIN_POSITIVE)],
            evaluations: 1,
        });
    }
    let Support::Open { lo, hi } = psi.support() else { unreachable!() };
    let upper_fixed = !hi.is_finite();
    let mut probe = Probe { source: &base, psi, variant, best: (f64::NAN, f64::NAN, 0.0), evaluations: 0 };

    let (a0, b0) = inset_interval(psi.support(), cfg.p_max, cfg.start_depth)?;
    let grid = clustered_grid(lo, hi, a0, b0, cfg.coarse.max(4), upper_fixed);
    let mut vals = Vec::with_capacity(grid.len());
    for &p in &grid {
        vals.push(probe.ratio(p)?);
    }
    for &p in &cfg.extra_probes {
        if p > lo && p < hi && (!upper_fixed || p <= cfg.p_max) {
            probe.ratio(p)?;
        }
    }
    // Golden refinement around the best coarse point.
    let i = (0..vals.len()).max_by(|&x, &y| vals[x].total_cmp(&vals[y])).unwrap_or(0);
    if i > 0 && i + 1 < grid.len() {
        let (ga, gb) = (grid[i - 1], grid[i + 1]);
        let mut err = None;
        golden::maximize(
            |p| match probe.ratio(p) {
                Ok(v) => v,
                Err(e) => {
                    err.get_or_insert(e);
                    f64::NEG_INFINITY
                }
            },
            ga,
            gb,
            1e-10,
            80,
        );
        if let Some(e) = err {
            return Err(e);
        }
    }

    // Inset deepening toward open endpoints.
    let mut depth = cfg.start_depth;
    let mut prev = probe.best.1;
    let mut stability = 0.0;
    let mut increments: Vec<f64> = Vec::new();
    let mut verdict = Verdict::Finite;
    let (mut a_prev, mut b_prev) = (a0, b0);
    while depth < cfg.max_depth {
        depth += 1;
        let (a, b) = inset_interval(psi.support(), cfg.p_max, depth)?;
        // New lower strip (a, a_prev) and upper strip (b_prev, b), probed at the
        // new end and its geometric midpoint.
        for p in [a, lo + ((a - lo) * (a_prev - lo)).sqrt()] {
            probe.ratio(p)?;
        }
        if !upper_fixed {
            for p in [b, hi - ((hi - b) * (hi - b_prev)).sqrt()] {
                probe.ratio(p)?;
            }
        }
        a_prev = a;
        b_prev = b;
        let cur = probe.best.1;
        let rel = if prev > 0.0 {
            (cur - prev) / prev
        } else if cur > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        stability = rel.abs();
        if !cur.is_finite() {
            verdict = Verdict::Unbounded;
            break;
        }
        if rel <= cfg.increase_threshold {
            if depth > cfg.start_depth + 1 {
                break;
            }
            prev = cur;
            continue;
        }
        increments.push(cur - prev);
        prev = cur;
        let n = increments.len();
        if n >= cfg.unbounded_run {
            let run = &increments[n - cfg.unbounded_run..];
            if run.windows(2).all(|w| w[1] >= 0.9 * w[0]) {
                verdict = Verdict::Unbounded;
                break;
            }
        }
    }
    let (p_star, r_star, err_star) = probe.best;
    let (a_last, b_last) = (a_prev, b_prev);
    let site = if p_star <= a_last {
        ArgmaxSite::LowerEnd
    } else if p_star >= b_last {
        ArgmaxSite::UpperEnd
    } else {
        ArgmaxSite::Interior
    };
    Ok(NormReport {
        value: source.apply_abs_amplitude(r_star),
        argmax_p: p_star,
        argmax_site: site,
        verdict,
        inset_depth: depth,
        stability,
        errors: vec![err_star],
        evaluations: probe.evaluations,
    })
}

/// Probe set for the fundamental function: a fixed grid at inset depth 20 plus its ends.
fn fundamental_probes(support: Support, p_max: f64) -> Result<Vec<f64>> {
    let Support::Open { lo, hi } = support else { unreachable!() };
    let (a, b) = inset_interval(support, p_max, 20)?;
    let mut g = clustered_grid(lo, hi, a, b, 512, !hi.is_finite());
    g.push(a);
    g.push(b);
    g.sort_by(f64::total_cmp);
    g.dedup();
    Ok(g)
}

/// `φ(δ) = ‖1_A‖_{G(ψ)}` for `mes A = δ`: `sup_p δ^{1/p}/ψ(p)` on a fixed probe set,
/// so that `φ` is exactly non-decreasing in `δ`.
pub fn fundamental_function(psi: &PsiFunction, delta: f64, p_max: f64) -> Result<f64> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(GlsError::invalid(format!("delta must be positive, got {delta}")));
    }
    if let Support::Point(r) = psi.support() {
        return Ok(delta.powf(1.0 / r));
    }
    let mut best = 0.0f64;
    for p in fundamental_probes(psi.support(), p_max)? {
        best = best.max(delta.powf(1.0 / p) / psi.eval(p)?);
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendConfig {
    pub grid: Vec<f64>,
    /// Final value below `vanish * max` (with monotone decrease) means "tends to 0".
    pub vanish: f64,
    /// Minimum of the last three above `persist * max` means "bounded away from 0".
    pub persist: f64,
}

impl Default for TrendConfig {
    fn default() -> Self {
        TrendConfig { grid: vec![2.0, 4.0, 8.0, 16.0, 32.0, 50.0], vanish: 0.1, persist: 0.5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrendVerdict {
    Vanishes,
    DoesNotVanish,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    pub verdict: TrendVerdict,
    pub points: Vec<(f64, f64)>,
    pub diagnostic: Option<String>,
}

fn classify(points: Vec<(f64, f64)>, cfg: &TrendConfig) -> TrendReport {
    let max = points.iter().map(|x| x.1).fold(0.0f64, f64::max);
    if points.is_empty() {
        return TrendReport { verdict: TrendVerdict::Inconclusive, points, diagnostic: Some("empty grid".into()) };
    }
    if max == 0.0 {
        return TrendReport { verdict: TrendVerdict::Vanishes, points, diagnostic: None };
    }
    let monotone = points.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-12));
    let last = points.last().map_or(0.0, |x| x.1);
    let tail_min = points.iter().rev().take(3).map(|x| x.1).fold(f64::INFINITY, f64::min);
    let verdict = if monotone && last < cfg.vanish * max {
        TrendVerdict::Vanishes
    } else if tail_min > cfg.persist * max {
        TrendVerdict::DoesNotVanish
    } else {
        TrendVerdict::Inconclusive
    };
    TrendReport { verdict, points, diagnostic: None }
}

fn unbounded_above(psi: &PsiFunction) -> Result<()> {
    match psi.support() {
        Support::Open { hi, .. } if hi.is_infinite() => Ok(()),
        s => Err(GlsError::SupportMismatch(format!("{} has support {s}; the p -> inf test needs (A, inf)", psi.tag()))),
    }
}

/// Trend of `|source|_p / ψ(p)` as `p` grows: `Vanishes` supports membership in `G⁰(ψ)`.
pub fn g0_membership(source: &Source, psi: &PsiFunction, variant: Variant, cfg: &TrendConfig) -> Result<TrendReport> {
    unbounded_above(psi)?;
    let base = source.base();
    if source.is_zero() {
        return Ok(classify(cfg.grid.iter().map(|&p| (p, 0.0)).collect(), cfg));
    }
    let mut points = Vec::new();
    for &p in &cfg.grid {
        let r = lp(&base, p, variant).and_then(|n| Ok(n.value / psi.eval(p)?));
        match r {
            Ok(v) => points.push((p, v)),
            Err(e) => return Ok(TrendReport { verdict: TrendVerdict::Inconclusive, points, diagnostic: Some(format!("p = {p}: {e}")) }),
        }
    }
    Ok(classify(points, cfg))
}

/// Trend of `ψ(p)/θ(p)` as `p` grows.
pub fn psi_dominance(psi: &PsiFunction, theta: &PsiFunction, cfg: &TrendConfig) -> Result<TrendReport> {
    unbounded_above(psi)?;
    unbounded_above(theta)?;
    let mut points = Vec::new();
    for &p in &cfg.grid {
        points.push((p, psi.eval(p)? / theta.eval(p)?));
    }
    Ok(classify(points, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::{make_family_psi, natural_psi, PsiFamily};
    use crate::source::{Family, SampledFunction, TrigPolynomial};

    fn exp_psi(beta: f64) -> PsiFunction {
        make_family_psi(PsiFamily::Exponent { beta }).unwrap()
    }

    #[test]
    fn constant_with_linear_psi_approaches_one() {
        let one: Source = Family::Constant.into();
        let r = gls_norm(&one, &exp_psi(1.0), Variant::Plain, &GlsConfig::default()).unwrap();
        assert!(r.value > 0.998 && r.value < 1.0, "{}", r.value);
        assert_eq!(r.argmax_site, ArgmaxSite::LowerEnd);
        assert_eq!(r.verdict, Verdict::Finite);
    }

    #[test]
    fn degenerate_is_exact_lebesgue_norm() {
        let f: Source = Family::Trig(TrigPolynomial::cos(1)).into();
        let psi = make_family_psi(PsiFamily::Degenerate { r: 2.0 }).unwrap();
        let r = gls_norm(&f, &psi, Variant::Plain, &GlsConfig::default()).unwrap();
        assert_eq!(r.value, lp(&f, 2.0, Variant::Plain).unwrap().value);
    }

    #[test]
    fn natural_psi_gives_one() {
        let f: Source = SampledFunction::new(Family::LogPower { m: 1.0 }).into();
        let psi = natural_psi(&f, Variant::Plain, &[2.0, 4.0], None).unwrap();
        let r = gls_norm(&f, &psi, Variant::Plain, &GlsConfig::default()).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn unbounded_verdict_near_a_pole() {
        // ψ = (p-2)^2 on (2, 4): the ratio for f = 1 blows up at 2.
        let one: Source = Family::Constant.into();
        let psi = PsiFunction::custom("(p-2)^2", Support::Open { lo: 2.0, hi: 4.0 }, |p| (p - 2.0).powi(2));
        let r = gls_norm(&one, &psi, Variant::Plain, &GlsConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Unbounded);
    }

    #[test]
    fn fundamental_function_values() {
        let deg = make_family_psi(PsiFamily::Degenerate { r: 3.0 }).unwrap();
        assert_eq!(fundamental_function(&deg, 0.5, 50.0).unwrap(), 0.5f64.powf(1.0 / 3.0));
        let lin = exp_psi(1.0);
        let v = fundamental_function(&lin, 1.0, 50.0).unwrap();
        assert!(v < 1.0 && v > 0.9999, "{v}");
    }

    #[test]
    fn trend_verdicts() {
        let cfg = TrendConfig { grid: golden::log_grid(2.0, 1e6, 24), ..Default::default() };
        let p = exp_psi(1.0);
        assert_eq!(psi_dominance(&exp_psi(0.5), &p, &cfg).unwrap().verdict, TrendVerdict::Vanishes);
        assert_eq!(psi_dominance(&p, &p, &cfg).unwrap().verdict, TrendVerdict::DoesNotVanish);
        let plog = PsiFunction::custom("p log(1+p)", Support::Open { lo: 1.0, hi: f64::INFINITY }, |q| q * (1.0 + q).ln());
        assert_eq!(psi_dominance(&p, &plog, &cfg).unwrap().verdict, TrendVerdict::Vanishes);
    }

    #[test]
    fn g0_membership_examples() {
        let g1: Source = Family::LogPower { m: 1.0 }.into();
        let r = g0_membership(&g1, &exp_psi(1.0), Variant::Plain, &TrendConfig::default()).unwrap();
        assert_eq!(r.verdict, TrendVerdict::DoesNotVanish, "{:?}", r.points);
        let cos: Source = Family::Trig(TrigPolynomial::cos(1)).into();
        let cfg = TrendConfig { grid: golden::log_grid(2.0, 2048.0, 12), ..Default::default() };
        let r = g0_membership(&cos, &exp_psi(0.5), Variant::Plain, &cfg).unwrap();
        assert_eq!(r.verdict, TrendVerdict::Vanishes, "{:?}", r.points);
        let zero: Source = Source::from(Family::Constant).scale(0.0);
        let r = g0_membership(&zero, &exp_psi(1.0), Variant::Plain, &TrendConfig::default()).unwrap();
        assert_eq!(r.verdict, TrendVerdict::Vanishes);
    }
}
