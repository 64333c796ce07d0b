//! Extremal families and the ratio functionals that show operator constants
//! are attained: pointwise evaluation, `V`/`W₀` sweeps, asymptotic checks and
//! the tail gap of the Tchebychev route.

use crate::error::{GlsError, Result};
use crate::gls::{gls_norm, GlsConfig};
use crate::norms::{lp, lp_continuous, lp_sequence, Variant};
use crate::numeric::golden;
use crate::numeric::PowerLog;
use crate::operators::hilbert::{hilbert_periodic, hilbert_periodic_at, HilbertConfig};
use crate::operators::leindler::{leindler_apply, leindler_ratio, Which};
use crate::operators::pichorides;
use crate::operators::weight::{gamma_blowup, gamma_norm, u_gamma, Lambda};
use crate::psi::{PsiFunction, PsiTransformKind};
use crate::source::gdelta::reduce;
use crate::source::registry::parse_source;
use crate::source::{Domain, Family, GDeltaKind, SampledFunction, SeqVariant, Source, TrigPolynomial, WeightedSequence};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};

/// Pointwise value of a registry source: `f(x)` for functions, `c(n)` for
/// sequences (with `x` rounded to the index `n ≥ 1`).
pub fn eval_extremal(spec: &str, x: f64) -> Result<f64> {
    match parse_source(spec)? {
        Source::Function(f) => {
            let singular = match f.domain() {
                Domain::Torus => f.singular_points().iter().any(|s| reduce(x - s) == 0.0),
                Domain::Line => f.singular_points().contains(&x),
            };
            if singular {
                return Err(GlsError::invalid(format!("x = {x} is a singular point of {}", f.name())));
            }
            Ok(f.eval(x))
        }
        Source::Sequence(c) => {
            if !(x >= 1.0) || x.fract() != 0.0 {
                return Err(GlsError::invalid(format!("sequence index must be an integer >= 1, got {x}")));
            }
            Ok(c.coeff(x as u64))
        }
    }
}

/// `X(k) = ⌊e^{e^k}⌋`, the block boundaries of the slowly growing examples.
/// Values past `k = 3` do not fit a machine integer and are refused.
pub fn block_boundary(k: u32) -> Result<u64> {
    if k > 3 {
        return Err(GlsError::Unsupported(format!("X({k}) = floor(exp(exp({k}))) exceeds the supported range")));
    }
    Ok((k as f64).exp().exp().floor() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioOperator {
    Hilbert,
    LeindlerT,
    LeindlerU,
    UGamma { gamma_milli: u32 },
    Paley,
}

impl RatioOperator {
    pub fn parse(s: &str) -> Result<Self> {
        let (name, arg) = s.split_once(':').unwrap_or((s, ""));
        Ok(match name {
            "hilbert" | "hilbert_periodic" => Self::Hilbert,
            "leindler_T" | "leindler_t" => Self::LeindlerT,
            "leindler_U" | "leindler_u" => Self::LeindlerU,
            "ugamma" | "u_gamma" => {
                let g: f64 = if arg.is_empty() { 0.5 } else { arg.parse().map_err(|_| GlsError::Spec(format!("bad gamma `{arg}`")))? };
                if !(g > 0.0 && g < 1.0) {
                    return Err(GlsError::Spec("gamma must lie in (0, 1)".into()));
                }
                Self::UGamma { gamma_milli: (g * 1000.0).round() as u32 }
            }
            "paley" => Self::Paley,
            _ => return Err(GlsError::Spec(format!("unknown operator `{s}` (hilbert, leindler_T, leindler_U, ugamma[:g], paley)"))),
        })
    }
}

/// `W₀(p) = |Op x|_p / (K(p) |x|_p)` with `K` the operator's bound at `p`:
/// `K_H(p)` for the conjugate function, `p` for the Leindler operators,
/// `γ^{-2}/(1/γ - p)` for the power weight, `2p` for the Paley inequality.
pub fn lower_bound_w(op: RatioOperator, source: &Source, p: f64) -> Result<f64> {
    match (op, source) {
        (RatioOperator::Hilbert, Source::Function(f)) => {
            let h = hilbert_periodic(f, &HilbertConfig::default())?;
            let num = lp_continuous(&h, p, false)?.value;
            Ok(num / (pichorides(p)? * lp_continuous(f, p, false)?.value))
        }
        (RatioOperator::LeindlerT, Source::Sequence(x)) => leindler_ratio(x, Which::T, p),
        (RatioOperator::LeindlerU, Source::Sequence(x)) => leindler_ratio(x, Which::U, p),
        (RatioOperator::UGamma { gamma_milli }, Source::Function(f)) => {
            let gamma = gamma_milli as f64 / 1000.0;
            let lambda = coefficient_lambda(f)?;
            let k = crate::operators::sharp_constant(crate::operators::SharpConstantKind::GammaWeight { gamma }, p)?.value;
            let lhs = lp_continuous(&u_gamma(f, gamma)?, p, false)?.value;
            Ok(lhs / (k * gamma_norm(&lambda, gamma, p)?))
        }
        (RatioOperator::Paley, Source::Function(f)) => {
            if p < 2.0 {
                return Err(GlsError::Inadmissible { p, detail: "the Paley inequality needs p >= 2".into() });
            }
            Ok(lp_continuous(f, p, false)?.value / (2.0 * p * paley_nu_norm(f, p)?))
        }
        _ => Err(GlsError::SupportMismatch(format!("{op:?} does not act on {}", source.name()))),
    }
}

/// `λ` of the cosine family or of a trigonometric polynomial.
fn coefficient_lambda(f: &SampledFunction) -> Result<Lambda> {
    let amp = f.amplitude();
    match f.family() {
        Family::GDelta { series, kind: GDeltaKind::Cos } if amp == 1.0 => {
            Ok(Lambda::PowerLog { decay: 1.0, log_power: series.delta() as f64 })
        }
        Family::Trig(t) => {
            let t = t.scale(amp);
            Ok(Lambda::Values(crate::operators::weight::interleave(t.cos_coeffs(), &t.sin_coeffs()[1..])))
        }
        _ => Err(GlsError::Unsupported(format!("no coefficient sequence for {}", f.name()))),
    }
}

/// `[Σ_k |c(k)|^p (|k|^{p-2} + 1)]^{1/p}` over `k ∈ ℤ`.
fn paley_nu_norm(f: &SampledFunction, p: f64) -> Result<f64> {
    let amp = f.apply_abs_amplitude(1.0);
    let s = match f.family() {
        Family::Trig(t) => {
            let (a, b) = (t.cos_coeffs(), t.sin_coeffs());
            let mut terms = vec![(0.5 * a[0].abs()).powf(p) * if p == 2.0 { 2.0 } else { 1.0 }];
            for k in 1..=t.degree() {
                let c = 0.5 * a[k].hypot(b[k]);
                terms.push(2.0 * c.powf(p) * ((k as f64).powf(p - 2.0) + 1.0));
            }
            crate::numeric::sum::pairwise(&terms)
        }
        Family::GDelta { series, .. } => {
            // |c(±n)| = (ln n)^Δ / (2n).
            let kappa = p * series.delta() as f64;
            let a = PowerLog::new(2.0, kappa).tail_sum(1)?.value;
            let b = PowerLog::new(p, kappa).tail_sum(1)?.value;
            2f64.powf(1.0 - p) * (a + b)
        }
        _ => return Err(GlsError::Unsupported(format!("no coefficient sequence for {}", f.name()))),
    };
    Ok(amp * s.powf(1.0 / p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsiChoice {
    /// `ψ(p) = |x|_p`, which makes `‖x‖_{G(ψ)} = 1`.
    Natural,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub functional: String,
    pub source: String,
    pub sweep: Vec<f64>,
    /// `None` where the family diverges at that sweep point.
    pub ratios: Vec<Option<f64>>,
    pub predicted_limit: f64,
    /// Largest ratio over the sweep divided by the predicted limit.
    pub attained: f64,
}

/// `V` for an operator on a family. With the natural ψ the GLS ratio is the
/// supremum of `W₀(p)` over the sweep; an explicit ψ gives the single ratio
/// `‖Op x‖_{G(Kψ)} / ‖x‖_{G(ψ)}` recorded at the left maximizer.
pub fn ratio_v(op: RatioOperator, source: &Source, choice: PsiChoice, psi: Option<&PsiFunction>, sweep: &[f64]) -> Result<RatioReport> {
    let (ratios, sweep) = match choice {
        PsiChoice::Natural => {
            if sweep.is_empty() {
                return Err(GlsError::invalid("empty sweep"));
            }
            // Warm the shared quadrature table before the parallel sweep.
            let _ = lower_bound_w(op, source, sweep[0]);
            let r: Vec<Result<Option<f64>>> = sweep
                .par_iter()
                .map(|&p| match lower_bound_w(op, source, p) {
                    Ok(v) => Ok(Some(v)),
                    Err(e) if e.is_divergent() => Ok(None),
                    Err(e) => Err(e),
                })
                .collect();
            (r.into_iter().collect::<Result<Vec<_>>>()?, sweep.to_vec())
        }
        PsiChoice::Explicit => {
            let psi = psi.ok_or_else(|| GlsError::invalid("an explicit psi is required"))?;
            let (image, kind) = match (op, source) {
                (RatioOperator::Hilbert, Source::Function(f)) => {
                    (Source::Function(hilbert_periodic(f, &HilbertConfig::default())?), PsiTransformKind::Hilbert)
                }
                (RatioOperator::LeindlerT, Source::Sequence(x)) => {
                    (Source::Sequence(leindler_apply(x, Which::T)?), PsiTransformKind::Leindler)
                }
                (RatioOperator::LeindlerU, Source::Sequence(x)) => {
                    (Source::Sequence(leindler_apply(x, Which::U)?), PsiTransformKind::Leindler)
                }
                _ => return Err(GlsError::Unsupported(format!("{op:?} has no explicit-psi ratio"))),
            };
            let variant = if matches!(source, Source::Sequence(_)) { Variant::Beta } else { Variant::Plain };
            let cfg = GlsConfig::default();
            let top = gls_norm(&image, &crate::psi::transform_psi(psi, kind)?, variant, &cfg)?;
            let probe = GlsConfig { extra_probes: vec![top.argmax_p], ..cfg };
            let bottom = gls_norm(source, psi, variant, &probe)?;
            (vec![Some(top.value / bottom.value)], vec![top.argmax_p])
        }
    };
    let best = ratios.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(RatioReport {
        functional: match choice {
            PsiChoice::Natural => "V0".into(),
            PsiChoice::Explicit => "V".into(),
        },
        source: source.name(),
        sweep,
        ratios,
        predicted_limit: 1.0,
        attained: best,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticTag {
    /// `ψ_{(L)}(p) [(p-L)/p]^{1/L}` as `p → L⁺`, `ψ_{(L)}(p) = |n^{-1/L}|_p`.
    ZetaL,
    /// `T(a, ε) ε^L / |ln ε|^{qL}` as `ε → 0` for `a(n) = n^{-1/L} (ln n)^q`.
    TailPowerLog,
    /// `|H g_m(x)| / (|ln(x/2π)|^{(m+1)/m} + 1)` as `x → 0⁺`.
    GmHilbert,
    /// `|g_m|_p / p^{1/m}` over `p`.
    GmBand,
    /// `(1/γ - p) |U_γ g|_p / |λ|^{(γ)}_p` for the cosine family as `p → 1/γ`.
    GammaWeight,
    /// `g_sin(x) / ((π/2) |ln x|^Δ)` as `x → 0⁺`.
    GdeltaSinLog,
}

impl AsymptoticTag {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "zeta_L" | "zeta_l" => Self::ZetaL,
            "tail_power_log" => Self::TailPowerLog,
            "gm_hilbert" => Self::GmHilbert,
            "gm_band" => Self::GmBand,
            "gamma_weight" => Self::GammaWeight,
            "gdelta_sin_log" => Self::GdeltaSinLog,
            _ => return Err(GlsError::Spec(format!("unknown prediction `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub tag: AsymptoticTag,
    pub params: Vec<f64>,
    /// Refinement parameter, ordered from coarse to fine.
    pub refinement: Vec<f64>,
    pub ratios: Vec<f64>,
    /// Limit of the ratio when the prediction fixes one.
    pub predicted: Option<f64>,
    /// `|ratio/predicted - 1|` at the finest point, or the relative spread
    /// of the last two ratios when no limit is predicted.
    pub final_deviation: f64,
    /// The deviation at the finest point does not exceed the coarsest one.
    pub monotone: bool,
    /// `max ratio / min ratio` over the refinement.
    pub band: f64,
}

fn deviations(ratios: &[f64], predicted: Option<f64>) -> (f64, bool) {
    let n = ratios.len();
    match predicted {
        Some(l) => {
            let d: Vec<f64> = ratios.iter().map(|r| (r / l - 1.0).abs()).collect();
            (d[n - 1], d[n - 1] <= d[0])
        }
        None if n >= 2 => {
            let first = (ratios[1] / ratios[0] - 1.0).abs();
            let last = (ratios[n - 1] / ratios[n - 2] - 1.0).abs();
            (last, last <= first)
        }
        None => (0.0, true),
    }
}

/// Runs a registered asymptotic prediction along `refinement` (ordered coarse
/// to fine). `params` per tag: `ZetaL [L]`, `TailPowerLog [L, q]`,
/// `GmHilbert [m]`, `GmBand [m]`, `GammaWeight [Δ, γ]`, `GdeltaSinLog [Δ]`.
pub fn asymptotic_check(tag: AsymptoticTag, params: &[f64], refinement: &[f64]) -> Result<AsymptoticReport> {
    if refinement.is_empty() {
        return Err(GlsError::invalid("empty refinement sequence"));
    }
    let need = |n: usize| -> Result<()> {
        if params.len() == n {
            Ok(())
        } else {
            Err(GlsError::invalid(format!("{tag:?} takes {n} parameters, got {}", params.len())))
        }
    };
    let (ratios, predicted): (Vec<f64>, Option<f64>) = match tag {
        AsymptoticTag::ZetaL => {
            need(1)?;
            let l = params[0];
            let a = WeightedSequence::new(
                crate::source::Coeffs::PowerLog { decay: 1.0 / l, log_power: 0.0 },
                crate::source::Weight::Unit,
                None,
            )?;
            let r: Result<Vec<f64>> =
                refinement.iter().map(|&p| Ok(lp_sequence(&a, p, SeqVariant::Plain)?.value * ((p - l) / p).powf(1.0 / l))).collect();
            (r?, Some(1.0))
        }
        AsymptoticTag::TailPowerLog => {
            need(2)?;
            let (l, q) = (params[0], params[1]);
            let a =
                WeightedSequence::new(crate::source::Coeffs::PowerLog { decay: 1.0 / l, log_power: q }, crate::source::Weight::Unit, None)?;
            let r: Result<Vec<f64>> = refinement.iter().map(|&e| Ok(a.tail(e)? * e.powf(l) / e.ln().abs().powf(q * l))).collect();
            (r?, Some(l.powf(q * l)))
        }
        AsymptoticTag::GmHilbert => {
            need(1)?;
            let m = params[0];
            let g = SampledFunction::new(Family::LogPower { m });
            let r: Result<Vec<f64>> = refinement
                .par_iter()
                .map(|&x| Ok(hilbert_periodic_at(&g, x)?.abs() / ((x / (2.0 * PI)).ln().abs().powf((m + 1.0) / m) + 1.0)))
                .collect();
            (r?, None)
        }
        AsymptoticTag::GmBand => {
            need(1)?;
            let m = params[0];
            let g = SampledFunction::new(Family::LogPower { m });
            let r: Result<Vec<f64>> = refinement.iter().map(|&p| Ok(lp_continuous(&g, p, false)?.value / p.powf(1.0 / m))).collect();
            (r?, None)
        }
        AsymptoticTag::GammaWeight => {
            need(2)?;
            let (delta, gamma) = (params[0], params[1]);
            if delta < 0.0 || delta.fract() != 0.0 {
                return Err(GlsError::invalid("Delta must be a non-negative integer"));
            }
            let p0 = 1.0 / gamma;
            let eps: Vec<f64> = refinement.iter().map(|p| 1.0 - p / p0).collect();
            let rep = gamma_blowup(delta as u32, gamma, &eps)?;
            // gamma_blowup sorts by p; refinement runs toward p0 in the same order.
            (rep.points.iter().map(|pt| (p0 - pt.p) * pt.ratio).collect(), None)
        }
        AsymptoticTag::GdeltaSinLog => {
            need(1)?;
            let delta = params[0];
            if delta < 0.0 || delta.fract() != 0.0 {
                return Err(GlsError::invalid("Delta must be a non-negative integer"));
            }
            let g = SampledFunction::new(Family::gdelta(delta as u32, GDeltaKind::Sin));
            let r: Vec<f64> = refinement.iter().map(|&x| g.eval(x) / (0.5 * PI * x.ln().abs().powf(delta))).collect();
            (r, Some(1.0))
        }
    };
    let (final_deviation, monotone) = deviations(&ratios, predicted);
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(AsymptoticReport {
        tag,
        params: params.to_vec(),
        refinement: refinement.to_vec(),
        ratios,
        predicted,
        final_deviation,
        monotone,
        band: hi / lo,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapPoint {
    pub u: f64,
    pub tail: f64,
    pub bound: f64,
    /// `bound / tail`.
    pub gap: f64,
    pub argmin_p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub b: f64,
    pub delta: f64,
    pub points: Vec<GapPoint>,
    /// Least-squares slope of `ln gap` against `ln ln u`; `None` for fewer than two points.
    pub exponent: Option<f64>,
}

/// Log-factor gap between the Tchebychev bound `inf_{p<b} |a|_{p,β}^p / u^p` and
/// the true tail `T(u) = Σ_{k>u} β(k)` for `a(k) = k`, `β(k) = k^{-b-1}(ln k)^Δ`.
/// The prediction is a gap of `ln u` to the first power. Levels below `e` are
/// dropped.
pub fn weighted_tail_gap(b: f64, delta: f64, u_grid: &[f64]) -> Result<GapReport> {
    if !(b > 1.0 && delta >= 0.0) {
        return Err(GlsError::invalid("the gap example needs b > 1 and Delta >= 0"));
    }
    let src = parse_source(&format!("seq:delta_pair:{b},{delta}"))?;
    let Source::Sequence(seq) = &src else { unreachable!("delta_pair is a sequence") };
    let us: Vec<f64> = u_grid.iter().copied().filter(|u| *u >= E).collect();
    let points: Result<Vec<GapPoint>> = us
        .par_iter()
        .map(|&u| {
            let tail = seq.tail(u)?;
            // p ↦ p ln(|a|_{p,β}/u) is convex, so a golden search on (1, b) finds the infimum.
            let obj = |p: f64| match lp(&src, p, Variant::Beta) {
                Ok(n) => p * (n.value / u).ln(),
                Err(_) => f64::INFINITY,
            };
            let (argmin_p, v) = golden::minimize(obj, 1.0, b * (1.0 - 1e-9), 1e-12, 200);
            let bound = v.exp();
            Ok(GapPoint { u, tail, bound, gap: bound / tail, argmin_p })
        })
        .collect();
    let points = points?;
    let exponent = if points.len() >= 2 {
        let xs: Vec<f64> = points.iter().map(|pt| pt.u.ln().ln()).collect();
        let ys: Vec<f64> = points.iter().map(|pt| pt.gap.ln()).collect();
        Some(ls_slope(&xs, &ys))
    } else {
        None
    };
    Ok(GapReport { b, delta, points, exponent })
}

fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `u = e^t` for `t` evenly spaced on `[t0, t1]`.
pub fn exp_grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    golden::lin_grid(t0, t1, n).into_iter().map(f64::exp).collect()
}

/// `|H g_Δ|_p / (K_H(p) |g_Δ|_p)` for the sine family.
pub fn hilbert_attainment(delta: u32, p: f64) -> Result<f64> {
    let g = Source::Function(SampledFunction::new(Family::gdelta(delta, GDeltaKind::Sin)));
    lower_bound_w(RatioOperator::Hilbert, &g, p)
}

/// The trig polynomial `cos x + sin 2x` used in the small GLS examples.
pub fn example_trig() -> TrigPolynomial {
    TrigPolynomial::new(vec![0.0, 1.0, 0.0], vec![0.0, 1.0]).expect("finite coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_power_value() {
        assert_eq!(eval_extremal("line:fab:2,4", 4.0).unwrap(), 0.5);
    }

    #[test]
    fn log_power_value() {
        let x = 2.0 * PI / (E * E);
        assert!((eval_extremal("torus:gm:1", x).unwrap() - 2.0).abs() < 1e-14);
        assert!(eval_extremal("torus:gm:1", 0.0).is_err());
        assert!(eval_extremal("torus:gdelta_sin:1", 2.0 * PI).is_err());
    }

    #[test]
    fn sequence_values() {
        assert_eq!(eval_extremal("seq:values:3,4", 2.0).unwrap(), 4.0);
        assert!(eval_extremal("seq:values:3,4", 1.5).is_err());
    }

    #[test]
    fn block_boundaries() {
        assert_eq!(block_boundary(0).unwrap(), 2);
        assert_eq!(block_boundary(1).unwrap(), 15);
        assert!(block_boundary(4).is_err());
    }

    #[test]
    fn unit_vector_w0() {
        let e1 = Source::Sequence(WeightedSequence::from_values(vec![1.0]));
        assert_eq!(lower_bound_w(RatioOperator::LeindlerT, &e1, 2.0).unwrap(), 0.5);
    }

    #[test]
    fn natural_ratio_for_example_trig() {
        let f = Source::Function(SampledFunction::new(Family::Trig(example_trig())));
        let r = ratio_v(RatioOperator::Hilbert, &f, PsiChoice::Natural, None, &[1.5, 2.0, 4.0]).unwrap();
        assert!((r.ratios[1].unwrap() - 1.0).abs() < 1e-10);
        assert!(r.ratios.iter().flatten().all(|v| *v <= 1.0 + 1e-9));
    }

    #[test]
    fn explicit_ratio_bounded() {
        let f = Source::Function(SampledFunction::new(Family::Trig(example_trig())));
        let psi = crate::psi::parse_psi("exp:0.5").unwrap();
        let r = ratio_v(RatioOperator::Hilbert, &f, PsiChoice::Explicit, Some(&psi), &[]).unwrap();
        assert!(r.attained <= 1.0 + 1e-6, "{r:?}");
    }

    #[test]
    fn zeta_band() {
        let grid: Vec<f64> = (1..=8).map(|k| 1.0 + 0.25 * k as f64).collect();
        let r = asymptotic_check(AsymptoticTag::ZetaL, &[1.0], &grid).unwrap();
        assert!(r.ratios.iter().all(|v| (0.5..=2.0).contains(v)), "{r:?}");
    }

    #[test]
    fn gap_guard_and_slope() {
        let r = weighted_tail_gap(3.0, 1.0, &[1.0, 2.0]).unwrap();
        assert!(r.points.is_empty() && r.exponent.is_none());
        let r = weighted_tail_gap(3.0, 1.0, &exp_grid(2.0, 10.0, 9)).unwrap();
        let e = r.exponent.unwrap();
        assert!((e - 1.0).abs() < 0.15, "{e}");
        assert!(r.points.iter().all(|pt| pt.gap >= 1.0));
    }
}
