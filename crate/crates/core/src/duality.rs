//! Tail functions, norms recovered from tails, Tchebychev bounds, Young-Fenchel
//! conjugates, N-functions built from ψ, and the Orlicz norm.

use crate::error::{GlsError, Result};
use crate::gls::{gls_norm, inset_interval, GlsConfig};
use crate::norms::{lp, Variant};
use crate::numeric::gauss::{gl16, gl8, GaussRule};
use crate::numeric::golden;
use crate::numeric::levels::{integrate_graded, sum_log_levels, LevelBudget};
use crate::numeric::sum::{log_sum_exp, Compensated};
use crate::psi::{validate_psi, PsiFunction, Support};
use crate::source::{Coeffs, Family, GDeltaKind, SampledFunction, Source, WeightedSequence};
use std::fmt;
use std::sync::Arc;

// ---------------------------------------------------------------------------
// Tails

/// `μ{|source| > u}`: normalized measure on the torus, Lebesgue measure on the
/// line, `β`-weighted counting measure for sequences.
pub fn tail_function(source: &Source, u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(GlsError::invalid(format!("tail level must be positive, got {u}")));
    }
    match source {
        Source::Sequence(c) => c.tail(u),
        Source::Function(f) => {
            let amp = f.apply_abs_amplitude(1.0);
            if amp == 0.0 {
                return Ok(0.0);
            }
            f.family().tail(u / amp)
        }
    }
}

/// How the integral `p ∫ u^{p-1} T(u) du` is split.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    /// Jump points in ascending order; `T` is constant between consecutive points.
    Steps(Vec<f64>),
    /// A piece where `T` is continuous, integrated on a graded mesh in `ln u`.
    Smooth { a: f64, b: f64 },
    /// `T` is constant on `(0, top)`.
    Below { top: f64 },
    /// Dyadic levels `(top·2^{-k-1}, top·2^{-k})` down to 0.
    LowerLevels { top: f64 },
    /// Dyadic levels `(bottom·2^k, bottom·2^{k+1})` up to infinity.
    UpperLevels { bottom: f64 },
}

impl Region {
    fn scaled(&self, s: f64) -> Region {
        match self {
            Region::Steps(v) => Region::Steps(v.iter().map(|x| x * s).collect()),
            Region::Smooth { a, b } => Region::Smooth { a: a * s, b: b * s },
            Region::Below { top } => Region::Below { top: top * s },
            Region::LowerLevels { top } => Region::LowerLevels { top: top * s },
            Region::UpperLevels { bottom } => Region::UpperLevels { bottom: bottom * s },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TailKind {
    ClosedForm,
    Empirical { grid: Vec<f64> },
}

type TailFn = dyn Fn(f64) -> Result<f64> + Send + Sync;

/// A non-increasing map `u ↦ T(u)` with a plan for integrating it.
#[derive(Clone)]
pub struct TailProfile {
    eval: Arc<TailFn>,
    regions: Vec<Region>,
    kind: TailKind,
    domain_note: String,
}

impl fmt::Debug for TailProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TailProfile")
            .field("regions", &self.regions)
            .field("kind", &self.kind)
            .field("domain_note", &self.domain_note)
            .finish()
    }
}

/// Number of leading coefficients whose level-set jumps are integrated exactly.
const EXACT_ATOMS: u64 = 4096;

impl TailProfile {
    /// A closed-form tail with an explicit integration plan.
    pub fn closed_form(note: impl Into<String>, regions: Vec<Region>, f: impl Fn(f64) -> Result<f64> + Send + Sync + 'static) -> Self {
        TailProfile { eval: Arc::new(f), regions, kind: TailKind::ClosedForm, domain_note: note.into() }
    }

    /// `T(u) = mass · 1{u < h}`.
    pub fn indicator(h: f64, mass: f64) -> Self {
        Self::closed_form("indicator", vec![Region::Below { top: h }], move |u| Ok(if u < h { mass } else { 0.0 }))
    }

    /// Step function through sampled points `(u_i, T_i)`: `T(u) = T_i` on
    /// `(u_{i-1}, u_i]`, `T_0` below `u_0` and `0` beyond the last point.
    pub fn empirical(mut points: Vec<(f64, f64)>) -> Result<Self> {
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.is_empty() || points.iter().any(|(u, t)| !(*u > 0.0) || !(*t >= 0.0)) {
            return Err(GlsError::invalid("empirical tail needs positive levels and non-negative values"));
        }
        if points.windows(2).any(|w| w[1].1 > w[0].1) {
            return Err(GlsError::invalid("empirical tail must be non-increasing"));
        }
        let grid: Vec<f64> = points.iter().map(|p| p.0).collect();
        let mut steps = grid.clone();
        let top = steps[0];
        let last = *steps.last().unwrap_or(&top);
        steps.push(last * 2.0);
        let pts = points.clone();
        let eval = move |u: f64| -> Result<f64> {
            let i = pts.partition_point(|(x, _)| *x < u);
            Ok(pts.get(i).map_or(0.0, |p| p.1))
        };
        Ok(TailProfile {
            eval: Arc::new(eval),
            regions: vec![Region::Below { top }, Region::Steps(steps)],
            kind: TailKind::Empirical { grid },
            domain_note: "empirical".into(),
        })
    }

    /// The tail of a registry source.
    pub fn from_source(source: &Source) -> Result<Self> {
        let (amp, base_regions, note) = match source {
            Source::Function(f) => (f.apply_abs_amplitude(1.0), function_regions(f)?, f.domain_note()),
            Source::Sequence(c) => (c.apply_abs_amplitude(1.0), sequence_regions(&c.base())?, "beta-weighted counting measure"),
        };
        let regions = if amp == 0.0 { Vec::new() } else { base_regions.iter().map(|r| r.scaled(amp)).collect() };
        let s = source.clone();
        Ok(TailProfile { eval: Arc::new(move |u| tail_function(&s, u)), regions, kind: TailKind::ClosedForm, domain_note: note.into() })
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        (self.eval)(u)
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn kind(&self) -> &TailKind {
        &self.kind
    }

    pub fn domain_note(&self) -> &str {
        &self.domain_note
    }
}

trait DomainNote {
    fn domain_note(&self) -> &'static str;
}

impl DomainNote for SampledFunction {
    fn domain_note(&self) -> &'static str {
        match self.domain() {
            crate::source::Domain::Torus => "normalized torus measure",
            crate::source::Domain::Line => "Lebesgue measure on the line",
        }
    }
}

fn function_regions(f: &SampledFunction) -> Result<Vec<Region>> {
    use Region::*;
    Ok(match f.family() {
        Family::Constant | Family::Indicator01 => vec![Below { top: 1.0 }],
        Family::InvAbsTail => vec![LowerLevels { top: 1.0 }],
        Family::TwoPower { .. } | Family::LogPower { .. } => vec![LowerLevels { top: 1.0 }, UpperLevels { bottom: 1.0 }],
        Family::GDelta { kind: GDeltaKind::Sin, .. } => vec![LowerLevels { top: 1.0 }, UpperLevels { bottom: 1.0 }],
        Family::Gaussian => vec![Smooth { a: 0.5, b: 1.0 }, LowerLevels { top: 0.5 }],
        other => {
            return Err(GlsError::Unsupported(format!("no tail integration plan for {}", other.name())));
        }
    })
}

fn sorted_atoms(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.map(f64::abs).filter(|x| *x > 0.0).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn sequence_regions(c: &WeightedSequence) -> Result<Vec<Region>> {
    use Region::*;
    let complete = |atoms: Vec<f64>| -> Vec<Region> {
        match atoms.first() {
            None => Vec::new(),
            Some(&lo) => {
                let mut steps = atoms.clone();
                // One point past the maximum closes the last step (T = 0 there).
                let top = *steps.last().unwrap_or(&lo);
                steps.push(top * 2.0);
                vec![Below { top: lo }, Steps(steps)]
            }
        }
    };
    match c.coeffs() {
        Coeffs::Values { values, beyond } => {
            let n = c.last_index().unwrap_or(values.len() as u64);
            let mut all: Vec<f64> = values.iter().take(n as usize).copied().collect();
            if let Some(b) = beyond {
                if c.truncation().is_none_or(|t| t > values.len() as u64) {
                    all.push(*b);
                }
            }
            Ok(complete(sorted_atoms(all.into_iter())))
        }
        Coeffs::PowerLog { decay, log_power } => {
            let (d, q) = (*decay, *log_power);
            let peak = if d > 0.0 && q > 0.0 { (q / d).exp().ceil() as u64 } else { 1 };
            let k = EXACT_ATOMS.max(4 * peak);
            if let Some(t) = c.truncation().filter(|t| *t <= k) {
                return Ok(complete(sorted_atoms((1..=t).map(|n| c.coeff(n)))));
            }
            if d > 0.0 {
                let ck = c.coeff(k);
                let atoms = sorted_atoms((1..=k).map(|n| c.coeff(n)).filter(|v| v.abs() >= ck));
                let top = *atoms.last().unwrap_or(&ck);
                let mut steps = atoms;
                steps.push(top * 2.0);
                Ok(vec![LowerLevels { top: ck }, Steps(steps)])
            } else if d < 0.0 {
                let atoms = sorted_atoms((1..=k).map(|n| c.coeff(n)));
                let lo = atoms[0];
                let hi = *atoms.last().unwrap_or(&lo);
                Ok(vec![Below { top: lo }, Steps(atoms), UpperLevels { bottom: hi }])
            } else {
                Err(GlsError::Unsupported("tail plan for constant coefficients".into()))
            }
        }
    }
}

fn level_integral(t: &TailProfile, p: f64, a: f64, b: f64, rule: &GaussRule) -> Result<f64> {
    // ∫_a^b p u^{p-1} T(u) du in s = ln u, returned as a log.
    let (sa, sb) = (a.ln(), b.ln());
    let mut logs = Vec::with_capacity(rule.len());
    for i in 0..rule.len() {
        let (s, w) = rule.mapped(i, sa, sb);
        let tv = t.eval(s.exp())?;
        logs.push(if tv > 0.0 { w.ln() + p.ln() + p * s + tv.ln() } else { f64::NEG_INFINITY });
    }
    Ok(log_sum_exp(&logs))
}

/// `[p ∫_0^∞ u^{p-1} T(u) du]^{1/p}`.
pub fn norm_from_tail(t: &TailProfile, p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(GlsError::Inadmissible { p, detail: "norm_from_tail needs finite p >= 1".into() });
    }
    let mut acc = Compensated::default();
    for region in &t.regions {
        match region {
            Region::Steps(pts) => {
                for w in pts.windows(2) {
                    let (x0, x1) = (w[0], w[1]);
                    let tv = t.eval(0.5 * (x0 + x1))?;
                    if tv > 0.0 {
                        acc.add(tv * x0.powf(p) * (p * (x1 / x0).ln()).exp_m1());
                    }
                }
            }
            Region::Below { top } => {
                let tv = t.eval(0.5 * top)?;
                acc.add(tv * top.powf(p));
            }
            Region::Smooth { a, b } => {
                let err = std::cell::RefCell::new(None);
                let f = |s: f64| {
                    let u = s.exp();
                    match t.eval(u) {
                        Ok(v) => p * u.powf(p) * v,
                        Err(e) => {
                            err.borrow_mut().get_or_insert(e);
                            0.0
                        }
                    }
                };
                let v = integrate_graded(&f, a.ln(), b.ln(), true, true, 30);
                if let Some(e) = err.into_inner() {
                    return Err(e);
                }
                acc.add(v);
            }
            Region::LowerLevels { top } | Region::UpperLevels { bottom: top } => {
                let upward = matches!(region, Region::UpperLevels { .. });
                let top = *top;
                let mut err = None;
                let level = |k: usize| {
                    let (a, b) = if upward {
                        (top * 2f64.powi(k as i32), top * 2f64.powi(k as i32 + 1))
                    } else {
                        (top * 2f64.powi(-(k as i32) - 1), top * 2f64.powi(-(k as i32)))
                    };
                    match (level_integral(t, p, a, b, gl16()), level_integral(t, p, a, b, gl8())) {
                        (Ok(h), Ok(l)) => (h, l),
                        (Err(e), _) | (_, Err(e)) => {
                            err.get_or_insert(e);
                            (f64::NEG_INFINITY, f64::NEG_INFINITY)
                        }
                    }
                };
                let budget = LevelBudget { min_levels: 8, max_levels: 1100 };
                let s = sum_log_levels(level, budget);
                if let Some(e) = err {
                    return Err(e);
                }
                let s = s?;
                acc.add(s.ln_total.exp());
            }
        }
    }
    let total = acc.value();
    if !total.is_finite() {
        return Err(GlsError::divergent("tail integral is infinite"));
    }
    Ok(total.powf(1.0 / p))
}

// ---------------------------------------------------------------------------
// Tchebychev

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TchebychevBound {
    pub value: f64,
    pub argmin_p: f64,
    /// `‖source‖_{G(ψ)}` used in the bound.
    pub gls_norm: f64,
}

/// `inf_p (‖source‖_{G(ψ)} ψ(p) / u)^p`, which dominates the tail since
/// `|source|_p ≤ ‖source‖ ψ(p)`. Exponents where the norm diverges are skipped.
pub fn tchebychev_bound(source: &Source, psi: &PsiFunction, u: f64, variant: Variant, cfg: &GlsConfig) -> Result<TchebychevBound> {
    if !(u > 0.0) {
        return Err(GlsError::invalid("u must be positive"));
    }
    let g = gls_norm(source, psi, variant, cfg)?.value;
    if g == 0.0 {
        return Ok(TchebychevBound { value: 0.0, argmin_p: f64::NAN, gls_norm: 0.0 });
    }
    let objective = |p: f64| -> f64 {
        match psi.eval(p) {
            Ok(v) => p * (g * v / u).ln(),
            Err(_) => f64::INFINITY,
        }
    };
    let probes: Vec<f64> = match psi.support() {
        Support::Point(r) => vec![r],
        s @ Support::Open { lo, .. } => {
            let (a, b) = inset_interval(s, cfg.p_max, 20)?;
            let mut v: Vec<f64> = golden::log_grid(a - lo, b - lo, 256).into_iter().map(|d| lo + d).collect();
            if let Support::Open { hi, .. } = s {
                if hi.is_finite() {
                    v.extend(golden::log_grid(hi - b, hi - a, 256).into_iter().map(|d| hi - d));
                }
            }
            v.retain(|p| *p >= a && *p <= b);
            v.sort_by(f64::total_cmp);
            v
        }
    };
    let vals: Vec<f64> = probes.iter().map(|&p| objective(p)).collect();
    let i = (0..vals.len()).min_by(|&x, &y| vals[x].total_cmp(&vals[y])).unwrap_or(0);
    let (mut p_best, mut v_best) = (probes[i], vals[i]);
    if i > 0 && i + 1 < probes.len() {
        let (x, v) = golden::minimize(objective, probes[i - 1], probes[i + 1], 1e-12, 100);
        if v < v_best {
            p_best = x;
            v_best = v;
        }
    }
    Ok(TchebychevBound { value: v_best.exp(), argmin_p: p_best, gls_norm: g })
}

/// The plain Tchebychev route `inf_p |source|_p^p / u^p` over a given grid of exponents.
pub fn tchebychev_direct(source: &Source, u: f64, variant: Variant, grid: &[f64]) -> Result<f64> {
    let mut best = f64::INFINITY;
    for &p in grid {
        match lp(source, p, variant) {
            Ok(n) => best = best.min(p * (n.value / u).ln()),
            Err(e) if e.is_divergent() => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(best.exp())
}

// ---------------------------------------------------------------------------
// Young-Fenchel

type RealFn = dyn Fn(f64) -> f64 + Send + Sync;

/// A convex function sampled on a log-spaced grid over `[lo, hi]`.
#[derive(Clone)]
pub struct ConvexProfile {
    f: Arc<RealFn>,
    pub lo: f64,
    pub hi: f64,
    pub grid: Vec<f64>,
    pub name: String,
}

impl fmt::Debug for ConvexProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConvexProfile({} on [{}, {}], {} points)", self.name, self.lo, self.hi, self.grid.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Conjugate {
    pub value: f64,
    pub argmax: f64,
    /// The maximizer is at the grid edge: `value` is only a lower bound.
    pub at_edge: bool,
}

impl ConvexProfile {
    /// Default conjugation grid: `[2, 200]`, 512 log-spaced points.
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::on(name, f, 2.0, 200.0, 512)
    }

    pub fn on(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static, lo: f64, hi: f64, n: usize) -> Self {
        let grid = if lo > 0.0 { golden::log_grid(lo, hi, n) } else { golden::lin_grid(lo, hi, n) };
        ConvexProfile { f: Arc::new(f), lo, hi, grid, name: name.into() }
    }

    pub fn eval(&self, z: f64) -> f64 {
        (self.f)(z)
    }

    /// Second divided differences on the grid are `≥ -tol` (relative to the slope scale).
    pub fn is_convex(&self, tol: f64) -> bool {
        self.grid.windows(3).all(|w| {
            let (y0, y1, y2) = (self.eval(w[0]), self.eval(w[1]), self.eval(w[2]));
            let s01 = (y1 - y0) / (w[1] - w[0]);
            let s12 = (y2 - y1) / (w[2] - w[1]);
            s12 - s01 >= -tol * s01.abs().max(s12.abs()).max(1.0)
        })
    }

    /// `W*(p) = sup_z (p z - W(z))` over the grid, polished by golden section.
    pub fn conjugate_at(&self, p: f64) -> Conjugate {
        let obj = |z: f64| p * z - self.eval(z);
        let vals: Vec<f64> = self.grid.iter().map(|&z| obj(z)).collect();
        let i = (0..vals.len()).max_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
        let n = self.grid.len();
        if i == 0 || i + 1 == n {
            return Conjugate { value: vals[i], argmax: self.grid[i], at_edge: true };
        }
        let (z, v) = golden::maximize(obj, self.grid[i - 1], self.grid[i + 1], 1e-15, 200);
        if v >= vals[i] {
            Conjugate { value: v, argmax: z, at_edge: false }
        } else {
            Conjugate { value: vals[i], argmax: self.grid[i], at_edge: false }
        }
    }

    /// `W*` as a profile over the slope range of `W` on its grid.
    pub fn conjugate_profile(&self, n: usize) -> ConvexProfile {
        let h = 1e-6;
        let slope = |z: f64, dir: f64| (self.eval(z + dir * h * z.abs().max(1.0)) - self.eval(z)) / (dir * h * z.abs().max(1.0));
        let lo = slope(self.lo, 1.0);
        let hi = slope(self.hi, -1.0);
        let me = self.clone();
        ConvexProfile::on(format!("({})*", self.name), move |p| me.conjugate_at(p).value, lo, hi, n)
    }
}

/// `W*(p)`; an edge maximizer is reported through `at_edge`.
pub fn young_fenchel(w: &ConvexProfile, p: f64) -> Conjugate {
    w.conjugate_at(p)
}

/// Largest `|(W*)*(z) - W(z)| / max(1, |W(z)|)` over `zs`, with `W*` tabulated
/// on `n` points of the slope range of `W`.
pub fn biconjugate_deviation(w: &ConvexProfile, zs: &[f64], n: usize) -> f64 {
    let star = w.conjugate_profile(n);
    zs.iter()
        .map(|&z| {
            let v = w.eval(z);
            (star.conjugate_at(z).value - v).abs() / v.abs().max(1.0)
        })
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// N-functions from ψ

/// `ln N(u)` with `N(u) = exp{[p ln ψ(p)]*(ln u)}`, for `u ≥ e²`.
/// The conjugation variable runs over the support of ψ, starting on `[2, 200]` and
/// extending geometrically while the maximizer sits at the upper edge.
pub fn ln_n_from_psi(psi: &PsiFunction, u: f64) -> Result<NConjugate> {
    let e2 = std::f64::consts::E * std::f64::consts::E;
    if !(u >= e2 * (1.0 - 1e-15)) {
        return Err(GlsError::Inadmissible { p: u, detail: "N(u) from psi is defined for u >= e^2".into() });
    }
    let Support::Open { lo, hi } = psi.support() else {
        return Err(GlsError::SupportMismatch("N-function needs an open support".into()));
    };
    let y = u.ln();
    let (a, b_inset) = inset_interval(psi.support(), 200.0, 20)?;
    let mut start = a.max(2.0f64.min(b_inset));
    if start >= b_inset {
        start = a;
    }
    let mut end = if hi.is_finite() { b_inset } else { 200.0f64.max(start * 2.0) };
    let mut extensions = 0;
    loop {
        let grid = golden::log_grid(start, end, 512);
        let report = validate_psi(psi, &grid, true);
        if report.convex != Some(true) || !report.is_valid() {
            return Err(GlsError::invalid(format!("p ln psi(p) is not certified convex on [{start}, {end}] for {}", psi.tag())));
        }
        let obj = |p: f64| p * y - p * psi.eval(p).map(f64::ln).unwrap_or(f64::INFINITY);
        let vals: Vec<f64> = grid.iter().map(|&p| obj(p)).collect();
        let i = (0..vals.len()).max_by(|&x, &z| vals[x].total_cmp(&vals[z])).unwrap_or(0);
        if i + 1 == grid.len() && !hi.is_finite() && extensions < 40 {
            start = grid[grid.len() / 2];
            end *= 16.0;
            extensions += 1;
            continue;
        }
        let (p_star, value) = if i > 0 && i + 1 < grid.len() {
            let (p, v) = golden::maximize(obj, grid[i - 1], grid[i + 1], 1e-15, 200);
            if v >= vals[i] {
                (p, v)
            } else {
                (grid[i], vals[i])
            }
        } else {
            (grid[i], vals[i])
        };
        let at_edge = i == 0 || i + 1 == grid.len();
        let _ = lo;
        return Ok(NConjugate { ln_n: value, argmax_p: p_star, at_edge });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct NConjugate {
    pub ln_n: f64,
    pub argmax_p: f64,
    pub at_edge: bool,
}

/// `N(u)`; overflows to infinity for very large `u`, use [`ln_n_from_psi`] there.
pub fn n_from_psi(psi: &PsiFunction, u: f64) -> Result<f64> {
    Ok(ln_n_from_psi(psi, u)?.ln_n.exp())
}

/// An N-function for the Orlicz norm, evaluated in log form.
#[derive(Clone)]
pub enum NFunction {
    /// `u^q`.
    Power(f64),
    /// `exp(c u) - 1`-free exponential form `exp(W(ln u))` for `u ≥ e²`, linear below.
    ExpConvex(Arc<RealFn>),
    /// Tabulated `N` from ψ: `ln N` interpolated in `ln u` from `e²` to `e^{y_max}`,
    /// extrapolated linearly in `ln ln N` beyond, linear in `u` below `e²`.
    FromPsi {
        y: Vec<f64>,
        ln_n: Vec<f64>,
        tag: String,
    },
    Custom(Arc<RealFn>),
}

impl fmt::Debug for NFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NFunction::Power(q) => write!(f, "Power({q})"),
            NFunction::ExpConvex(_) => write!(f, "ExpConvex"),
            NFunction::FromPsi { tag, y, .. } => write!(f, "FromPsi({tag}, {} nodes)", y.len()),
            NFunction::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl NFunction {
    /// Tabulates `N` from ψ on `ln u ∈ [2, y_max]`.
    pub fn from_psi(psi: &PsiFunction, y_max: f64, n: usize) -> Result<Self> {
        let ys = golden::lin_grid(2.0, y_max, n.max(4));
        let mut ln_n = Vec::with_capacity(ys.len());
        for &y in &ys {
            ln_n.push(ln_n_from_psi(psi, y.exp())?.ln_n);
        }
        if ln_n.iter().any(|v| !(*v > 0.0)) {
            return Err(GlsError::invalid("tabulated ln N must be positive from u = e^2 on"));
        }
        Ok(NFunction::FromPsi { y: ys, ln_n, tag: psi.tag().to_string() })
    }

    /// `ln N(u)`.
    pub fn ln_eval(&self, u: f64) -> f64 {
        if !(u > 0.0) {
            return f64::NEG_INFINITY;
        }
        let e2 = std::f64::consts::E.powi(2);
        match self {
            NFunction::Power(q) => q * u.ln(),
            NFunction::Custom(f) => f(u).ln(),
            NFunction::ExpConvex(w) => {
                if u >= e2 {
                    w(u.ln())
                } else {
                    w(2.0) + (u / e2).ln()
                }
            }
            NFunction::FromPsi { y, ln_n, .. } => {
                let interp = |t: f64| -> f64 {
                    let n = y.len();
                    if t <= y[0] {
                        return ln_n[0];
                    }
                    if t >= y[n - 1] {
                        // Linear in ln ln N beyond the table.
                        let (a, b) = (ln_n[n - 2].ln(), ln_n[n - 1].ln());
                        let slope = (b - a) / (y[n - 1] - y[n - 2]);
                        return (b + slope * (t - y[n - 1])).exp();
                    }
                    let i = y.partition_point(|v| *v <= t).min(n - 1);
                    let (y0, y1) = (y[i - 1], y[i]);
                    let (l0, l1) = (ln_n[i - 1].ln(), ln_n[i].ln());
                    (l0 + (l1 - l0) * (t - y0) / (y1 - y0)).exp()
                };
                if u >= e2 {
                    interp(u.ln())
                } else {
                    interp(2.0) + (u / e2).ln()
                }
            }
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.ln_eval(u).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct OrliczReport {
    /// `inf_v v^{-1}(1 + ∫ N(v|f|) dμ)`; infinite when no `v` gives a finite integral.
    pub value: f64,
    pub v_opt: f64,
}

fn ln_orlicz_integral(f: &SampledFunction, n: &NFunction, v: f64) -> Result<f64> {
    let ln_v = v.ln();
    let h = |nd: &crate::source::table::Node| {
        if nd.ln_f == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            n.ln_eval((ln_v + nd.ln_f).exp())
        }
    };
    Ok(f.ln_integral(&h, LevelBudget::default())?.ln_total)
}

/// Orlicz norm in the form `inf_{v>0} v^{-1}(1 + ∫ N(v|f(x)|) dμ)`.
pub fn orlicz_norm(f: &SampledFunction, n: &NFunction) -> Result<OrliczReport> {
    let amp = f.apply_abs_amplitude(1.0);
    if amp == 0.0 {
        return Ok(OrliczReport { value: 0.0, v_opt: f64::INFINITY });
    }
    let base = f.base();
    let objective = |ln_v: f64| -> f64 {
        match ln_orlicz_integral(&base, n, ln_v.exp()) {
            Ok(li) => {
                let ln1p = if li > 0.0 { li + (-li).exp().ln_1p() } else { li.exp().ln_1p() };
                ln1p - ln_v
            }
            Err(_) => f64::INFINITY,
        }
    };
    let probes = golden::lin_grid(1e-6f64.ln(), 1e6f64.ln(), 49);
    let vals: Vec<f64> = probes.iter().map(|&l| objective(l)).collect();
    let i = (0..vals.len()).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    if !vals[i].is_finite() {
        return Ok(OrliczReport { value: f64::INFINITY, v_opt: f64::NAN });
    }
    let (mut lv, mut best) = (probes[i], vals[i]);
    if i > 0 && i + 1 < probes.len() {
        let (x, v) = golden::minimize(objective, probes[i - 1], probes[i + 1], 1e-12, 200);
        if v < best {
            lv = x;
            best = v;
        }
    }
    Ok(OrliczReport { value: amp * best.exp(), v_opt: lv.exp() / amp })
}
