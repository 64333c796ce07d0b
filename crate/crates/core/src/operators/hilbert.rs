//! Periodic and line Hilbert transforms.
//!
//! The periodic transform acts on coefficients: `a cos nx + b sin nx ↦ a sin nx - b cos nx`.
//! The cotangent-kernel form is kept for pointwise values of functions without a
//! closed-form conjugate and as a cross-check.

use super::fourier::fourier_torus;
use crate::error::{GlsError, Result};
use crate::numeric::levels::{integrate_graded, integrate_to_infinity};
use crate::numeric::sum::pairwise;
use crate::source::gdelta::reduce;
use crate::source::{Domain, Family, SampledFunction, TrigPolynomial};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HilbertConfig {
    /// Degree used when the input has no closed-form conjugate.
    pub degree: usize,
    /// Largest allowed `max|c(n)|` over the top quarter of frequencies relative to `max|c(n)|`.
    pub decay_tol: f64,
}

impl Default for HilbertConfig {
    fn default() -> Self {
        HilbertConfig { degree: 256, decay_tol: 0.05 }
    }
}

/// Conjugate of a trigonometric polynomial.
pub fn hilbert_trig(t: &TrigPolynomial) -> TrigPolynomial {
    t.hilbert()
}

/// `H[f]` on the torus. Families with a known conjugate map to it exactly; any
/// other function is expanded to `cfg.degree` and rejected when its
/// coefficients have not decayed by then.
pub fn hilbert_periodic(f: &SampledFunction, cfg: &HilbertConfig) -> Result<SampledFunction> {
    if f.domain() != Domain::Torus {
        return Err(GlsError::SupportMismatch(format!("{} is not a torus function", f.name())));
    }
    if let Some((conj, sign)) = f.family().known_conjugate() {
        let mut out = SampledFunction::new(conj);
        if sign != 1.0 {
            out = out.scale(sign);
        }
        for &a in f.amplitudes() {
            out = out.scale(a);
        }
        return Ok(out);
    }
    let four = fourier_torus(f, cfg.degree)?;
    let peak = four.coeffs.iter().skip(1).map(|c| c.norm()).fold(0.0, f64::max);
    let top = four.coeffs.iter().skip(1 + 3 * cfg.degree / 4).map(|c| c.norm()).fold(0.0, f64::max);
    if peak > 0.0 && top > cfg.decay_tol * peak {
        return Err(GlsError::DegreeInsufficient(format!(
            "coefficients of {} above degree {} are still {:.3e} of the largest; raise the degree",
            f.name(),
            3 * cfg.degree / 4,
            top / peak
        )));
    }
    Ok(SampledFunction::new(Family::Trig(four.partial_sum.hilbert())))
}

/// `H[f](x) = (2π)^{-1}∫_0^π [f(x-t) - f(x+t)] cot(t/2) dt` by graded quadrature,
/// split where `x ± t` meets a singular point of `f`.
pub fn hilbert_periodic_at(f: &SampledFunction, x: f64) -> Result<f64> {
    if f.domain() != Domain::Torus {
        return Err(GlsError::SupportMismatch(format!("{} is not a torus function", f.name())));
    }
    let xr = reduce(x);
    let mut cuts = vec![0.0, PI];
    for s in f.singular_points() {
        let d = reduce(xr - s).abs();
        if d < 1e-300 {
            return Err(GlsError::invalid(format!("x = {x} is a singular point of {}", f.name())));
        }
        cuts.push(d);
    }
    cuts.retain(|c| (0.0..=PI).contains(c));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let g = |t: f64| {
        if t == 0.0 {
            return 0.0;
        }
        (f.eval(xr - t) - f.eval(xr + t)) / (0.5 * t).tan()
    };
    let parts: Vec<f64> = cuts.windows(2).map(|w| graded(&g, w[0], w[1])).collect();
    let v = pairwise(&parts) / (2.0 * PI);
    if !v.is_finite() {
        return Err(GlsError::divergent(format!("H[{}]({x}) is not finite", f.name())));
    }
    Ok(v)
}

/// `∫_a^b g` graded toward both ends, with as many dyadic levels as the
/// floating-point spacing at each end allows (at most 80).
fn graded(g: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let levels = |end: f64| {
        let floor = 64.0 * f64::EPSILON * end.abs();
        if floor == 0.0 {
            80
        } else {
            ((half / floor).log2().floor().max(1.0) as usize).min(80)
        }
    };
    let m = a + half;
    integrate_graded(g, a, m, true, false, levels(a)) + integrate_graded(g, m, b, false, true, levels(b))
}

/// Breakpoints of a line family where the integrand of the principal value
/// changes form.
fn line_breaks(f: &Family) -> Result<Vec<f64>> {
    Ok(match f {
        Family::Indicator01 | Family::TwoPower { .. } => vec![0.0, 1.0],
        Family::InvAbsTail => vec![-1.0, 1.0],
        Family::Gaussian => vec![],
        _ => return Err(GlsError::SupportMismatch(format!("{} is not a decaying line function", f.name()))),
    })
}

/// `H[f](x) = π^{-1} p.v.∫ f(t)/(x-t) dt = π^{-1}∫_0^∞ [f(x-s) - f(x+s)]/s ds`.
/// The symmetric pairing cancels the odd part of `f` around `x`; the remaining
/// integral is split at `s = |x - b|` for each breakpoint `b` and graded there.
pub fn hilbert_line(f: &SampledFunction, x: f64) -> Result<f64> {
    let breaks = line_breaks(f.family())?;
    if breaks.contains(&x) || f.singular_points().contains(&x) {
        return Err(GlsError::invalid(format!("x = {x} is a breakpoint of {}", f.name())));
    }
    let base = f.base();
    let g = |s: f64| {
        if s == 0.0 {
            return 0.0;
        }
        (base.eval(x - s) - base.eval(x + s)) / s
    };
    let mut cuts: Vec<f64> = breaks.iter().map(|b| (x - b).abs()).collect();
    cuts.push(0.0);
    let far = cuts.iter().cloned().fold(1.0, f64::max) * 2.0 + x.abs();
    let far = if matches!(f.family(), Family::Gaussian) { far.max(x.abs() + 16.0) } else { far };
    cuts.push(far);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut parts: Vec<f64> = cuts.windows(2).map(|w| graded(&g, w[0], w[1])).collect();
    if !matches!(f.family(), Family::Gaussian | Family::Indicator01) {
        parts.push(integrate_to_infinity(&g, far, 1e-15, 400)?);
    }
    Ok(f.amplitude() * pairwise(&parts) / PI)
}
