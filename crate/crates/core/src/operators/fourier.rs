//! Fourier coefficients and partial sums on the torus; the Fourier transform,
//! truncated transforms and the partial inverse `S_M` on the line.
//!
//! Torus convention: `c(n) = (2π)^{-1}∫ f(x) e^{inx} dx` and
//! `s_M[f](x) = Σ_{|n|≤M} c(n) e^{-inx}`. Line convention: `F(t) = ∫ f(x) e^{itx} dx`.

use crate::error::{GlsError, Result};
use crate::numeric::gauss::gl16;
use crate::numeric::sum::pairwise;
use crate::source::{Domain, Family, GDeltaKind, SampledFunction, TrigPolynomial};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Dyadic levels used when grading a panel toward a singular endpoint.
const GRADED_LEVELS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffMethod {
    /// Read off a trigonometric polynomial.
    Exact,
    /// Known series coefficients of a registry family.
    ClosedForm,
    /// Graded Gauss quadrature against the normalized measure.
    Quadrature,
}

#[derive(Debug, Clone)]
pub struct TorusFourier {
    /// `c(0..=M)`; `c(-n)` is the conjugate for real input.
    pub coeffs: Vec<Complex64>,
    pub partial_sum: TrigPolynomial,
    pub method: CoeffMethod,
}

/// Coefficients and `s_M` of a trigonometric polynomial.
pub fn fourier_torus_trig(t: &TrigPolynomial, m: usize) -> TorusFourier {
    let s = t.partial_sum(m);
    let mut coeffs = s.complex_coeffs();
    coeffs.resize(m + 1, Complex64::new(0.0, 0.0));
    TorusFourier { coeffs, partial_sum: s, method: CoeffMethod::Exact }
}

/// Coefficients `c(0..=M)` and `s_M[f]` of a torus function.
pub fn fourier_torus(f: &SampledFunction, m: usize) -> Result<TorusFourier> {
    require_torus(f)?;
    let amp = f.amplitude();
    match f.family() {
        Family::Constant => Ok(fourier_torus_trig(&TrigPolynomial::constant(amp), m)),
        Family::Trig(t) => Ok(fourier_torus_trig(&t.scale(amp), m)),
        Family::GDelta { series, kind } => {
            let d = series.delta() as i32;
            let coeffs: Vec<Complex64> = (0..=m)
                .map(|n| {
                    if n == 0 {
                        return Complex64::new(0.0, 0.0);
                    }
                    let nf = n as f64;
                    let b = if d == 0 { 1.0 / nf } else { nf.ln().powi(d) / nf };
                    match kind {
                        GDeltaKind::Sin => Complex64::new(0.0, 0.5 * amp * b),
                        GDeltaKind::Cos => Complex64::new(0.5 * amp * b, 0.0),
                    }
                })
                .collect();
            let partial_sum = TrigPolynomial::from_complex_coeffs(&coeffs);
            Ok(TorusFourier { coeffs, partial_sum, method: CoeffMethod::ClosedForm })
        }
        _ => {
            let coeffs = quadrature_coeffs(f, m)?;
            let partial_sum = TrigPolynomial::from_complex_coeffs(&coeffs);
            Ok(TorusFourier { coeffs, partial_sum, method: CoeffMethod::Quadrature })
        }
    }
}

/// `c(0..=M)` by quadrature, whatever the family. Panels are sized to resolve
/// frequency `M` and graded toward every singular point.
pub fn quadrature_coeffs(f: &SampledFunction, m: usize) -> Result<Vec<Complex64>> {
    require_torus(f)?;
    let mut breaks: Vec<f64> = vec![-PI, PI];
    for s in f.singular_points() {
        let r = crate::source::gdelta::reduce(s);
        if r > -PI && r < PI {
            breaks.push(r);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let singular: Vec<f64> = f.singular_points().iter().map(|s| crate::source::gdelta::reduce(*s)).collect();
    let is_singular = |x: f64| singular.iter().any(|s| (s - x).abs() < 1e-15 || (x.abs() == PI && s.abs() == PI));
    let mut nodes = Vec::new();
    for w in breaks.windows(2) {
        span_nodes(w[0], w[1], is_singular(w[0]), is_singular(w[1]), m as f64, &mut nodes);
    }
    let vals: Vec<(f64, f64)> = nodes.par_iter().map(|&(x, w)| (x, w * f.eval(x) / (2.0 * PI))).collect();
    if vals.iter().any(|(_, v)| !v.is_finite()) {
        return Err(GlsError::divergent(format!("{} is not finite at a quadrature node", f.name())));
    }
    let out = (0..=m)
        .into_par_iter()
        .map(|n| {
            let re: Vec<f64> = vals.iter().map(|&(x, v)| v * (n as f64 * x).cos()).collect();
            let im: Vec<f64> = vals.iter().map(|&(x, v)| v * (n as f64 * x).sin()).collect();
            Complex64::new(pairwise(&re), pairwise(&im))
        })
        .collect();
    Ok(out)
}

fn require_torus(f: &SampledFunction) -> Result<()> {
    if f.domain() != Domain::Torus {
        return Err(GlsError::SupportMismatch(format!("{} lives on the line, not the torus", f.name())));
    }
    Ok(())
}

/// Gauss nodes `(x, w)` for `∫_a^b`, with panels resolving frequency `omega`,
/// geometric chunks when `[a, b]` spans many scales away from zero, and
/// dyadic grading toward flagged endpoints.
fn span_nodes(a: f64, b: f64, grade_a: bool, grade_b: bool, omega: f64, out: &mut Vec<(f64, f64)>) {
    if b <= a {
        return;
    }
    let mut chunks = Vec::new();
    if a > 0.0 && b / a > 4.0 && !grade_a {
        let mut lo = a;
        while lo < b {
            let hi = (2.0 * lo).min(b);
            chunks.push((lo, hi));
            lo = hi;
        }
    } else if b < 0.0 && a / b > 4.0 && !grade_b {
        let mut hi = b;
        while hi > a {
            let lo = (2.0 * hi).max(a);
            chunks.push((lo, hi));
            hi = lo;
        }
        chunks.reverse();
    } else {
        chunks.push((a, b));
    }
    let rule = gl16();
    let last = chunks.len() - 1;
    for (ci, &(lo, hi)) in chunks.iter().enumerate() {
        let n = ((omega * (hi - lo) / PI).ceil() as usize).max(1) + 1;
        let w = (hi - lo) / n as f64;
        for k in 0..n {
            let (pa, pb) = (lo + k as f64 * w, if k + 1 == n { hi } else { lo + (k + 1) as f64 * w });
            let g_lo = grade_a && ci == 0 && k == 0;
            let g_hi = grade_b && ci == last && k + 1 == n;
            if g_lo || g_hi {
                graded_panel(pa, pb, g_lo, g_hi, out);
            } else {
                for i in 0..rule.nodes.len() {
                    out.push(rule.mapped(i, pa, pb));
                }
            }
        }
    }
}

fn graded_panel(a: f64, b: f64, g_lo: bool, g_hi: bool, out: &mut Vec<(f64, f64)>) {
    let rule = gl16();
    let mid = 0.5 * (a + b);
    for (end, other, graded) in [(a, mid, g_lo), (b, mid, g_hi)] {
        if graded {
            let mut outer = other;
            for _ in 0..GRADED_LEVELS {
                let inner = end + 0.5 * (outer - end);
                if inner == outer {
                    break;
                }
                let (lo, hi) = if inner < outer { (inner, outer) } else { (outer, inner) };
                for i in 0..rule.nodes.len() {
                    out.push(rule.mapped(i, lo, hi));
                }
                outer = inner;
            }
        } else {
            let (lo, hi) = if end < other { (end, other) } else { (other, end) };
            for i in 0..rule.nodes.len() {
                out.push(rule.mapped(i, lo, hi));
            }
        }
    }
}

fn integrate_span(h: &(dyn Fn(f64) -> f64 + Sync), a: f64, b: f64, grade_a: bool, grade_b: bool, omega: f64) -> f64 {
    let mut nodes = Vec::new();
    span_nodes(a, b, grade_a, grade_b, omega, &mut nodes);
    let terms: Vec<f64> = nodes.iter().map(|&(x, w)| w * h(x)).collect();
    pairwise(&terms)
}

/// Support layout of a line family: finite pieces (with singular-end flags) and
/// half-line tails `(x0, direction)`.
struct LinePlan {
    pieces: Vec<(f64, f64, bool, bool)>,
    tails: Vec<(f64, f64)>,
    even: bool,
}

fn line_plan(f: &SampledFunction) -> Result<LinePlan> {
    Ok(match f.family() {
        Family::Indicator01 => LinePlan { pieces: vec![(0.0, 1.0, false, false)], tails: vec![], even: false },
        Family::InvAbsTail => LinePlan { pieces: vec![], tails: vec![(1.0, 1.0), (1.0, -1.0)], even: true },
        Family::TwoPower { .. } => LinePlan { pieces: vec![(0.0, 1.0, true, false)], tails: vec![(1.0, 1.0)], even: false },
        Family::Gaussian => LinePlan {
            pieces: vec![(-14.0, -1.0, false, false), (-1.0, 1.0, false, false), (1.0, 14.0, false, false)],
            tails: vec![],
            even: true,
        },
        _ => return Err(GlsError::SupportMismatch(format!("{} is not a line function", f.name()))),
    })
}

/// Wynn's epsilon algorithm on a sequence of partial sums; returns the last
/// even-column entry.
pub fn wynn_epsilon(s: &[f64]) -> f64 {
    let n = s.len();
    if n < 3 {
        return s.last().copied().unwrap_or(0.0);
    }
    let mut prev = vec![0.0; n];
    let mut cur = s.to_vec();
    let mut best = s[n - 1];
    for k in 1..n {
        let len = cur.len() - 1;
        if len == 0 {
            break;
        }
        let mut next = Vec::with_capacity(len);
        for j in 0..len {
            let d = cur[j + 1] - cur[j];
            if d == 0.0 {
                return if k % 2 == 1 { cur[j + 1] } else { best };
            }
            next.push(prev[j + 1] + 1.0 / d);
        }
        if k % 2 == 0 {
            let v = *next.last().expect("non-empty column");
            if v.is_finite() {
                best = v;
            }
        }
        prev = cur;
        cur = next;
    }
    best
}

/// `∫_{x0}^{±∞} h` where `h` oscillates with zeros at `phase + kπ/omega`.
/// Half-period windows are summed and accelerated; the window count doubles
/// until two accelerated values agree.
fn oscillatory_tail(h: &(dyn Fn(f64) -> f64 + Sync), x0: f64, dir: f64, omega: f64, phase: f64) -> Result<f64> {
    let half = PI / omega;
    // First zero strictly beyond x0 in direction dir.
    let first = {
        let k = if dir > 0.0 { ((x0 - phase) / half).floor() + 1.0 } else { ((x0 - phase) / half).ceil() - 1.0 };
        phase + k * half
    };
    let window = |a: f64, b: f64| -> f64 {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        integrate_span(h, lo, hi, false, false, omega)
    };
    let mut sums = vec![window(x0, first)];
    let mut edge = first;
    let mut prev_est = f64::NAN;
    let mut count = 32;
    while count <= 4096 {
        while sums.len() < count {
            let next = edge + dir * half;
            let last = *sums.last().expect("non-empty");
            sums.push(last + window(edge, next));
            edge = next;
        }
        let k = sums.len();
        let est = wynn_epsilon(&sums[k.saturating_sub(24)..]);
        if (est - prev_est).abs() <= 1e-11 * est.abs().max(1e-300) + 1e-300 {
            return Ok(est);
        }
        prev_est = est;
        count *= 2;
    }
    Err(GlsError::divergent("oscillatory tail did not stabilize"))
}

/// `∫_{x0}^{±∞} h` for a non-oscillating integrand.
fn plain_tail(h: &(dyn Fn(f64) -> f64 + Sync), x0: f64, dir: f64) -> Result<f64> {
    crate::numeric::levels::integrate_to_infinity(&|y: f64| h(dir * y), x0.abs(), 1e-15, 400)
}

/// `∫_ℝ h` over the support of `f`, where `h` oscillates with frequency `omega`
/// and zeros at `phase + kπ/omega` in the tails.
fn integrate_line(f: &SampledFunction, h: &(dyn Fn(f64) -> f64 + Sync), omega: f64, phase: f64, extra_break: Option<f64>) -> Result<f64> {
    let plan = line_plan(f)?;
    let mut parts = Vec::new();
    for &(a, b, ga, gb) in &plan.pieces {
        match extra_break.filter(|x| *x > a && *x < b) {
            Some(x) => {
                parts.push(integrate_span(h, a, x, ga, false, omega));
                parts.push(integrate_span(h, x, b, false, gb, omega));
            }
            None => parts.push(integrate_span(h, a, b, ga, gb, omega)),
        }
    }
    for &(x0, dir) in &plan.tails {
        let start = dir * x0;
        // Move past an interior break so the tail integrand is smooth.
        let start = match extra_break {
            Some(x) if (x - start) * dir > 0.0 => {
                let s = x + dir;
                let (lo, hi) = if start < s { (start, s) } else { (s, start) };
                parts.push(integrate_span(h, lo, x.clamp(lo, hi), false, false, omega));
                parts.push(integrate_span(h, x.clamp(lo, hi), hi, false, false, omega));
                s
            }
            _ => start,
        };
        let v = if omega > 0.0 { oscillatory_tail(h, start, dir, omega, phase)? } else { plain_tail(h, start, dir)? };
        parts.push(v);
    }
    let total = pairwise(&parts);
    if !total.is_finite() {
        return Err(GlsError::divergent(format!("integral over the support of {} is not finite", f.name())));
    }
    Ok(total)
}

/// `F[f](t) = ∫ f(x) e^{itx} dx`. The oscillatory tails are summed window by
/// window with acceleration, which also defines the transform of slowly
/// decaying functions such as `|x|^{-1} 1{|x| ≥ 1}` for `t ≠ 0`.
pub fn fourier_line(f: &SampledFunction, t: f64) -> Result<Complex64> {
    if !t.is_finite() {
        return Err(GlsError::invalid("frequency must be finite"));
    }
    let plan = line_plan(f)?;
    let base = f.base();
    let w = t.abs();
    let re = integrate_line(&base, &|x: f64| base.eval(x) * (t * x).cos(), w, 0.5 * PI / w.max(f64::MIN_POSITIVE), None)?;
    let im = if plan.even { 0.0 } else { integrate_line(&base, &|x: f64| base.eval(x) * (t * x).sin(), w, 0.0, None)? };
    Ok(Complex64::new(re, im) * f.amplitude())
}

/// Truncated transform `∫_{-a}^{a} f(t) e^{itx} dt`.
pub fn truncated_fourier(f: &SampledFunction, a: f64, x: f64) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(GlsError::invalid("truncation must be positive"));
    }
    let plan = line_plan(f)?;
    let base = f.base();
    let w = x.abs();
    let mut spans: Vec<(f64, f64, bool, bool)> = Vec::new();
    for &(lo, hi, ga, gb) in &plan.pieces {
        let (l, h) = (lo.max(-a), hi.min(a));
        if l < h {
            spans.push((l, h, ga && l == lo, gb && h == hi));
        }
    }
    for &(x0, dir) in &plan.tails {
        if x0 < a {
            spans.push(if dir > 0.0 { (x0, a, false, false) } else { (-a, -x0, false, false) });
        }
    }
    let mut re = Vec::new();
    let mut im = Vec::new();
    for (l, h, ga, gb) in spans {
        re.push(integrate_span(&|s: f64| base.eval(s) * (s * x).cos(), l, h, ga, gb, w));
        if !plan.even {
            im.push(integrate_span(&|s: f64| base.eval(s) * (s * x).sin(), l, h, ga, gb, w));
        }
    }
    Ok(Complex64::new(pairwise(&re), pairwise(&im)) * f.amplitude())
}

/// Partial inverse `S_M f(x) = ∫ f(y) sin(M(y-x))/(π(y-x)) dy`, the inverse
/// transform of `F` restricted to `[-M, M]` with the `(2π)^{-1}` factor.
pub fn partial_inverse_line(f: &SampledFunction, m: f64, x: f64) -> Result<f64> {
    if !(m > 0.0) {
        return Err(GlsError::invalid("M must be positive"));
    }
    let base = f.base();
    let kernel = move |y: f64| {
        let d = y - x;
        if d == 0.0 {
            m / PI
        } else {
            (m * d).sin() / (PI * d)
        }
    };
    let v = integrate_line(&base, &|y: f64| base.eval(y) * kernel(y), m, x, Some(x))?;
    Ok(v * f.amplitude())
}

/// `|F[f]|_p = (∫|F(t)|^p dt)^{1/p}` for line families whose transform is
/// integrable at the needed rate: the Gaussian (direct panels) and the
/// indicator of `(0,1)` (periods of `|F|` summed to `T = 400π`, beyond which
/// the leading term `2|sin(t/2)|/t` is integrated in closed form on average).
pub fn fourier_line_lp(f: &SampledFunction, p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(GlsError::Inadmissible { p, detail: "needs finite p >= 1".into() });
    }
    let base = f.base();
    let rule = gl16();
    let abs_f = |t: f64| fourier_line(&base, t).map(|z| z.norm());
    let (nodes, tail): (Vec<(f64, f64)>, f64) = match base.family() {
        Family::Gaussian => {
            let mut v = Vec::new();
            for k in 0..40 {
                for i in 0..rule.nodes.len() {
                    v.push(rule.mapped(i, k as f64, k as f64 + 1.0));
                }
            }
            (v, 0.0)
        }
        Family::Indicator01 => {
            if p <= 1.0 {
                return Err(GlsError::divergent("the transform of an indicator is not integrable"));
            }
            let periods = 200;
            let mut v = Vec::new();
            for k in 0..2 * periods {
                let (a, b) = (PI * k as f64, PI * (k + 1) as f64);
                for i in 0..rule.nodes.len() {
                    v.push(rule.mapped(i, a, b));
                }
            }
            let t_end = 2.0 * PI * periods as f64;
            let mean_sin_p = statrs::function::gamma::gamma(0.5 * (p + 1.0)) / (PI.sqrt() * statrs::function::gamma::gamma(0.5 * p + 1.0));
            (v, 2f64.powf(p) * mean_sin_p * t_end.powf(1.0 - p) / (p - 1.0))
        }
        _ => {
            return Err(GlsError::Unsupported(format!("|F[{}]|_p is not available", base.name())));
        }
    };
    let vals: Vec<Result<f64>> = nodes.par_iter().map(|&(t, w)| abs_f(t).map(|a| w * a.powf(p))).collect();
    let mut terms = Vec::with_capacity(vals.len());
    for v in vals {
        terms.push(v?);
    }
    // |F(-t)| = |F(t)| for real f.
    let half = pairwise(&terms) + tail;
    Ok(f.apply_abs_amplitude((2.0 * half).powf(1.0 / p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::special::cos_integral;
    use crate::source::Family;

    fn line(f: Family) -> SampledFunction {
        SampledFunction::new(f)
    }

    #[test]
    fn partial_sum_reproduces_trig() {
        let t = TrigPolynomial::cos(3);
        let out = fourier_torus_trig(&t, 5);
        assert_eq!(out.partial_sum, t);
        assert_eq!(out.coeffs.len(), 6);
        assert_eq!(out.coeffs[3], Complex64::new(0.5, 0.0));
    }

    #[test]
    fn sine_family_coefficients_two_routes() {
        let f = SampledFunction::new(Family::gdelta(1, GDeltaKind::Sin));
        let closed = fourier_torus(&f, 6).unwrap();
        assert_eq!(closed.method, CoeffMethod::ClosedForm);
        let quad = quadrature_coeffs(&f, 6).unwrap();
        for (n, (c, q)) in closed.coeffs.iter().zip(&quad).enumerate().skip(1) {
            assert!((c - q).norm() < 1e-10, "n={n}: {c} vs {q}");
        }
        assert!(quad[0].norm() < 1e-12);
    }

    #[test]
    fn log_power_coefficients() {
        // (2π)^{-1}∫_0^{2π} |ln(x/2π)| cos(nx) dx = Si(2πn)/(2πn) for n ≥ 1, mean 1.
        let f = SampledFunction::new(Family::LogPower { m: 1.0 });
        let c = quadrature_coeffs(&f, 3).unwrap();
        assert!((c[0].re - 1.0).abs() < 1e-12, "{}", c[0]);
        // Si(2π) = 1.4181515761326284 (frozen).
        let expect = 1.418_151_576_132_628_4 / (2.0 * PI);
        assert!((c[1].re - expect).abs() < 1e-10, "{} vs {expect}", c[1].re);
    }

    #[test]
    fn gaussian_transform_and_symmetry() {
        let g = line(Family::Gaussian);
        for t in [0.0, 0.7, 3.0] {
            let v = fourier_line(&g, t).unwrap();
            let exact = (2.0 * PI).sqrt() * (-0.5 * t * t).exp();
            assert!((v.re - exact).abs() < 1e-13, "t={t}");
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn indicator_transform() {
        let f = line(Family::Indicator01);
        for t in [0.5, 2.0, 40.0] {
            let v = fourier_line(&f, t).unwrap();
            let exact = (Complex64::new(0.0, t).exp() - 1.0) / Complex64::new(0.0, t);
            assert!((v - exact).norm() < 1e-13, "t={t}: {v} vs {exact}");
        }
    }

    #[test]
    fn inverse_tail_transform_is_cosine_integral() {
        let f = line(Family::InvAbsTail);
        for t in [1e-4, 0.1, 1.0, 5.0] {
            let v = fourier_line(&f, t).unwrap().re;
            let exact = -2.0 * cos_integral(t);
            assert!((v - exact).abs() < 1e-8 * exact.abs().max(1.0), "t={t}: {v} vs {exact}");
        }
        assert!(fourier_line(&f, 0.0).unwrap_err().is_divergent());
    }

    #[test]
    fn truncated_transform_of_indicator_saturates() {
        let f = line(Family::Indicator01);
        assert!((truncated_fourier(&f, 0.5, 0.0).unwrap().re - 0.5).abs() < 1e-15);
        assert!((truncated_fourier(&f, 3.0, 0.0).unwrap().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_inverse_of_gaussian_matches_frequency_side() {
        let g = line(Family::Gaussian);
        let (m, x) = (1.5, 0.4);
        let direct = partial_inverse_line(&g, m, x).unwrap();
        // (2π)^{-1}∫_{-M}^{M} √(2π) e^{-t²/2} cos(tx) dt
        let rule = gl16();
        let freq: f64 = (0..8)
            .map(|k| {
                let (a, b) = (-m + k as f64 * m / 4.0, -m + (k + 1) as f64 * m / 4.0);
                rule.integrate(a, b, |t| (2.0 * PI).sqrt() * (-0.5 * t * t).exp() * (t * x).cos())
            })
            .sum::<f64>()
            / (2.0 * PI);
        assert!((direct - freq).abs() < 1e-12, "{direct} vs {freq}");
    }

    #[test]
    fn parseval_for_gaussian() {
        let g = line(Family::Gaussian);
        let lhs = fourier_line_lp(&g, 2.0).unwrap().powi(2);
        let rhs = 2.0 * PI * PI.sqrt();
        assert!((lhs - rhs).abs() < 1e-10 * rhs);
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        // 1 - 1/2 + 1/3 - ... = ln 2
        let mut s = 0.0;
        let sums: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert!((wynn_epsilon(&sums) - 2f64.ln()).abs() < 1e-12);
    }
}
