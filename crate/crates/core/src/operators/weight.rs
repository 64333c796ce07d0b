//! The weight operator `U_γ[f](x) = |x|^{-γ} f(x)` and the weighted coefficient
//! norm `|λ|^{(γ)}_p = [Σ n^{p(1+γ)-2} |λ(n)|^p]^{1/p}` on `p ∈ (1, 1/γ)`.

use crate::error::{GlsError, Result};
use crate::norms::lp_continuous;
use crate::numeric::sum::pairwise;
use crate::numeric::PowerLog;
use crate::source::{Family, GDeltaKind, SampledFunction, TrigPolynomial};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Coefficient sequence `λ(n)`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum Lambda {
    Values(Vec<f64>),
    /// `λ(n) = n^{-decay} (ln n)^{log_power}`.
    PowerLog {
        decay: f64,
        log_power: f64,
    },
}

/// Interleaves cosine and sine coefficients: `λ(2k+1) = a(k)`, `λ(2k) = b(k)`.
/// `b` starts at `b(1)`.
pub fn interleave(a: &[f64], b_from_one: &[f64]) -> Vec<f64> {
    let len = (2 * a.len()).saturating_sub(1).max(2 * b_from_one.len());
    (1..=len)
        .map(|n| {
            let k = n / 2;
            if n % 2 == 1 {
                a.get(k).copied().unwrap_or(0.0)
            } else {
                b_from_one.get(k - 1).copied().unwrap_or(0.0)
            }
        })
        .collect()
}

fn check_non_increasing(v: &[f64], what: &str) -> Result<()> {
    if let Some(i) = v.windows(2).position(|w| w[1] > w[0]) {
        return Err(GlsError::invalid(format!("{what} must be non-increasing for the weighted bound; {what}[{}] < {what}[{}]", i, i + 1)));
    }
    Ok(())
}

fn check_range(gamma: f64, p: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(GlsError::invalid(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    if !(p > 1.0 && p < 1.0 / gamma) {
        return Err(GlsError::Inadmissible { p, detail: format!("the weighted norm needs p in (1, {})", 1.0 / gamma) });
    }
    Ok(())
}

/// `|λ|^{(γ)}_p`.
pub fn gamma_norm(lambda: &Lambda, gamma: f64, p: f64) -> Result<f64> {
    check_range(gamma, p)?;
    let e = p * (1.0 + gamma) - 2.0;
    let s = match lambda {
        Lambda::Values(v) => {
            let terms: Vec<f64> = v.iter().enumerate().map(|(i, l)| ((i + 1) as f64).powf(e) * l.abs().powf(p)).collect();
            pairwise(&terms)
        }
        Lambda::PowerLog { decay, log_power } => PowerLog::new(p * decay - e, p * log_power).tail_sum(1)?.value,
    };
    Ok(s.powf(1.0 / p))
}

/// `U_γ[f]` as a torus function.
pub fn u_gamma(f: &SampledFunction, gamma: f64) -> Result<SampledFunction> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(GlsError::invalid(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    let mut out = SampledFunction::new(Family::PowerWeighted { inner: Arc::new(f.family().clone()), gamma });
    for &a in f.amplitudes() {
        out = out.scale(a);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct WeightGamma {
    pub lambda: Vec<f64>,
    pub function: SampledFunction,
    pub weighted: SampledFunction,
}

/// Builds `λ`, `f = a(0)/2 + Σ a(k) cos kx + b(k) sin kx` and `U_γ[f]` from
/// coefficient lists that are non-increasing from index 1 on.
pub fn weight_gamma_apply(a: &[f64], b_from_one: &[f64], gamma: f64) -> Result<WeightGamma> {
    check_non_increasing(a.get(1..).unwrap_or(&[]), "a")?;
    check_non_increasing(b_from_one, "b")?;
    let t = TrigPolynomial::new(a.to_vec(), b_from_one.to_vec())?;
    let function = SampledFunction::new(Family::Trig(t));
    let weighted = u_gamma(&function, gamma)?;
    Ok(WeightGamma { lambda: interleave(a, b_from_one), function, weighted })
}

/// One point of the blow-up profile of `|U_γ g|_p / |λ|^{(γ)}_p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlowupPoint {
    pub p: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowupReport {
    pub gamma: f64,
    pub critical: f64,
    pub points: Vec<BlowupPoint>,
    /// `-d ln(ratio)/d ln(p₀ - p)` between the two points closest to `p₀`.
    pub exponent: f64,
}

/// Blow-up of the weighted operator norm on the cosine family
/// `Σ n^{-1}(ln n)^Δ cos nx`, with `λ(n) = n^{-1}(ln n)^Δ`, at
/// `p = p₀(1 - ε)` for each `ε`. The predicted exponent is 1.
pub fn gamma_blowup(delta: u32, gamma: f64, eps: &[f64]) -> Result<BlowupReport> {
    if eps.len() < 2 || eps.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
        return Err(GlsError::invalid("need at least two offsets in (0, 1)"));
    }
    let g = SampledFunction::new(Family::gdelta(delta, GDeltaKind::Cos));
    let u = u_gamma(&g, gamma)?;
    let lambda = Lambda::PowerLog { decay: 1.0, log_power: delta as f64 };
    let p0 = 1.0 / gamma;
    let mut points = Vec::new();
    for &e in eps {
        let p = p0 * (1.0 - e);
        let lhs = lp_continuous(&u, p, false)?.value;
        let rhs = gamma_norm(&lambda, gamma, p)?;
        points.push(BlowupPoint { p, lhs, rhs, ratio: lhs / rhs });
    }
    points.sort_by(|a, b| a.p.total_cmp(&b.p));
    let n = points.len();
    let (a, b) = (points[n - 2], points[n - 1]);
    let exponent = -(b.ratio / a.ratio).ln() / ((p0 - b.p) / (p0 - a.p)).ln();
    Ok(BlowupReport { gamma, critical: p0, points, exponent })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interleave_order() {
        assert_eq!(interleave(&[1.0, 3.0, 5.0], &[2.0, 4.0]), vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(interleave(&[1.0], &[2.0, 4.0]), vec![1.0, 2.0, 0.0, 4.0]);
    }

    #[test]
    fn unit_vector_has_unit_norm() {
        for p in [1.1, 1.5, 1.9] {
            assert_eq!(gamma_norm(&Lambda::Values(vec![1.0]), 0.5, p).unwrap(), 1.0);
        }
        assert!(gamma_norm(&Lambda::Values(vec![1.0]), 0.5, 2.0).is_err());
    }

    #[test]
    fn power_log_matches_direct_sum() {
        // λ(n) = n^{-2}: Σ n^{p(1+γ)-2-2p} = ζ(2 + p - pγ).
        let (g, p) = (0.5, 1.5);
        let v = gamma_norm(&Lambda::PowerLog { decay: 2.0, log_power: 0.0 }, g, p).unwrap();
        let z = crate::numeric::special::zeta(2.0 + p - p * g);
        assert!((v - z.powf(1.0 / p)).abs() < 1e-12);
    }

    #[test]
    fn pointwise_weight() {
        let w = weight_gamma_apply(&[0.0, 1.0], &[], 0.5).unwrap();
        assert!((w.weighted.eval(1.0) - 1f64.cos()).abs() < 1e-15);
        assert!((w.weighted.eval(0.25) - 2.0 * 0.25f64.cos()).abs() < 1e-15);
        assert!(weight_gamma_apply(&[0.0, 1.0, 2.0], &[], 0.5).is_err());
    }

    #[test]
    fn cosine_family_blowup_exponent_near_one() {
        let r = gamma_blowup(1, 0.5, &[0.1, 0.05, 0.02]).unwrap();
        assert!((r.exponent - 1.0).abs() < 0.2, "{r:?}");
        assert!(r.points.windows(2).all(|w| w[1].ratio > w[0].ratio));
    }
}
