//! Graded-level summation. Singular ends of an integration range are split into
//! dyadic levels; per-level contributions are accumulated in log space until the
//! remainder is negligible, extrapolated when the decay is exactly geometric, or
//! flagged as divergent when the growth is.

use super::gauss::gl16;
use super::sum::{log_add, log_sum_exp, pairwise};
use crate::error::{GlsError, Result};

/// Budget for level-based integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelBudget {
    pub min_levels: usize,
    pub max_levels: usize,
}

impl Default for LevelBudget {
    fn default() -> Self {
        LevelBudget { min_levels: 60, max_levels: 4096 }
    }
}

/// Result of a log-space level sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSum {
    /// `ln` of the total.
    pub ln_total: f64,
    /// Relative error estimate (rule comparison plus truncated remainder).
    pub rel_error: f64,
    pub levels: usize,
}

const NEGLIGIBLE: f64 = 40.0;
const GEOMETRIC_RUN: usize = 6;
const GEOMETRIC_DRIFT: f64 = 1e-9;
const GROWTH_RUN: usize = 8;
const GROWTH_DRIFT: f64 = 1e-6;

/// Sums per-level `(ln I_hi, ln I_lo)` pairs, where `I_lo` comes from a coarser rule.
pub fn sum_log_levels(mut level: impl FnMut(usize) -> (f64, f64), budget: LevelBudget) -> Result<LevelSum> {
    let mut hi: Vec<f64> = Vec::new();
    let mut lo: Vec<f64> = Vec::new();
    let mut total = f64::NEG_INFINITY;
    for k in 0..budget.max_levels {
        let (h, l) = level(k);
        hi.push(h);
        lo.push(l);
        total = log_add(total, h);
        if k + 1 < budget.min_levels {
            continue;
        }
        if total == f64::NEG_INFINITY {
            return Ok(LevelSum { ln_total: total, rel_error: 0.0, levels: k + 1 });
        }
        let n = hi.len();
        let decreasing = n >= 3 && hi[n - 1] <= hi[n - 2] && hi[n - 2] <= hi[n - 3];
        if h < total - NEGLIGIBLE && decreasing {
            let err = rule_error(&hi, &lo, total) + (h - total).exp();
            return Ok(LevelSum { ln_total: total, rel_error: err, levels: n });
        }
        if n > GROWTH_RUN.max(GEOMETRIC_RUN) + 1 {
            let diffs: Vec<f64> = hi[n - GROWTH_RUN - 1..].windows(2).map(|w| w[1] - w[0]).collect();
            if diffs.iter().all(|d| d.is_finite()) {
                let recent = &diffs[diffs.len() - GEOMETRIC_RUN..];
                let (lo_d, hi_d) = min_max(recent);
                let d = recent[recent.len() - 1];
                if hi_d - lo_d < GEOMETRIC_DRIFT && d < -GROWTH_DRIFT {
                    // Exact geometric decay: close the remainder in closed form.
                    let tail = h + d - (-d.exp_m1()).ln();
                    let full = log_add(total, tail);
                    let err = rule_error(&hi, &lo, full) + (hi_d - lo_d).abs() * (tail - full).exp() * 1e3;
                    return Ok(LevelSum { ln_total: full, rel_error: err, levels: n });
                }
                let (glo, ghi) = min_max(&diffs);
                if glo >= -GROWTH_DRIFT && ghi - glo < GROWTH_DRIFT {
                    return Err(GlsError::divergent(format!(
                        "level contributions grow geometrically (ratio {:.6}) after {n} levels",
                        d.exp()
                    )));
                }
            }
        }
    }
    Err(GlsError::divergent(format!("level sum not settled within {} levels", budget.max_levels)))
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)))
}

fn rule_error(hi: &[f64], lo: &[f64], total: f64) -> f64 {
    let terms: Vec<f64> =
        hi.iter().zip(lo).filter(|(h, _)| h.is_finite()).map(|(&h, &l)| (h - total).exp() * (1.0 - (l - h).exp()).abs()).collect();
    pairwise(&terms)
}

/// `∫_a^b f` with dyadic grading toward each flagged endpoint and 16-point panels.
pub fn integrate_graded(f: &dyn Fn(f64) -> f64, a: f64, b: f64, grade_a: bool, grade_b: bool, levels: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let rule = gl16();
    let mut parts = Vec::new();
    let m = 0.5 * (a + b);
    for (end, other, graded) in [(a, m, grade_a), (b, m, grade_b)] {
        if graded {
            let mut outer = other;
            for _ in 0..levels {
                let inner = end + 0.5 * (outer - end);
                let (lo, hi) = if inner < outer { (inner, outer) } else { (outer, inner) };
                parts.push(rule.integrate(lo, hi, f));
                outer = inner;
            }
        } else {
            let (lo, hi) = if end < other { (end, other) } else { (other, end) };
            let n = 8;
            let w = (hi - lo) / n as f64;
            for i in 0..n {
                parts.push(rule.integrate(lo + i as f64 * w, lo + (i + 1) as f64 * w, f));
            }
        }
    }
    pairwise(&parts)
}

/// `∫_{x0}^{∞} f` for `x0 > 0` on the map `x = x0·e^t`, levels of width `ln 2`
/// until three consecutive levels are below `rel_tol` of the running total.
pub fn integrate_to_infinity(f: &dyn Fn(f64) -> f64, x0: f64, rel_tol: f64, max_levels: usize) -> Result<f64> {
    let rule = gl16();
    let step = std::f64::consts::LN_2;
    let mut parts: Vec<f64> = Vec::new();
    let mut quiet = 0;
    for k in 0..max_levels {
        let (t0, t1) = (k as f64 * step, (k + 1) as f64 * step);
        let v = rule.integrate(t0, t1, |t: f64| {
            let x = x0 * t.exp();
            f(x) * x
        });
        parts.push(v);
        let total = pairwise(&parts);
        if v.abs() <= rel_tol * total.abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
    }
    Err(GlsError::divergent("tail integral did not settle"))
}

/// Log-sum of `ln_w + p·ln_f` over a node list.
pub fn ln_power_sum(nodes: &[(f64, f64)], p: f64) -> f64 {
    let v: Vec<f64> = nodes.iter().map(|&(lw, lf)| if lf == f64::NEG_INFINITY { lf } else { lw + p * lf }).collect();
    log_sum_exp(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_levels_extrapolate_exactly() {
        // Σ_k 2^{-k/4} = 1/(1-2^{-1/4})
        let r = -0.25 * std::f64::consts::LN_2;
        let s = sum_log_levels(|k| (k as f64 * r, k as f64 * r), LevelBudget::default()).unwrap();
        let exact = 1.0 / (1.0 - r.exp());
        assert!((s.ln_total.exp() - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn flat_levels_are_divergent() {
        let r = sum_log_levels(|_| (0.0, 0.0), LevelBudget::default());
        assert!(r.unwrap_err().is_divergent());
    }

    #[test]
    fn polynomial_growth_then_decay_converges() {
        // Σ_k k^{20} e^{-k ln 2}
        let lv = |k: usize| {
            let v = if k == 0 { f64::NEG_INFINITY } else { 20.0 * (k as f64).ln() - k as f64 * std::f64::consts::LN_2 };
            (v, v)
        };
        let s = sum_log_levels(lv, LevelBudget::default()).unwrap();
        let direct: f64 = (1..400).map(|k| lv(k).0.exp()).sum();
        assert!((s.ln_total.exp() - direct).abs() < 1e-10 * direct);
    }

    #[test]
    fn graded_integration_of_log_singularity() {
        // ∫_0^1 ln x dx = -1
        let v = integrate_graded(&|x: f64| x.ln(), 0.0, 1.0, true, false, 60);
        assert!((v + 1.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn tail_integral_of_inverse_square() {
        let v = integrate_to_infinity(&|x: f64| 1.0 / (x * x), 2.0, 1e-15, 200).unwrap();
        assert!((v - 0.5).abs() < 1e-13);
    }
}
