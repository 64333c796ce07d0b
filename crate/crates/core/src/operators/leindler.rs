//! Weighted cumulative-sum operators `T` and `U` and their witness sequences.
//!
//! `T[x](n) = Σ_{k≥n} x(k)β(k)/Σ(k)` with `Σ(k) = Σ_{j≤k} β(j)`, and
//! `U[x](n) = Σ_{k≤n} x(k)β(k)/σ(k)` with `σ(k) = Σ_{i≥k} β(i)`.

use crate::error::{GlsError, Result};
use crate::numeric::sum::Compensated;
use crate::source::{Coeffs, SeqVariant, Weight, WeightedSequence};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Which {
    T,
    U,
}

fn finite_length(x: &WeightedSequence) -> Result<usize> {
    let n = x.last_index().ok_or_else(|| GlsError::invalid("the operators act on finitely supported sequences; set a truncation"))?;
    if n > 50_000_000 {
        return Err(GlsError::invalid(format!("truncation {n} is too large for explicit evaluation")));
    }
    Ok(n as usize)
}

/// Applies `T` or `U`. The output carries the input weight. For `U` the output is
/// constant `U[x](N)` beyond the support of `x`.
pub fn leindler_apply(x: &WeightedSequence, which: Which) -> Result<WeightedSequence> {
    let n = finite_length(x)?;
    let beta: Vec<f64> = (1..=n as u64).map(|k| x.beta(k)).collect();
    let xs: Vec<f64> = (1..=n as u64).map(|k| x.coeff(k)).collect();
    let out = match which {
        Which::T => {
            let mut big = Compensated::default();
            let mut ratios = vec![0.0; n];
            for k in 0..n {
                big.add(beta[k]);
                let s = big.value();
                ratios[k] = if s > 0.0 { xs[k] * beta[k] / s } else { 0.0 };
            }
            let mut acc = Compensated::default();
            let mut values = vec![0.0; n];
            for k in (0..n).rev() {
                acc.add(ratios[k]);
                values[k] = acc.value();
            }
            WeightedSequence::new(Coeffs::Values { values, beyond: None }, x.weight().clone(), Some(n as u64))?
        }
        Which::U => {
            let tail = x.with_truncation(None).weight_mass(n as u64 + 1, None).map_err(|e| {
                if e.is_divergent() {
                    GlsError::invalid("U needs a summable weight")
                } else {
                    e
                }
            })?;
            let mut small = vec![0.0; n];
            let mut acc = Compensated::default();
            acc.add(tail);
            for k in (0..n).rev() {
                acc.add(beta[k]);
                small[k] = acc.value();
            }
            let mut run = Compensated::default();
            let mut values = vec![0.0; n];
            for k in 0..n {
                if small[k] > 0.0 {
                    run.add(xs[k] * beta[k] / small[k]);
                }
                values[k] = run.value();
            }
            let last = values.last().copied().unwrap_or(0.0);
            let beyond = (tail > 0.0).then_some(last);
            let w = match x.weight() {
                Weight::Values(v) => Weight::Values(v.clone()),
                other => other.clone(),
            };
            WeightedSequence::new(Coeffs::Values { values, beyond }, w, None)?
        }
    };
    Ok(out.with_label(format!("{which:?}[{}]", x.label())))
}

/// Critical exponent of the `T` witness: `(s+1)/θ`.
pub fn t_critical(s: f64, theta: f64) -> f64 {
    (s + 1.0) / theta
}

/// Critical exponent of the `U` witness: `s/θ`.
pub fn u_critical(s: f64, theta: f64) -> f64 {
    s / theta
}

/// `T` witness: `β(n) = n^s`, `x(n) = n^{-θ}`, truncated at `n_max`.
/// Then `T[x](n) ≈ (s+1) n^{-θ}/θ` and `|T[x]|/|x| → (s+1)/θ` as the sums diverge.
pub fn t_witness(s: f64, theta: f64, n_max: u64) -> Result<WeightedSequence> {
    if !(s >= 0.0 && theta > 0.0 && n_max >= 1) {
        return Err(GlsError::invalid("T witness needs s >= 0, theta > 0, N >= 1"));
    }
    let values: Vec<f64> = (1..=n_max).map(|k| (k as f64).powf(-theta)).collect();
    Ok(WeightedSequence::new(
        Coeffs::Values { values, beyond: None },
        Weight::PowerLog { coef: 1.0, decay: -s, log_power: 0.0 },
        Some(n_max),
    )?
    .with_label(format!("leindler_t(s={s},theta={theta},N={n_max})")))
}

/// `U` witness: `β(n) = n^{-1-s}`, `x(n) = n^θ` for `n ≤ n_max`.
/// Then `U[x](n) ≈ s n^θ/θ` and `|U[x]|/|x| → s/θ`.
pub fn u_witness(s: f64, theta: f64, n_max: u64) -> Result<WeightedSequence> {
    if !(s > 0.0 && theta > 0.0 && n_max >= 1) {
        return Err(GlsError::invalid("U witness needs s > 0, theta > 0, N >= 1"));
    }
    let values: Vec<f64> = (1..=n_max).map(|k| (k as f64).powf(theta)).collect();
    Ok(WeightedSequence::new(
        Coeffs::Values { values, beyond: None },
        Weight::PowerLog { coef: 1.0, decay: 1.0 + s, log_power: 0.0 },
        None,
    )?
    .with_label(format!("leindler_u(s={s},theta={theta},N={n_max})")))
}

/// `|Op[x]|_{p,β} / (p |x|_{p,β})`.
pub fn leindler_ratio(x: &WeightedSequence, which: Which, p: f64) -> Result<f64> {
    let y = leindler_apply(x, which)?;
    let num = y.power_sum(p, SeqVariant::Beta)?.value.powf(1.0 / p);
    let den = x.power_sum(p, SeqVariant::Beta)?.value.powf(1.0 / p);
    if den == 0.0 {
        return Err(GlsError::invalid("zero input sequence"));
    }
    Ok(num / (p * den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_of_unit_vector() {
        let e1 = WeightedSequence::from_values(vec![1.0]);
        let t = leindler_apply(&e1, Which::T).unwrap();
        assert_eq!(t.coeff(1), 1.0);
        assert_eq!(t.coeff(2), 0.0);
        assert_eq!(leindler_ratio(&e1, Which::T, 2.0).unwrap(), 0.5);
    }

    #[test]
    fn u_rejects_unit_weight() {
        let e1 = WeightedSequence::from_values(vec![1.0, 2.0]);
        assert!(leindler_apply(&e1, Which::U).is_err());
    }

    #[test]
    fn u_matches_brute_force() {
        let x = u_witness(2.0, 1.0, 50).unwrap();
        let u = leindler_apply(&x, Which::U).unwrap();
        let sigma = |k: u64| (k..2_000_000u64).map(|i| (i as f64).powi(-3)).sum::<f64>();
        let mut run = 0.0;
        for k in 1..=5u64 {
            run += (k as f64) * (k as f64).powi(-3) / sigma(k);
            assert!((u.coeff(k) - run).abs() < 1e-9 * run, "k={k}");
        }
        assert_eq!(u.coeff(1000), u.coeff(50));
    }

    #[test]
    fn witnesses_respect_the_bound() {
        let t = t_witness(2.0, 1.0, 2000).unwrap();
        let u = u_witness(2.0, 1.0, 2000).unwrap();
        for p in [1.2, 1.8, 2.5] {
            assert!(leindler_ratio(&t, Which::T, p).unwrap() <= 1.0);
            assert!(leindler_ratio(&u, Which::U, p).unwrap() <= 1.0);
        }
    }
}
