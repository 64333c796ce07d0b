//! Weighted sequences `c(n)`, `n ≥ 1`, with weight `β(n)` and optional truncation.

use crate::error::{GlsError, Result};
use crate::numeric::powerlog::{Estimate, PowerLog};
use crate::numeric::sum::{pairwise, Compensated};

#[derive(Debug, Clone, PartialEq)]
pub enum Coeffs {
    /// `c(n) = n^{-decay} (ln n)^{log_power}`.
    PowerLog { decay: f64, log_power: f64 },
    /// Explicit `c(1), c(2), …`; beyond the list `c(n) = beyond` (zero when `None`).
    Values { values: Vec<f64>, beyond: Option<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    Unit,
    /// `β(n) = coef · n^{-decay} (ln n)^{log_power}`.
    PowerLog {
        coef: f64,
        decay: f64,
        log_power: f64,
    },
    /// Explicit `β(1), β(2), …`, zero beyond the list.
    Values(Vec<f64>),
}

/// Which `p`-norm of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SeqVariant {
    /// `Σ |c(n)|^p`.
    Plain,
    /// `Σ |c(n)|^p (n^{p-2} + 1)`, for `p ≥ 2`.
    Nu,
    /// `Σ |c(n)|^p β(n)`.
    Beta,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSequence {
    coeffs: Coeffs,
    weight: Weight,
    truncation: Option<u64>,
    amps: Vec<f64>,
    label: String,
}

/// Weight written as a sum of power-log pieces or as explicit values.
enum Pieces {
    Closed(Vec<(f64, f64, f64)>),
    Explicit(Vec<f64>),
}

impl WeightedSequence {
    pub fn new(coeffs: Coeffs, weight: Weight, truncation: Option<u64>) -> Result<Self> {
        match &weight {
            Weight::PowerLog { coef, .. } if !(*coef > 0.0) => return Err(GlsError::invalid("weight coefficient must be positive")),
            Weight::Values(v) if v.iter().any(|b| !(*b >= 0.0)) || v.iter().all(|b| *b == 0.0) => {
                return Err(GlsError::invalid("weights must be non-negative and not all zero"))
            }
            _ => {}
        }
        if let Coeffs::Values { values, beyond } = &coeffs {
            if values.iter().chain(beyond.iter()).any(|v| !v.is_finite()) {
                return Err(GlsError::invalid("coefficients must be finite"));
            }
        }
        if truncation == Some(0) {
            return Err(GlsError::invalid("truncation must be at least 1"));
        }
        Ok(WeightedSequence { coeffs, weight, truncation, amps: Vec::new(), label: String::new() })
    }

    /// Finite list with unit weight.
    pub fn from_values(values: Vec<f64>) -> Self {
        WeightedSequence {
            coeffs: Coeffs::Values { values, beyond: None },
            weight: Weight::Unit,
            truncation: None,
            amps: Vec::new(),
            label: String::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn truncation(&self) -> Option<u64> {
        self.truncation
    }

    pub fn with_truncation(&self, n: Option<u64>) -> Self {
        WeightedSequence { truncation: n, ..self.clone() }
    }

    pub fn with_weight(&self, weight: Weight) -> Self {
        WeightedSequence { weight, ..self.clone() }
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.amps.push(s);
        out
    }

    pub fn base(&self) -> Self {
        WeightedSequence { amps: Vec::new(), ..self.clone() }
    }

    pub fn apply_abs_amplitude(&self, v: f64) -> f64 {
        self.amps.iter().fold(v, |acc, s| s.abs() * acc)
    }

    /// Last index with a possibly non-zero coefficient, if finite.
    pub fn last_index(&self) -> Option<u64> {
        match (&self.coeffs, self.truncation) {
            (_, Some(n)) => Some(match &self.coeffs {
                Coeffs::Values { values, beyond: None } => n.min(values.len() as u64),
                _ => n,
            }),
            (Coeffs::Values { values, beyond: None }, None) => Some(values.len() as u64),
            _ => None,
        }
    }

    fn base_coeff(&self, n: u64) -> f64 {
        if n == 0 || self.truncation.is_some_and(|t| n > t) {
            return 0.0;
        }
        match &self.coeffs {
            Coeffs::PowerLog { decay, log_power } => {
                let y = n as f64;
                if *log_power == 0.0 {
                    y.powf(-decay)
                } else {
                    y.powf(-decay) * y.ln().powf(*log_power)
                }
            }
            Coeffs::Values { values, beyond } => {
                let i = (n - 1) as usize;
                if i < values.len() {
                    values[i]
                } else {
                    beyond.unwrap_or(0.0)
                }
            }
        }
    }

    /// `c(n)` including amplitudes.
    pub fn coeff(&self, n: u64) -> f64 {
        self.amps.iter().fold(self.base_coeff(n), |acc, s| s * acc)
    }

    /// `β(n)`.
    pub fn beta(&self, n: u64) -> f64 {
        if n == 0 {
            return 0.0;
        }
        match &self.weight {
            Weight::Unit => 1.0,
            Weight::PowerLog { coef, decay, log_power } => {
                let y = n as f64;
                let l = if *log_power == 0.0 { 1.0 } else { y.ln().powf(*log_power) };
                coef * y.powf(-decay) * l
            }
            Weight::Values(v) => v.get((n - 1) as usize).copied().unwrap_or(0.0),
        }
    }

    fn pieces(&self, p: f64, variant: SeqVariant) -> Pieces {
        match variant {
            SeqVariant::Plain => Pieces::Closed(vec![(1.0, 0.0, 0.0)]),
            SeqVariant::Nu => Pieces::Closed(vec![(1.0, 2.0 - p, 0.0), (1.0, 0.0, 0.0)]),
            SeqVariant::Beta => match &self.weight {
                Weight::Unit => Pieces::Closed(vec![(1.0, 0.0, 0.0)]),
                Weight::PowerLog { coef, decay, log_power } => Pieces::Closed(vec![(*coef, *decay, *log_power)]),
                Weight::Values(v) => Pieces::Explicit(v.clone()),
            },
        }
    }

    /// Weight of index `n` under a variant.
    pub fn variant_weight(&self, n: u64, p: f64, variant: SeqVariant) -> f64 {
        match variant {
            SeqVariant::Plain => 1.0,
            SeqVariant::Nu => (n as f64).powf(p - 2.0) + 1.0,
            SeqVariant::Beta => self.beta(n),
        }
    }

    /// `Σ_n |c(n)|^p w(n)` for the base sequence, with an error estimate.
    pub fn power_sum(&self, p: f64, variant: SeqVariant) -> Result<Estimate> {
        if !(p >= 1.0) {
            return Err(GlsError::Inadmissible { p, detail: "sequence norms need p >= 1".into() });
        }
        if variant == SeqVariant::Nu && p < 2.0 {
            return Err(GlsError::Inadmissible { p, detail: "the nu-norm is defined for p >= 2".into() });
        }
        let pieces = self.pieces(p, variant);
        let mut acc = Compensated::default();
        let mut err = 0.0;
        match (&self.coeffs, pieces) {
            (Coeffs::PowerLog { decay, log_power }, Pieces::Closed(ws)) => {
                for (coef, d, l) in ws {
                    let f = PowerLog::new(p * decay + d, p * log_power + l);
                    let e = sum_range(f, 1, self.truncation)?;
                    acc.add(coef * e.value);
                    err += coef * e.error;
                }
            }
            (Coeffs::PowerLog { .. }, Pieces::Explicit(w)) => {
                let n = self.truncation.map_or(w.len() as u64, |t| t.min(w.len() as u64));
                let terms: Vec<f64> = (1..=n).map(|k| self.base_coeff(k).abs().powf(p) * w[(k - 1) as usize]).collect();
                acc.add(pairwise(&terms));
            }
            (Coeffs::Values { values, beyond }, pieces) => {
                let len = match self.truncation {
                    Some(t) => (values.len() as u64).min(t),
                    None => values.len() as u64,
                };
                let terms: Vec<f64> =
                    (1..=len).map(|k| values[(k - 1) as usize].abs().powf(p) * self.variant_weight(k, p, variant)).collect();
                acc.add(pairwise(&terms));
                if let Some(b) = beyond.filter(|b| *b != 0.0) {
                    let reach = self.truncation;
                    if reach.is_none_or(|t| t > len) {
                        let from = len + 1;
                        let mass = match pieces {
                            Pieces::Closed(ws) => {
                                let mut m = 0.0;
                                for (coef, d, l) in ws {
                                    let e = sum_range(PowerLog::new(d, l), from, reach)?;
                                    m += coef * e.value;
                                    err += b.abs().powf(p) * coef * e.error;
                                }
                                m
                            }
                            Pieces::Explicit(w) => {
                                w.iter().skip(from as usize - 1).take(reach.map_or(usize::MAX, |t| (t - len) as usize)).sum()
                            }
                        };
                        acc.add(b.abs().powf(p) * mass);
                    }
                }
            }
        }
        let value = acc.value();
        if !value.is_finite() {
            return Err(GlsError::divergent("sequence power sum overflowed"));
        }
        Ok(Estimate { value, error: err })
    }

    /// `Σ_{n ∈ [from, to]} β(n)`; `to = None` is the infinite tail.
    pub fn weight_mass(&self, from: u64, to: Option<u64>) -> Result<f64> {
        let to = match (to, self.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if to.is_some_and(|t| t < from) {
            return Ok(0.0);
        }
        match &self.weight {
            Weight::Unit => match to {
                Some(t) => Ok((t - from + 1) as f64),
                None => Err(GlsError::divergent("unit weight has infinite mass")),
            },
            Weight::PowerLog { coef, decay, log_power } => Ok(coef * sum_range(PowerLog::new(*decay, *log_power), from, to)?.value),
            Weight::Values(v) => {
                let hi = to.map_or(v.len() as u64, |t| t.min(v.len() as u64));
                Ok((from..=hi).map(|k| v[(k - 1) as usize]).sum())
            }
        }
    }

    /// `μ_β{n : |c(n)| > u}`.
    pub fn tail(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0) {
            return Err(GlsError::invalid("tail level must be non-negative"));
        }
        let amp = self.apply_abs_amplitude(1.0);
        if amp == 0.0 {
            return Ok(0.0);
        }
        let u = u / amp;
        match &self.coeffs {
            Coeffs::Values { values, beyond } => {
                let len = self.truncation.map_or(values.len() as u64, |t| t.min(values.len() as u64));
                let mut acc = Compensated::default();
                for k in 1..=len {
                    if values[(k - 1) as usize].abs() > u {
                        acc.add(self.beta(k));
                    }
                }
                if beyond.is_some_and(|b| b.abs() > u) && self.truncation.is_none_or(|t| t > len) {
                    acc.add(self.weight_mass(len + 1, None)?);
                }
                Ok(acc.value())
            }
            Coeffs::PowerLog { decay, log_power } => {
                let (d, q) = (*decay, *log_power);
                let ln_c = |y: f64| -d * y.ln() + if q == 0.0 { 0.0 } else { q * y.ln().max(0.0).ln() };
                let exceeds = |n: u64| self.base_coeff(n).abs() > u;
                let ln_u = u.ln();
                if d <= 0.0 {
                    // Non-decreasing coefficients: the set is [n1, ∞).
                    if d == 0.0 && q == 0.0 {
                        return if 1.0 > u { self.weight_mass(1, None) } else { Ok(0.0) };
                    }
                    let mut lo = 1.0f64;
                    let mut hi = 2.0f64;
                    while ln_c(hi) <= ln_u {
                        lo = hi;
                        hi *= 2.0;
                    }
                    let n1 = first_true(lo as u64, hi.ceil() as u64, exceeds);
                    return self.weight_mass(n1, None);
                }
                // Decreasing (or unimodal when q > 0) coefficients.
                let peak = if q > 0.0 { (q / d).exp().max(1.0) } else { 1.0 };
                let peak_n = [peak.floor().max(1.0) as u64, peak.ceil() as u64]
                    .into_iter()
                    .max_by(|a, b| self.base_coeff(*a).total_cmp(&self.base_coeff(*b)))
                    .unwrap_or(1);
                if !exceeds(peak_n) {
                    return Ok(0.0);
                }
                let n1 = if q > 0.0 { first_true(1, peak_n, exceeds) } else { 1 };
                // Largest n with c(n) > u on the decreasing side.
                let mut hi = (peak_n as f64 * 2.0).max(2.0);
                while ln_c(hi) > ln_u {
                    hi *= 2.0;
                    if hi > 1e300 {
                        return Err(GlsError::divergent("level set unbounded"));
                    }
                }
                if hi > 9.0e15 {
                    // Counts past 2^53: continuous approximation of the weight mass.
                    let b = bisect_ln(peak_n as f64, hi, |y| ln_c(y) > ln_u);
                    return self.weight_mass_real(n1 as f64, b);
                }
                let n2 = last_true(peak_n, hi as u64, exceeds);
                self.weight_mass(n1, Some(n2))
            }
        }
    }

    fn weight_mass_real(&self, a: f64, b: f64) -> Result<f64> {
        let b = self.truncation.map_or(b, |t| b.min(t as f64));
        match &self.weight {
            Weight::Unit => Ok((b.floor() - a.ceil() + 1.0).max(0.0)),
            Weight::PowerLog { coef, decay, log_power } => {
                let f = PowerLog::new(*decay, *log_power);
                Ok(coef * f.integral(a.max(1.0), b))
            }
            Weight::Values(_) => self.weight_mass(a as u64, Some(b.min(u64::MAX as f64) as u64)),
        }
    }
}

fn sum_range(f: PowerLog, from: u64, to: Option<u64>) -> Result<Estimate> {
    match to {
        Some(t) => Ok(f.sum(from, t)),
        None => f.tail_sum(from),
    }
}

/// Smallest `n ∈ [lo, hi]` with `pred(n)`, assuming `pred` is monotone false→true.
fn first_true(mut lo: u64, mut hi: u64, pred: impl Fn(u64) -> bool) -> u64 {
    if pred(lo) {
        return lo;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Largest `n ∈ [lo, hi]` with `pred(n)`, assuming `pred` is monotone true→false and `pred(lo)`.
fn last_true(mut lo: u64, mut hi: u64, pred: impl Fn(u64) -> bool) -> u64 {
    if pred(hi) {
        return hi;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn bisect_ln(mut lo: f64, mut hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..200 {
        let mid = (0.5 * (lo.ln() + hi.ln())).exp();
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_tail_counts() {
        let c = WeightedSequence::new(Coeffs::PowerLog { decay: 1.0, log_power: 0.0 }, Weight::Unit, None).unwrap();
        assert_eq!(c.tail(0.35).unwrap(), 2.0);
        assert_eq!(c.tail(0.5).unwrap(), 1.0);
        assert_eq!(c.tail(1.0).unwrap(), 0.0);
    }

    #[test]
    fn unimodal_tail_matches_brute_force() {
        let c = WeightedSequence::new(Coeffs::PowerLog { decay: 0.5, log_power: 1.0 }, Weight::Unit, None).unwrap();
        for u in [0.05, 0.2, 0.5, 0.7] {
            let brute = (1..2_000_000u64).filter(|&n| c.coeff(n) > u).count() as f64;
            assert_eq!(c.tail(u).unwrap(), brute, "u={u}");
        }
    }

    #[test]
    fn increasing_coefficients_tail_uses_weight_mass() {
        let c = WeightedSequence::new(
            Coeffs::PowerLog { decay: -1.0, log_power: 0.0 },
            Weight::PowerLog { coef: 1.0, decay: 4.0, log_power: 0.0 },
            None,
        )
        .unwrap();
        let t = c.tail(10.5).unwrap();
        let direct: f64 = (11..200_000u64).map(|k| (k as f64).powi(-4)).sum();
        assert!((t - direct).abs() < 1e-12);
    }

    #[test]
    fn nu_power_sum_single_term() {
        let c = WeightedSequence::from_values(vec![1.0]);
        let s = c.power_sum(3.0, SeqVariant::Nu).unwrap();
        assert_eq!(s.value, 2.0);
    }

    #[test]
    fn beyond_constant_uses_weight_tail() {
        let c = WeightedSequence::new(
            Coeffs::Values { values: vec![2.0], beyond: Some(1.0) },
            Weight::PowerLog { coef: 1.0, decay: 2.0, log_power: 0.0 },
            None,
        )
        .unwrap();
        let s = c.power_sum(2.0, SeqVariant::Beta).unwrap().value;
        let expect = 4.0 + (std::f64::consts::PI.powi(2) / 6.0 - 1.0);
        assert!((s - expect).abs() < 1e-13);
    }
}
