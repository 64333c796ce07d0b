//! `L_p` norms of functions (plain and ν-weighted) and sequences (plain, ν, β).

use crate::error::{GlsError, Result};
use crate::numeric::levels::LevelBudget;
use crate::source::{Domain, SampledFunction, SeqVariant, Source, WeightedSequence};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Norm value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    pub value: f64,
    pub error: f64,
}

/// Which norm of a source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    Plain,
    /// `[∫|x|^{p-2}|f|^p dx]^{1/p}` on the line; `[Σ|c(n)|^p (n^{p-2}+1)]^{1/p}` for sequences.
    Nu,
    /// `[Σ|c(n)|^p β(n)]^{1/p}`; plain for functions.
    Beta,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "nu" => Ok(Variant::Nu),
            "beta" => Ok(Variant::Beta),
            _ => Err(GlsError::Spec(format!("unknown variant `{s}` (plain, nu, beta)"))),
        }
    }

    fn seq(self) -> SeqVariant {
        match self {
            Variant::Plain => SeqVariant::Plain,
            Variant::Nu => SeqVariant::Nu,
            Variant::Beta => SeqVariant::Beta,
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(GlsError::Inadmissible { p, detail: "norms need finite p >= 1".into() })
    }
}

/// `|f|_p` (or its ν-weighted form on the line).
pub fn lp_continuous(f: &SampledFunction, p: f64, weighted_nu: bool) -> Result<NormValue> {
    check_p(p)?;
    if weighted_nu {
        if f.domain() != Domain::Line {
            return Err(GlsError::Inadmissible { p, detail: "the nu-weighted norm is defined on the line".into() });
        }
        if p < 2.0 {
            return Err(GlsError::Inadmissible { p, detail: "the nu-weighted norm needs p >= 2".into() });
        }
    }
    let h = |n: &crate::source::table::Node| {
        if n.ln_f == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let mut v = p * n.ln_f;
        if weighted_nu && p != 2.0 {
            v += (p - 2.0) * n.ln_x;
        }
        v
    };
    let s = f.ln_integral(&h, LevelBudget::default())?;
    let base = (s.ln_total / p).exp();
    if !base.is_finite() {
        return Err(GlsError::divergent(format!("|{}|_{p} overflowed", f.name())));
    }
    let err = base * s.rel_error / p + 4.0 * f64::EPSILON * base;
    Ok(NormValue { value: f.apply_abs_amplitude(base), error: f.apply_abs_amplitude(err) })
}

/// `|c|_p` in the requested variant.
pub fn lp_sequence(c: &WeightedSequence, p: f64, variant: SeqVariant) -> Result<NormValue> {
    check_p(p)?;
    let s = c.power_sum(p, variant)?;
    let base = s.value.powf(1.0 / p);
    let err = if s.value > 0.0 { base * s.error / (p * s.value) } else { s.error.powf(1.0 / p) };
    Ok(NormValue { value: c.apply_abs_amplitude(base), error: c.apply_abs_amplitude(err + 4.0 * f64::EPSILON * base) })
}

/// Norm of any source.
pub fn lp(source: &Source, p: f64, variant: Variant) -> Result<NormValue> {
    match source {
        Source::Function(f) => lp_continuous(f, p, variant == Variant::Nu),
        Source::Sequence(c) => lp_sequence(c, p, variant.seq()),
    }
}

/// One point of a norm curve; divergence is recorded, not fatal.
#[derive(Debug, Clone)]
pub struct CurvePoint {
    pub p: f64,
    pub norm: Result<NormValue>,
}

/// Norms on a `p`-grid, evaluated in parallel with results in grid order.
pub fn norm_curve(source: &Source, grid: &[f64], variant: Variant) -> Vec<CurvePoint> {
    // Build the quadrature table once before fanning out.
    if let Some(&p0) = grid.first() {
        let _ = lp(source, p0, variant);
    }
    grid.par_iter().map(|&p| CurvePoint { p, norm: lp(source, p, variant) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{Coeffs, Family, TrigPolynomial, Weight};

    #[test]
    fn constant_has_unit_norms() {
        let f = SampledFunction::new(Family::Constant);
        for p in [1.0, 2.0, 7.5] {
            assert_eq!(lp_continuous(&f, p, false).unwrap().value, 1.0);
        }
    }

    #[test]
    fn cosine_two_norm() {
        let f = SampledFunction::new(Family::Trig(TrigPolynomial::cos(1)));
        let v = lp_continuous(&f, 2.0, false).unwrap().value;
        assert!((v - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn inverse_tail_norm_matches_closed_form() {
        let f = SampledFunction::new(Family::InvAbsTail);
        let v = lp_continuous(&f, 1.5, false).unwrap().value;
        assert!((v - 4f64.powf(2.0 / 3.0)).abs() < 1e-12, "{v}");
        assert!(lp_continuous(&f, 1.0, false).unwrap_err().is_divergent());
    }

    #[test]
    fn log_power_norm_is_gamma() {
        let f = SampledFunction::new(Family::LogPower { m: 1.0 });
        let v = lp_continuous(&f, 3.0, false).unwrap().value;
        assert!((v - 6f64.powf(1.0 / 3.0)).abs() < 1e-12, "{v}");
    }

    #[test]
    fn harmonic_two_norm() {
        let c = WeightedSequence::new(Coeffs::PowerLog { decay: 1.0, log_power: 0.0 }, Weight::Unit, None).unwrap();
        let v = lp_sequence(&c, 2.0, SeqVariant::Plain).unwrap().value;
        assert!((v - 1.282_549_830_161_864).abs() < 1e-13, "{v}");
    }

    #[test]
    fn nu_variant_requires_line_and_p_two() {
        let f = SampledFunction::new(Family::Gaussian);
        assert!(lp_continuous(&f, 1.5, true).is_err());
        let t = SampledFunction::new(Family::Constant);
        assert!(lp_continuous(&t, 3.0, true).is_err());
        // ∫|x|^{0} e^{-x²} dx = √π at p = 2.
        let v = lp_continuous(&f, 2.0, true).unwrap().value;
        assert!((v - std::f64::consts::PI.sqrt().sqrt()).abs() < 1e-12);
    }
}
