//! Closed-form operator constants and shape functions.

use crate::error::{GlsError, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `K_H(p)`: the sharp `L_p` norm of the periodic conjugate function.
pub fn pichorides(p: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(GlsError::Inadmissible { p, detail: "K_H(p) needs 1 < p < inf".into() });
    }
    let t = PI / (2.0 * p);
    Ok(if p <= 2.0 { t.tan() } else { 1.0 / t.tan() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SharpConstantKind {
    Pichorides,
    /// Blow-up of the power-weight operator near `p0 = 1/γ`.
    GammaWeight {
        gamma: f64,
    },
    /// Partial-sum bound, shape `p` (`p/(p-1)` below 2).
    Riesz,
    /// Paley inequality, shape `p`.
    Paley,
    /// Line Hausdorff-Young constant for `F(t) = ∫ e^{itx} f(x) dx`: `(2π)^{1/p}`.
    HausdorffYoung,
    /// `p^4/(p-1)^3`.
    MaximalS,
    /// `p^4/(p-1)^2`.
    MaximalR,
    /// `(p-1)^{-2}`.
    MaximalF,
}

impl SharpConstantKind {
    pub fn parse(s: &str) -> Result<Self> {
        let (name, arg) = s.split_once(':').unwrap_or((s, ""));
        Ok(match name {
            "pichorides" => Self::Pichorides,
            "gamma_weight" => {
                Self::GammaWeight { gamma: arg.trim().parse().map_err(|_| GlsError::Spec("gamma_weight:<gamma> expected".into()))? }
            }
            "riesz" => Self::Riesz,
            "paley" => Self::Paley,
            "hausdorff_young" => Self::HausdorffYoung,
            "maximal_s" => Self::MaximalS,
            "maximal_R" | "maximal_r" => Self::MaximalR,
            "maximal_F" | "maximal_f" => Self::MaximalF,
            _ => return Err(GlsError::Spec(format!("unknown constant kind `{s}`"))),
        })
    }
}

/// A constant value; `prefactor_known == false` means only the `p`-shape is known
/// and the absolute factor was set to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpConstant {
    pub value: f64,
    pub prefactor_known: bool,
}

pub fn sharp_constant(kind: SharpConstantKind, p: f64) -> Result<SharpConstant> {
    let need = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(GlsError::Inadmissible { p, detail: format!("{kind:?} needs {what}") })
        }
    };
    let shape = |value: f64| SharpConstant { value, prefactor_known: false };
    match kind {
        SharpConstantKind::Pichorides => Ok(SharpConstant { value: pichorides(p)?, prefactor_known: true }),
        SharpConstantKind::GammaWeight { gamma } => {
            need(gamma > 0.0 && gamma < 1.0, "0 < gamma < 1")?;
            let p0 = 1.0 / gamma;
            need(p > 1.0 && p < p0, "1 < p < 1/gamma")?;
            Ok(SharpConstant { value: 1.0 / (gamma * gamma * (p0 - p)), prefactor_known: true })
        }
        SharpConstantKind::Riesz => {
            need(p > 1.0 && p.is_finite(), "1 < p < inf")?;
            Ok(shape(if p >= 2.0 { p } else { p / (p - 1.0) }))
        }
        SharpConstantKind::Paley => {
            need(p >= 2.0 && p.is_finite(), "2 <= p < inf")?;
            Ok(shape(p))
        }
        SharpConstantKind::HausdorffYoung => {
            need(p >= 2.0, "p >= 2")?;
            Ok(SharpConstant { value: (2.0 * PI).powf(1.0 / p), prefactor_known: true })
        }
        SharpConstantKind::MaximalS => {
            need(p > 1.0 && p.is_finite(), "1 < p < inf")?;
            Ok(shape(p.powi(4) / (p - 1.0).powi(3)))
        }
        SharpConstantKind::MaximalR => {
            need(p > 1.0 && p.is_finite(), "1 < p < inf")?;
            Ok(shape(p.powi(4) / (p - 1.0).powi(2)))
        }
        SharpConstantKind::MaximalF => {
            need(p > 1.0 && p.is_finite(), "1 < p < inf")?;
            Ok(shape((p - 1.0).powi(-2)))
        }
    }
}
