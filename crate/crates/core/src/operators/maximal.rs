//! Maximal Fourier operators as suprema over a finite grid of truncation
//! parameters. Every value is a lower bound of the supremum over the continuum.

use super::fourier::{fourier_torus, partial_inverse_line, truncated_fourier};
use crate::error::{GlsError, Result};
use crate::numeric::sum::pairwise;
use crate::source::{Domain, Family, SampledFunction, TrigPolynomial};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalKind {
    /// `s*f(x) = sup_M |s_M f(x)|` on the torus.
    SStar,
    /// `F*f(x) = sup_a |∫_{-a}^{a} f(t) e^{itx} dt|` on the line.
    FStar,
    /// `R*f(x) = sup_a |∫ f(t) sin(a(x-t))/(x-t) dt|` on the line.
    RStar,
}

impl MaximalKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "s_star" | "s" => Ok(Self::SStar),
            "F_star" | "f_star" | "F" => Ok(Self::FStar),
            "R_star" | "r_star" | "R" => Ok(Self::RStar),
            _ => Err(GlsError::Spec(format!("unknown maximal operator `{s}` (s_star, F_star, R_star)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximalSample {
    pub kind: MaximalKind,
    /// Truncation parameters the supremum ran over.
    pub grid: Vec<f64>,
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    /// Index into `grid` where each supremum was attained.
    pub argmax: Vec<usize>,
    pub lower_bound: bool,
}

/// `n` points from `lo` to `hi`, evenly spaced in `ln`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(GlsError::invalid("log grid needs 0 < lo < hi and n >= 2"));
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect())
}

/// `max_{M ∈ grid} |s_M[t](x)|` for each `x`, with partial sums accumulated in
/// frequency order.
fn s_star_values(t: &TrigPolynomial, grid: &[usize], xs: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let top = grid.iter().copied().max().unwrap_or(0).min(t.degree());
    let (a, b) = (t.cos_coeffs(), t.sin_coeffs());
    xs.iter()
        .map(|&x| {
            let mut partial = Vec::with_capacity(top + 1);
            let mut s = 0.5 * a[0];
            partial.push(s);
            for k in 1..=top {
                let kx = k as f64 * x;
                s += a[k] * kx.cos() + b[k] * kx.sin();
                partial.push(s);
            }
            let mut best = (f64::NEG_INFINITY, 0);
            for (i, &m) in grid.iter().enumerate() {
                let v = partial[m.min(top)].abs();
                if v > best.0 {
                    best = (v, i);
                }
            }
            best
        })
        .unzip()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() || grid.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
        return Err(GlsError::invalid("supremum grid must be non-empty, finite and non-negative"));
    }
    Ok(())
}

/// Pointwise maximal function of `f` over `grid` at the points `xs`. For `s*`
/// the grid holds partial-sum indices and non-polynomial inputs are expanded to
/// the largest index first.
pub fn maximal_apply(f: &SampledFunction, kind: MaximalKind, grid: &[f64], xs: &[f64]) -> Result<MaximalSample> {
    check_grid(grid)?;
    let (values, argmax) = match kind {
        MaximalKind::SStar => {
            if f.domain() != Domain::Torus {
                return Err(GlsError::SupportMismatch("s* acts on torus functions".into()));
            }
            if grid.iter().any(|g| g.fract() != 0.0) {
                return Err(GlsError::invalid("s* grid must hold integer indices"));
            }
            let idx: Vec<usize> = grid.iter().map(|g| *g as usize).collect();
            let top = *idx.iter().max().expect("non-empty grid");
            let t = match f.family() {
                Family::Trig(t) => t.scale(f.amplitude()),
                _ => fourier_torus(f, top)?.partial_sum,
            };
            s_star_values(&t, &idx, xs)
        }
        MaximalKind::FStar | MaximalKind::RStar => {
            if f.domain() != Domain::Line {
                return Err(GlsError::SupportMismatch(format!("{kind:?} acts on line functions")));
            }
            if grid.contains(&0.0) {
                return Err(GlsError::invalid("truncation parameters must be positive"));
            }
            let rows: Vec<Result<(f64, usize)>> = xs
                .par_iter()
                .map(|&x| {
                    let mut best = (f64::NEG_INFINITY, 0);
                    for (i, &a) in grid.iter().enumerate() {
                        let v = match kind {
                            MaximalKind::FStar => truncated_fourier(f, a, x)?.norm(),
                            _ => PI * partial_inverse_line(f, a, x)?.abs(),
                        };
                        if v > best.0 {
                            best = (v, i);
                        }
                    }
                    Ok(best)
                })
                .collect();
            let mut values = Vec::with_capacity(xs.len());
            let mut argmax = Vec::with_capacity(xs.len());
            for r in rows {
                let (v, i) = r?;
                values.push(v);
                argmax.push(i);
            }
            (values, argmax)
        }
    };
    Ok(MaximalSample { kind, grid: grid.to_vec(), xs: xs.to_vec(), values, argmax, lower_bound: true })
}

/// `|s*[t]|_p` under the normalized torus measure with the supremum over
/// `M ≤ m_max`, by the trapezoid rule on `8·trapezoid_nodes` points.
pub fn s_star_lp(t: &TrigPolynomial, m_max: usize, p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(GlsError::Inadmissible { p, detail: "needs finite p >= 1".into() });
    }
    let n = 8 * t.trapezoid_nodes();
    let xs: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect();
    let grid: Vec<usize> = (0..=m_max).collect();
    let (v, _) = s_star_values(t, &grid, &xs);
    let terms: Vec<f64> = v.iter().map(|y| y.powf(p)).collect();
    Ok((pairwise(&terms) / n as f64).powf(1.0 / p))
}
