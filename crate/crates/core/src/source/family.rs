//! Registry of analytic function families with their quadrature layouts,
//! tails and known conjugates.

use super::gdelta::{reduce, GDeltaSeries};
use super::trig::TrigPolynomial;
use crate::error::{GlsError, Result};
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Domain {
    /// `[-π, π]` with the normalized measure `dx/2π`.
    Torus,
    /// The real line with Lebesgue measure.
    Line,
}

/// A point carried together with `ln|x|`, which stays exact when `x` underflows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub ln_abs_x: f64,
}

impl Point {
    pub fn new(x: f64) -> Self {
        Point { x, ln_abs_x: x.abs().ln() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GDeltaKind {
    Sin,
    Cos,
}

#[derive(Debug, Clone)]
pub enum Family {
    /// `f ≡ 1` on the torus.
    Constant,
    Trig(TrigPolynomial),
    /// `Σ (ln n)^Δ n^{-1} sin nx` or the cosine twin.
    GDelta {
        series: Arc<GDeltaSeries>,
        kind: GDeltaKind,
    },
    /// `|ln(x/2π)|^{1/m}` for `x ∈ (0, 2π)`, extended periodically.
    LogPower {
        m: f64,
    },
    /// `|x|^{-γ} f(x)` on the torus.
    PowerWeighted {
        inner: Arc<Family>,
        gamma: f64,
    },
    /// Indicator of `(0, 1)` on the line.
    Indicator01,
    /// `|x|^{-1}` for `|x| ≥ 1`, zero otherwise.
    InvAbsTail,
    /// `x^{-1/b}` on `(0,1)`, `x^{-1/a}` on `[1,∞)`, zero for `x ≤ 0`.
    TwoPower {
        a: f64,
        b: f64,
    },
    /// `e^{-x²/2}`.
    Gaussian,
}

/// Integration segment in a quadrature layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    /// `x = dir·h·e^{-t}`, `t ≥ 0`, dyadic levels toward 0.
    Graded { dir: f64, h: f64, weight: f64 },
    /// `x = dir·x0·e^{t}`, `t ≥ 0`, dyadic levels toward infinity.
    Tail { dir: f64, x0: f64, weight: f64 },
    /// `[a, b]` in `n` equal Gauss panels.
    Panels { a: f64, b: f64, n: usize, weight: f64 },
    /// Periodic trapezoid with `n` nodes on `[0, 2π)`, each of weight `weight/n`.
    Trapezoid { n: usize, weight: f64 },
}

impl Family {
    pub fn gdelta(delta: u32, kind: GDeltaKind) -> Self {
        Family::GDelta { series: Arc::new(GDeltaSeries::new(delta)), kind }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Family::Constant | Family::Trig(_) | Family::GDelta { .. } | Family::LogPower { .. } | Family::PowerWeighted { .. } => {
                Domain::Torus
            }
            _ => Domain::Line,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Family::Constant => "const".into(),
            Family::Trig(t) => format!("trig(degree={})", t.degree()),
            Family::GDelta { series, kind } => match kind {
                GDeltaKind::Sin => format!("gdelta_sin(Delta={})", series.delta()),
                GDeltaKind::Cos => format!("gdelta_cos(Delta={})", series.delta()),
            },
            Family::LogPower { m } => format!("gm(m={m})"),
            Family::PowerWeighted { inner, gamma } => format!("ugamma(gamma={gamma}, {})", inner.name()),
            Family::Indicator01 => "indicator01".into(),
            Family::InvAbsTail => "inv_abs_tail".into(),
            Family::TwoPower { a, b } => format!("fab(a={a}, b={b})"),
            Family::Gaussian => "gaussian".into(),
        }
    }

    /// Locations of singularities (where the function is unbounded or undefined).
    pub fn singular_points(&self) -> Vec<f64> {
        match self {
            Family::GDelta { .. } | Family::LogPower { .. } | Family::PowerWeighted { .. } => vec![0.0],
            Family::TwoPower { .. } => vec![0.0],
            _ => vec![],
        }
    }

    /// Highest oscillation frequency relevant for panel sizing.
    fn frequency(&self) -> usize {
        match self {
            Family::Trig(t) => t.degree(),
            Family::PowerWeighted { inner, .. } => inner.frequency(),
            _ => 0,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_point(Point::new(x))
    }

    pub fn eval_point(&self, p: Point) -> f64 {
        match self {
            Family::Constant => 1.0,
            Family::Trig(t) => t.eval(p.x),
            Family::GDelta { series, kind } => {
                let r = reduce(p.x);
                if r == 0.0 && p.ln_abs_x == f64::NEG_INFINITY {
                    return match kind {
                        GDeltaKind::Sin => 0.0,
                        GDeltaKind::Cos => f64::INFINITY,
                    };
                }
                let ln = if r == p.x || p.x == 0.0 { p.ln_abs_x } else { r.abs().ln() };
                let s = series.eval_ln(ln);
                match kind {
                    GDeltaKind::Sin => {
                        if r.is_sign_negative() {
                            -s.im
                        } else {
                            s.im
                        }
                    }
                    GDeltaKind::Cos => s.re,
                }
            }
            Family::LogPower { m } => {
                let t = log_power_arg(p);
                t.powf(1.0 / m)
            }
            Family::PowerWeighted { inner, gamma } => (-gamma * p.ln_abs_x).exp() * inner.eval_point(p),
            Family::Indicator01 => {
                if p.x > 0.0 && p.x < 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Family::InvAbsTail => {
                if p.x.abs() >= 1.0 {
                    1.0 / p.x.abs()
                } else {
                    0.0
                }
            }
            Family::TwoPower { .. } => {
                let l = self.ln_abs(p);
                if l == f64::NEG_INFINITY {
                    0.0
                } else {
                    l.exp()
                }
            }
            Family::Gaussian => (-0.5 * p.x * p.x).exp(),
        }
    }

    /// `ln|f|` at a point, computed without forming `|f|` where it could overflow.
    pub fn ln_abs(&self, p: Point) -> f64 {
        match self {
            Family::LogPower { m } => log_power_arg(p).ln() / m,
            Family::PowerWeighted { inner, gamma } => -gamma * p.ln_abs_x + inner.ln_abs(p),
            Family::TwoPower { a, b } => {
                if p.x < 0.0 || (p.x == 0.0 && p.ln_abs_x == f64::NEG_INFINITY) {
                    f64::NEG_INFINITY
                } else if p.ln_abs_x < 0.0 {
                    -p.ln_abs_x / b
                } else {
                    -p.ln_abs_x / a
                }
            }
            Family::InvAbsTail => {
                if p.ln_abs_x >= 0.0 {
                    -p.ln_abs_x
                } else {
                    f64::NEG_INFINITY
                }
            }
            Family::Gaussian => -0.5 * p.x * p.x,
            _ => self.eval_point(p).abs().ln(),
        }
    }

    pub fn layout(&self) -> Vec<Segment> {
        match self {
            Family::Constant => vec![Segment::Trapezoid { n: 1, weight: 1.0 }],
            Family::Trig(t) => vec![Segment::Trapezoid { n: t.trapezoid_nodes(), weight: 1.0 }],
            Family::GDelta { .. } => vec![Segment::Graded { dir: 1.0, h: PI, weight: 1.0 / PI }],
            Family::LogPower { .. } => vec![Segment::Graded { dir: 1.0, h: 2.0 * PI, weight: 0.5 / PI }],
            Family::PowerWeighted { .. } => {
                vec![Segment::Graded { dir: 1.0, h: PI, weight: 0.5 / PI }, Segment::Graded { dir: -1.0, h: PI, weight: 0.5 / PI }]
            }
            Family::Indicator01 => vec![Segment::Panels { a: 0.0, b: 1.0, n: 1, weight: 1.0 }],
            Family::InvAbsTail => vec![Segment::Tail { dir: 1.0, x0: 1.0, weight: 2.0 }],
            Family::TwoPower { .. } => {
                vec![Segment::Graded { dir: 1.0, h: 1.0, weight: 1.0 }, Segment::Tail { dir: 1.0, x0: 1.0, weight: 1.0 }]
            }
            Family::Gaussian => vec![Segment::Panels { a: 0.0, b: 14.0, n: 56, weight: 2.0 }],
        }
    }

    /// Gauss panels per dyadic level of a graded segment of half-width `h`.
    pub fn panels_for_level(&self, h: f64, level: usize) -> usize {
        let len = h * 0.5f64.powi(level as i32 + 1);
        let m = self.frequency() as f64;
        ((len * m / PI).ceil() as usize).max(2)
    }

    /// Tail `mes{|f| > u}` in closed form, for families where it is known.
    /// Torus values are with respect to the normalized measure.
    pub fn tail(&self, u: f64) -> Result<f64> {
        if u.is_nan() || u < 0.0 {
            return Err(GlsError::invalid("tail level must be non-negative"));
        }
        match self {
            Family::Constant => Ok(if u < 1.0 { 1.0 } else { 0.0 }),
            Family::LogPower { m } => Ok((-u.powf(*m)).exp()),
            Family::Indicator01 => Ok(if u < 1.0 { 1.0 } else { 0.0 }),
            Family::InvAbsTail => Ok(if u < 1.0 { 2.0 * (1.0 / u.max(f64::MIN_POSITIVE) - 1.0).min(f64::MAX) } else { 0.0 }),
            Family::TwoPower { a, b } => Ok(if u <= 1.0 { u.powf(-a) } else { u.powf(-b) }),
            Family::Gaussian => Ok(if u < 1.0 { 2.0 * (2.0 * (1.0 / u).ln()).sqrt() } else { 0.0 }),
            Family::GDelta { kind: GDeltaKind::Sin, .. } => Ok(self.bisect_tail(u)),
            _ => Err(GlsError::Unsupported(format!("tail of {} needs monotonicity data the registry does not carry", self.name()))),
        }
    }

    /// Level set of the sine family: `|g|` decreases on `(0, π)`, so `{|g| > u}` is
    /// `(-x_u, x_u)` and has normalized measure `x_u/π`.
    fn bisect_tail(&self, u: f64) -> f64 {
        let g = |ln_x: f64| self.eval_point(Point { x: ln_x.exp(), ln_abs_x: ln_x });
        if g(PI.ln() - 1e-12) > u {
            return 1.0;
        }
        // Bracket in ln x.
        let mut hi = PI.ln();
        let mut lo = -1.0;
        while g(lo) <= u {
            lo *= 2.0;
            if lo < -1e6 {
                return 0.0;
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > u {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 * lo.abs().max(1.0) {
                break;
            }
        }
        (lo.exp() / PI).min(1.0)
    }

    /// Conjugate function on the torus when it is known in closed form, together
    /// with a sign factor: `H[f] = sign · conj`.
    pub fn known_conjugate(&self) -> Option<(Family, f64)> {
        match self {
            Family::Constant => Some((Family::Trig(TrigPolynomial::zero()), 1.0)),
            Family::Trig(t) => Some((Family::Trig(t.hilbert()), 1.0)),
            Family::GDelta { series, kind } => Some(match kind {
                GDeltaKind::Sin => (Family::GDelta { series: series.clone(), kind: GDeltaKind::Cos }, -1.0),
                GDeltaKind::Cos => (Family::GDelta { series: series.clone(), kind: GDeltaKind::Sin }, 1.0),
            }),
            _ => None,
        }
    }
}

/// `|ln(x/2π)|` for `x` reduced to `(0, 2π)`, using `ln|x|` when no reduction is needed.
fn log_power_arg(p: Point) -> f64 {
    let tau = 2.0 * PI;
    if p.x > 0.0 && p.x < tau || (p.x == 0.0 && p.ln_abs_x.is_finite()) {
        (tau.ln() - p.ln_abs_x).abs()
    } else {
        let r = p.x.rem_euclid(tau);
        (r / tau).ln().abs()
    }
}
