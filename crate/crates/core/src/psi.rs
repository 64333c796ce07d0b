//! ψ-functions: the weights `p ↦ ψ(p)` that define grand Lebesgue norms.

use crate::error::{GlsError, Result};
use crate::norms::{lp, Variant};
use crate::operators::constants::pichorides;
use crate::source::Source;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Where ψ is finite: an open interval or a single exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Support {
    Open { lo: f64, hi: f64 },
    Point(f64),
}

impl Support {
    pub fn contains(&self, p: f64) -> bool {
        match *self {
            Support::Open { lo, hi } => p > lo && p < hi,
            Support::Point(r) => p == r,
        }
    }

    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        if !(lo >= 1.0) || !(hi > lo) {
            return Err(GlsError::invalid(format!("support needs 1 <= A < B, got ({lo}, {hi})")));
        }
        Ok(Support::Open { lo, hi })
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::Open { lo, hi } => write!(f, "({lo}, {hi})"),
            Support::Point(r) => write!(f, "{{{r}}}"),
        }
    }
}

/// Closed-form ψ families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PsiFamily {
    /// `(p-A)^{-α} (B-p)^{-β}` on `(A, B)`.
    Power { a: f64, b: f64, alpha: f64, beta: f64 },
    /// `p^β` on `(1, ∞)`.
    Exponent { beta: f64 },
    /// The singleton `{r}`: the norm is `|f|_r`.
    Degenerate { r: f64 },
    /// `1/ζ(p)` with `ζ = (p-a)^α` below `h = min((a+b)/2, 2a)` and `(b-p)^β` from `h` on.
    Gab { a: f64, b: f64, alpha: f64, beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PsiTransformKind {
    /// `K_H(p) ψ(p)`.
    Hilbert,
    /// `ψ(p/(p-1))`.
    ConjugateZeta,
    /// `p^d ψ(p)`.
    DegreeD { d: f64 },
    /// `p^λ (p-1)^{-μ} ψ(p)`.
    Maximal { lambda: f64, mu: f64 },
    /// `p ψ(p)`.
    Leindler,
}

type PsiClosure = dyn Fn(f64) -> f64 + Send + Sync;

enum PsiKind {
    Family(PsiFamily),
    Natural { source: Source, variant: Variant, memo: Mutex<HashMap<u64, f64>> },
    Transformed { base: PsiFunction, kind: PsiTransformKind },
    Custom(Arc<PsiClosure>),
}

/// An evaluable ψ with its support and family tag. Cloning shares state.
#[derive(Clone)]
pub struct PsiFunction {
    kind: Arc<PsiKind>,
    support: Support,
    tag: String,
}

impl fmt::Debug for PsiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PsiFunction({} on {})", self.tag, self.support)
    }
}

fn non_negative(v: f64, name: &str) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(GlsError::invalid(format!("{name} must be a finite non-negative number, got {v}")))
    }
}

/// Builds a closed-form ψ.
pub fn make_family_psi(family: PsiFamily) -> Result<PsiFunction> {
    let (support, tag) = match family {
        PsiFamily::Power { a, b, alpha, beta } => {
            non_negative(alpha, "alpha")?;
            non_negative(beta, "beta")?;
            if !b.is_finite() {
                return Err(GlsError::invalid("power family needs a finite upper endpoint"));
            }
            (Support::open(a, b)?, format!("power({a},{b},{alpha},{beta})"))
        }
        PsiFamily::Exponent { beta } => {
            non_negative(beta, "beta")?;
            (Support::Open { lo: 1.0, hi: f64::INFINITY }, format!("exp({beta})"))
        }
        PsiFamily::Degenerate { r } => {
            if !(r >= 1.0 && r.is_finite()) {
                return Err(GlsError::invalid(format!("degenerate exponent must be finite and >= 1, got {r}")));
            }
            (Support::Point(r), format!("degenerate({r})"))
        }
        PsiFamily::Gab { a, b, alpha, beta } => {
            non_negative(alpha, "alpha")?;
            non_negative(beta, "beta")?;
            if !b.is_finite() {
                return Err(GlsError::invalid("gab family needs a finite upper endpoint"));
            }
            (Support::open(a, b)?, format!("gab({a},{b},{alpha},{beta})"))
        }
    };
    Ok(PsiFunction { kind: Arc::new(PsiKind::Family(family)), support, tag })
}

/// Open interval of exponents where `|source|_p` is finite, found by probing and
/// bisecting its edges. Finiteness at `p = 1` or at `p = 1000` opens that side.
pub fn finite_exponents(source: &Source, variant: Variant) -> Result<Support> {
    let finite = |p: f64| -> Result<bool> {
        match lp(source, p, variant) {
            Ok(v) => Ok(v.value.is_finite()),
            Err(GlsError::Divergent(_) | GlsError::Inadmissible { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    };
    let probes = [1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 8.0, 16.0, 50.0, 1000.0];
    let mut inside = None;
    for &p in &probes {
        if finite(p)? {
            inside = Some(p);
            break;
        }
    }
    let inside = inside.ok_or_else(|| GlsError::divergent(format!("|{}|_p diverges at every probed p", source.name())))?;
    let edge = |mut good: f64, mut bad: f64| -> Result<f64> {
        for _ in 0..48 {
            let mid = 0.5 * (good + bad);
            if finite(mid)? {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Ok(bad)
    };
    let lo = if inside == 1.0 { 1.0 } else { edge(inside, probes[probes.iter().position(|q| *q == inside).unwrap() - 1])? };
    let mut hi = f64::INFINITY;
    let mut last = inside;
    for &p in probes.iter().filter(|q| **q > inside) {
        if !finite(p)? {
            hi = edge(last, p)?;
            break;
        }
        last = p;
    }
    Support::open(lo, hi)
}

/// The natural ψ of a source, `ψ(p) = |source|_p`, evaluated lazily and memoized.
/// Without an explicit support it lives where the norms are finite.
/// Every grid point is evaluated up front; divergence at any of them is an error.
pub fn natural_psi(source: &Source, variant: Variant, grid: &[f64], support: Option<Support>) -> Result<PsiFunction> {
    let support = match support {
        Some(s) => s,
        None => finite_exponents(source, variant)?,
    };
    let psi = PsiFunction {
        kind: Arc::new(PsiKind::Natural { source: source.base(), variant, memo: Mutex::new(HashMap::new()) }),
        support,
        tag: format!("natural({})", source.name()),
    };
    for &p in grid {
        psi.eval(p).map_err(|e| match e {
            GlsError::Divergent(m) => GlsError::divergent(format!("natural psi diverges at p = {p}: {m}")),
            other => other,
        })?;
    }
    Ok(psi)
}

impl PsiFunction {
    /// ψ from an arbitrary closure (used for experiments and fault injection).
    pub fn custom(tag: impl Into<String>, support: Support, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        PsiFunction { kind: Arc::new(PsiKind::Custom(Arc::new(f))), support, tag: tag.into() }
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.support, Support::Point(_))
    }

    pub fn family(&self) -> Option<PsiFamily> {
        match &*self.kind {
            PsiKind::Family(f) => Some(*f),
            _ => None,
        }
    }

    /// ψ(p) for `p` in the support.
    pub fn eval(&self, p: f64) -> Result<f64> {
        if !self.support.contains(p) {
            return Err(GlsError::Inadmissible { p, detail: format!("outside the support {} of {}", self.support, self.tag) });
        }
        self.eval_unchecked(p)
    }

    fn eval_unchecked(&self, p: f64) -> Result<f64> {
        match &*self.kind {
            PsiKind::Family(f) => Ok(match *f {
                PsiFamily::Power { a, b, alpha, beta } => (p - a).powf(-alpha) * (b - p).powf(-beta),
                PsiFamily::Exponent { beta } => p.powf(beta),
                PsiFamily::Degenerate { .. } => 1.0,
                PsiFamily::Gab { a, b, alpha, beta } => {
                    let h = (0.5 * (a + b)).min(2.0 * a);
                    if p < h {
                        (p - a).powf(-alpha)
                    } else {
                        (b - p).powf(-beta)
                    }
                }
            }),
            PsiKind::Natural { source, variant, memo } => {
                let key = p.to_bits();
                if let Some(v) = memo.lock().expect("memo lock").get(&key) {
                    return Ok(*v);
                }
                let v = lp(source, p, *variant)?.value;
                memo.lock().expect("memo lock").insert(key, v);
                Ok(v)
            }
            PsiKind::Transformed { base, kind } => {
                let inner = |q: f64| base.eval_unchecked(q);
                Ok(match *kind {
                    PsiTransformKind::Hilbert => pichorides(p)? * inner(p)?,
                    PsiTransformKind::ConjugateZeta => inner(p / (p - 1.0))?,
                    PsiTransformKind::DegreeD { d } => p.powf(d) * inner(p)?,
                    PsiTransformKind::Maximal { lambda, mu } => p.powf(lambda) * (p - 1.0).powf(-mu) * inner(p)?,
                    PsiTransformKind::Leindler => p * inner(p)?,
                })
            }
            PsiKind::Custom(f) => Ok(f(p)),
        }
    }
}

/// Applies a transform, mapping the support.
pub fn transform_psi(psi: &PsiFunction, kind: PsiTransformKind) -> Result<PsiFunction> {
    let Support::Open { lo, hi } = psi.support else {
        return Err(GlsError::SupportMismatch(format!("{} has a singleton support; transforms need an open interval", psi.tag)));
    };
    let support = match kind {
        PsiTransformKind::Hilbert | PsiTransformKind::Maximal { .. } => {
            if lo < 1.0 {
                return Err(GlsError::SupportMismatch(format!("{:?} needs support inside (1, inf), got {}", kind, psi.support)));
            }
            psi.support
        }
        PsiTransformKind::ConjugateZeta => {
            let dual = |q: f64| {
                if q == 1.0 {
                    f64::INFINITY
                } else if q.is_infinite() {
                    1.0
                } else {
                    q / (q - 1.0)
                }
            };
            if lo >= 1.0 && hi <= 2.0 || lo >= 2.0 {
                Support::Open { lo: dual(hi), hi: dual(lo) }
            } else {
                return Err(GlsError::SupportMismatch(format!(
                    "conjugate_zeta needs support inside (1, 2) or (2, inf), got {}",
                    psi.support
                )));
            }
        }
        PsiTransformKind::DegreeD { .. } | PsiTransformKind::Leindler => psi.support,
    };
    let tag = match kind {
        PsiTransformKind::Hilbert => format!("hilbert[{}]", psi.tag),
        PsiTransformKind::ConjugateZeta => format!("conjugate_zeta[{}]", psi.tag),
        PsiTransformKind::DegreeD { d } => format!("degree_d({d})[{}]", psi.tag),
        PsiTransformKind::Maximal { lambda, mu } => format!("maximal({lambda},{mu})[{}]", psi.tag),
        PsiTransformKind::Leindler => format!("leindler[{}]", psi.tag),
    };
    Ok(PsiFunction { kind: Arc::new(PsiKind::Transformed { base: psi.clone(), kind }), support, tag })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ViolationKind {
    OutsideSupport,
    NonFinite,
    NonPositive,
    NonConvex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiViolation {
    pub p: f64,
    pub kind: ViolationKind,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiReport {
    pub tag: String,
    pub checked: usize,
    pub violations: Vec<PsiViolation>,
    /// Convexity of `p ↦ p ln ψ(p)` on the grid, when requested.
    pub convex: Option<bool>,
}

impl PsiReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks positivity and finiteness on a grid and, optionally, convexity of
/// `p ln ψ(p)` by second divided differences.
pub fn validate_psi(psi: &PsiFunction, grid: &[f64], check_convexity: bool) -> PsiReport {
    let mut violations = Vec::new();
    let mut pts = Vec::new();
    for &p in grid {
        match psi.eval(p) {
            Err(_) => violations.push(PsiViolation { p, kind: ViolationKind::OutsideSupport, value: f64::NAN }),
            Ok(v) if !v.is_finite() => violations.push(PsiViolation { p, kind: ViolationKind::NonFinite, value: v }),
            Ok(v) if v <= 0.0 => violations.push(PsiViolation { p, kind: ViolationKind::NonPositive, value: v }),
            Ok(v) => pts.push((p, p * v.ln())),
        }
    }
    let convex = if check_convexity {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut ok = true;
        for w in pts.windows(3) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            let (x2, y2) = w[2];
            let s01 = (y1 - y0) / (x1 - x0);
            let s12 = (y2 - y1) / (x2 - x1);
            let scale = s01.abs().max(s12.abs()).max(1.0);
            if s12 - s01 < -1e-9 * scale {
                ok = false;
                violations.push(PsiViolation { p: x1, kind: ViolationKind::NonConvex, value: s12 - s01 });
            }
        }
        Some(ok)
    } else {
        None
    };
    PsiReport { tag: psi.tag.clone(), checked: grid.len(), violations, convex }
}

/// Parses `power:A,B,alpha,beta`, `exp:beta`, `degenerate:r`, `gab:a,b,alpha,beta`
/// or `natural:<source-spec>`.
pub fn parse_psi(spec: &str) -> Result<PsiFunction> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = || -> Result<Vec<f64>> {
        rest.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                let v = t.split_once('=').map_or(t, |(_, v)| v).trim();
                v.parse::<f64>().map_err(|_| GlsError::Spec(format!("bad psi parameter `{t}`")))
            })
            .collect()
    };
    let need = |v: &[f64], n: usize| -> Result<()> {
        if v.len() == n {
            Ok(())
        } else {
            Err(GlsError::Spec(format!("psi `{name}` takes {n} parameters, got {}", v.len())))
        }
    };
    match name {
        "power" => {
            let v = nums()?;
            need(&v, 4)?;
            make_family_psi(PsiFamily::Power { a: v[0], b: v[1], alpha: v[2], beta: v[3] })
        }
        "exp" | "exponent" => {
            let v = nums()?;
            need(&v, 1)?;
            make_family_psi(PsiFamily::Exponent { beta: v[0] })
        }
        "degenerate" => {
            let v = nums()?;
            need(&v, 1)?;
            make_family_psi(PsiFamily::Degenerate { r: v[0] })
        }
        "gab" => {
            let v = nums()?;
            need(&v, 4)?;
            make_family_psi(PsiFamily::Gab { a: v[0], b: v[1], alpha: v[2], beta: v[3] })
        }
        "natural" => {
            let src = crate::source::registry::parse_source(rest)?;
            natural_psi(&src, Variant::Plain, &[], None)
        }
        _ => Err(GlsError::Spec(format!("unknown psi family `{name}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_support_follows_finiteness() {
        let seq = crate::source::registry::parse_source("seq:power_log:L=2,q=0").unwrap();
        match finite_exponents(&seq, Variant::Plain).unwrap() {
            Support::Open { lo, hi } => assert!((lo - 2.0).abs() < 1e-12 && hi.is_infinite(), "({lo}, {hi})"),
            s => panic!("{s}"),
        }
        let psi = parse_psi("natural:seq:power_log:L=2,q=0").unwrap();
        assert!(psi.eval(1.5).is_err());
        let g = crate::gls::gls_norm(&seq, &psi, Variant::Plain, &crate::gls::GlsConfig::default()).unwrap();
        assert_eq!(g.value, 1.0);
    }

    #[test]
    fn family_values() {
        let p = make_family_psi(PsiFamily::Power { a: 2.0, b: 4.0, alpha: 1.0, beta: 1.0 }).unwrap();
        assert_eq!(p.eval(3.0).unwrap(), 1.0);
        let e = make_family_psi(PsiFamily::Exponent { beta: 0.5 }).unwrap();
        assert_eq!(e.eval(4.0).unwrap(), 2.0);
        assert!(e.eval(1.0).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_family_psi(PsiFamily::Power { a: 4.0, b: 2.0, alpha: 1.0, beta: 1.0 }).is_err());
        assert!(make_family_psi(PsiFamily::Exponent { beta: -1.0 }).is_err());
        assert!(make_family_psi(PsiFamily::Degenerate { r: 0.5 }).is_err());
    }

    #[test]
    fn transforms() {
        let one = make_family_psi(PsiFamily::Exponent { beta: 0.0 }).unwrap();
        let h = transform_psi(&one, PsiTransformKind::Hilbert).unwrap();
        assert!((h.eval(2.0).unwrap() - 1.0).abs() < 1e-15);
        let inv = PsiFunction::custom("1/(q-1)", Support::Open { lo: 1.0, hi: 2.0 }, |q| 1.0 / (q - 1.0));
        let z = transform_psi(&inv, PsiTransformKind::ConjugateZeta).unwrap();
        assert_eq!(z.support(), Support::Open { lo: 2.0, hi: f64::INFINITY });
        assert!((z.eval(3.0).unwrap() - 2.0).abs() < 1e-15);
        let m = make_family_psi(PsiFamily::Exponent { beta: 0.5 }).unwrap();
        let d = transform_psi(&m, PsiTransformKind::DegreeD { d: 1.0 }).unwrap();
        assert!((d.eval(4.0).unwrap() - 8.0).abs() < 1e-15);
        let deg = make_family_psi(PsiFamily::Degenerate { r: 2.0 }).unwrap();
        assert!(transform_psi(&deg, PsiTransformKind::Leindler).is_err());
        let wide = make_family_psi(PsiFamily::Exponent { beta: 1.0 }).unwrap();
        assert!(transform_psi(&wide, PsiTransformKind::ConjugateZeta).is_err());
    }

    #[test]
    fn validation_flags_injected_sign_flip() {
        let bad = PsiFunction::custom("flip", Support::Open { lo: 1.0, hi: 10.0 }, |p| if (p - 5.0).abs() < 1e-9 { -1.0 } else { p });
        let r = validate_psi(&bad, &[2.0, 5.0, 7.0], false);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].p, 5.0);
        assert_eq!(r.violations[0].kind, ViolationKind::NonPositive);
    }

    #[test]
    fn exponent_one_is_convex() {
        let e = make_family_psi(PsiFamily::Exponent { beta: 1.0 }).unwrap();
        let grid: Vec<f64> = (0..50).map(|i| 1.1 + 0.3 * i as f64).collect();
        let r = validate_psi(&e, &grid, true);
        assert_eq!(r.convex, Some(true));
        assert!(r.is_valid());
    }
}
