//! The series `S_Δ(x) = Σ_{n≥1} (ln n)^Δ n^{-1} e^{inx}`. Its imaginary part is the
//! sine family and its real part the cosine family.
//!
//! For `ln(1/x) ≤ 30` the series is evaluated through the Laplace representation
//! `S_Δ(x) = ∫ D_Δ(ln t) · t/(e^{t-ix} - 1) d(ln t)`, where `D_Δ` collects the
//! derivatives of `t^{s-1}/Γ(s)` at `s = 1`. Deeper points use the expansion
//! in `L = ln x - iπ/2` built from the Taylor series of `Γ(1-h)` and the
//! Stieltjes constant `γ_Δ`; its error is `O(x |ln x|^Δ)`.

use crate::numeric::gauss::gl16;
use crate::numeric::special::{binomial, factorial, gamma_one_minus_coeffs, recip_gamma_coeffs, stieltjes};
use crate::numeric::sum::Compensated;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Depth `ln(1/x)` beyond which the small-x expansion is used.
pub const DEEP_SWITCH: f64 = 30.0;

#[derive(Debug, Clone)]
pub struct GDeltaSeries {
    delta: u32,
    /// Coefficients of the polynomial `D_Δ(v)` in `v = ln t`.
    laplace_poly: Vec<f64>,
    /// Taylor coefficients of `Γ(1-h)` up to order `Δ+1`.
    gamma_taylor: Vec<f64>,
    stieltjes: f64,
}

impl GDeltaSeries {
    pub fn new(delta: u32) -> Self {
        let d = delta as usize;
        let c = recip_gamma_coeffs(d);
        let sign = if d.is_multiple_of(2) { 1.0 } else { -1.0 };
        let laplace_poly = (0..=d).map(|j| sign * binomial(d, j) * factorial(d - j) * c[d - j]).collect();
        GDeltaSeries { delta, laplace_poly, gamma_taylor: gamma_one_minus_coeffs(d + 1), stieltjes: stieltjes(d) }
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// `S_Δ(x)` for `0 < x ≤ π` given `ln x`.
    pub fn eval_ln(&self, ln_x: f64) -> Complex64 {
        if -ln_x > DEEP_SWITCH {
            self.small_x(ln_x)
        } else {
            self.laplace(ln_x)
        }
    }

    /// `S_Δ(x)` for real `x`, reduced to `(-π, π]`; conjugate symmetric in `x`.
    pub fn eval(&self, x: f64) -> Complex64 {
        let r = reduce(x);
        if r == 0.0 {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        let s = self.eval_ln(r.abs().ln());
        if r < 0.0 {
            s.conj()
        } else {
            s
        }
    }

    fn laplace(&self, ln_x: f64) -> Complex64 {
        let x = ln_x.exp();
        let ell = -ln_x;
        let lo = -ell.max(0.0) - 45.0;
        let hi = 4.0;
        let panels = (hi - lo).ceil() as usize;
        let rule = gl16();
        let (sx, cx) = x.sin_cos();
        let half = (0.5 * x).sin();
        let two_sin2 = 2.0 * half * half;
        let mut re = Compensated::default();
        let mut im = Compensated::default();
        for k in 0..panels {
            let a = lo + k as f64;
            for i in 0..rule.nodes.len() {
                let (v, w) = rule.mapped(i, a, a + 1.0);
                let t = v.exp();
                let d = horner(&self.laplace_poly, v);
                let ar = t.exp_m1() * cx - two_sin2;
                let bi = -t.exp() * sx;
                let scale = ar.abs().max(bi.abs());
                let (ar_s, bi_s) = (ar / scale, bi / scale);
                let den = (ar_s * ar_s + bi_s * bi_s) * scale;
                re.add(w * d * t * ar_s / den);
                im.add(-w * d * t * bi_s / den);
            }
        }
        Complex64::new(re.value(), im.value())
    }

    fn small_x(&self, ln_x: f64) -> Complex64 {
        let d = self.delta as usize;
        let l = Complex64::new(ln_x, -0.5 * PI);
        // c_{Δ+1}(L) = Σ_j g_j L^{Δ+1-j}/(Δ+1-j)!
        let k = d + 1;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..=k {
            acc += self.gamma_taylor[j] * l.powu((k - j) as u32) / factorial(k - j);
        }
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        acc * (sign * factorial(d)) + self.stieltjes
    }

    /// Direct partial sum `Σ_{n ≤ n_max}`.
    pub fn partial_sum(&self, x: f64, n_max: u64) -> Complex64 {
        let mut re = Compensated::default();
        let mut im = Compensated::default();
        for n in 2..=n_max {
            let nf = n as f64;
            let c = nf.ln().powi(self.delta as i32) / nf;
            let (s, co) = (nf * x).sin_cos();
            re.add(c * co);
            im.add(c * s);
        }
        if self.delta == 0 {
            let (s, co) = x.sin_cos();
            re.add(co);
            im.add(s);
        }
        Complex64::new(re.value(), im.value())
    }
}

fn horner(c: &[f64], v: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * v + ci)
}

/// Reduces `x` to `(-π, π]`.
pub fn reduce(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x;
    }
    let tau = 2.0 * PI;
    let mut r = x.rem_euclid(tau);
    if r > PI {
        r -= tau;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_zero_matches_closed_forms() {
        let s = GDeltaSeries::new(0);
        for x in [0.001, 0.3, 1.0, 2.5, 3.1] {
            let v = s.eval(x);
            assert!((v.im - (PI - x) / 2.0).abs() < 1e-13, "sin x={x}");
            assert!((v.re + (2.0 * (x / 2.0).sin()).ln()).abs() < 1e-13, "cos x={x}");
        }
    }

    #[test]
    fn delta_one_matches_kummer_series() {
        // Σ ln n sin(2πny)/n = π[lnΓ(y) - (1/2-y)(γ+ln 2) - (1-y) ln π + ½ ln sin πy]
        let s = GDeltaSeries::new(1);
        for y in [0.01f64, 0.1, 0.3, 0.45] {
            let k = PI
                * (statrs::function::gamma::ln_gamma(y)
                    - (0.5 - y) * (crate::numeric::special::EULER_GAMMA + 2f64.ln())
                    - (1.0 - y) * PI.ln()
                    + 0.5 * (PI * y).sin().ln());
            let v = s.eval(2.0 * PI * y).im;
            assert!((v - k).abs() < 1e-11, "y={y}: {v} vs {k}");
        }
    }

    #[test]
    fn expansions_agree_at_switch() {
        for d in [0u32, 1, 3, 8] {
            let s = GDeltaSeries::new(d);
            let a = s.laplace(-DEEP_SWITCH);
            let b = s.small_x(-DEEP_SWITCH);
            assert!((a - b).norm() < 1e-11 * a.norm(), "Δ={d}: {a} vs {b}");
        }
    }

    #[test]
    fn partial_sums_approach_the_series() {
        let s = GDeltaSeries::new(2);
        let x = 1.3;
        let exact = s.eval(x);
        let n = 200_000;
        let ps = s.partial_sum(x, n);
        // Remainder bounded by (ln N)^Δ / (N sin(x/2)).
        let bound = (n as f64).ln().powi(2) / (n as f64 * (x / 2.0).sin());
        assert!((ps - exact).norm() < bound, "{ps} vs {exact}");
    }
}
