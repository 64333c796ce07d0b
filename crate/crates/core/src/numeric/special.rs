//! Special-function helpers: ζ at real arguments, Taylor coefficients of
//! `1/Γ(1+z)` and `Γ(1-h)`, Stieltjes constants and the cosine integral.

use super::powerlog::PowerLog;
use super::sum::Compensated;
use std::sync::OnceLock;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Riemann ζ(s) for real `s > 1`.
pub fn zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta requires s > 1");
    PowerLog::new(s, 0.0).tail_sum(1).map(|e| e.value).unwrap_or(f64::INFINITY)
}

fn zeta_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![f64::NAN, f64::INFINITY];
        for k in 2..=64 {
            t.push(zeta(k as f64));
        }
        t
    })
}

/// ζ(k) for integer `k ≥ 2`.
pub fn zeta_int(k: usize) -> f64 {
    assert!(k >= 2);
    let t = zeta_table();
    if k < t.len() {
        t[k]
    } else {
        1.0 + 2f64.powi(-(k as i32))
    }
}

/// `exp` of a power series with zero constant term, truncated to `a.len()` terms.
pub fn series_exp(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut e = vec![0.0; n];
    if n == 0 {
        return e;
    }
    e[0] = 1.0;
    for m in 1..n {
        let mut acc = Compensated::default();
        for k in 1..=m {
            acc.add(k as f64 * a[k] * e[m - k]);
        }
        e[m] = acc.value() / m as f64;
    }
    e
}

/// Taylor coefficients `c_0..=c_n` of `1/Γ(1+z)`.
pub fn recip_gamma_coeffs(n: usize) -> Vec<f64> {
    let len = n.max(2) + 1;
    let mut a = vec![0.0; len];
    a[1] = EULER_GAMMA;
    for (k, ak) in a.iter_mut().enumerate().skip(2) {
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        *ak = sign * zeta_int(k) / k as f64;
    }
    let mut c = series_exp(&a);
    c.truncate(n + 1);
    c
}

/// Taylor coefficients `g_0..=g_n` of `Γ(1-h)`.
pub fn gamma_one_minus_coeffs(n: usize) -> Vec<f64> {
    let len = n.max(2) + 1;
    let mut a = vec![0.0; len];
    a[1] = EULER_GAMMA;
    for (k, ak) in a.iter_mut().enumerate().skip(2) {
        *ak = zeta_int(k) / k as f64;
    }
    let mut g = series_exp(&a);
    g.truncate(n + 1);
    g
}

/// Stieltjes constant γ_n, the coefficient sequence of the Laurent expansion of ζ at 1.
pub fn stieltjes(n: usize) -> f64 {
    const K: u64 = 200;
    let f = PowerLog::new(1.0, n as f64);
    let head = f.direct_sum(1, K - 1);
    let y = K as f64;
    let l = y.ln();
    let b = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0];
    let mut corr = Compensated::default();
    for (j, bj) in b.iter().enumerate() {
        corr.add(bj * f.derivative(2 * j + 1, y));
    }
    head + 0.5 * f.eval(y) - corr.value() - l.powi(n as i32 + 1) / (n as f64 + 1.0)
}

/// Cosine integral `Ci(t)` for `0 < t ≤ 16` by its power series.
pub fn cos_integral(t: f64) -> f64 {
    assert!(t > 0.0 && t <= 16.0, "cos_integral supports 0 < t <= 16");
    let mut acc = Compensated::default();
    let t2 = t * t;
    let mut term = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -t2 / ((2.0 * kf - 1.0) * (2.0 * kf));
        let add = term / (2.0 * kf);
        acc.add(add);
        if add.abs() < 1e-18 {
            break;
        }
    }
    EULER_GAMMA + t.ln() + acc.value()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recip_gamma_reproduces_gamma_at_half() {
        // 1/Γ(1.5) = 2/√π
        let c = recip_gamma_coeffs(30);
        let z: f64 = 0.5;
        let v: f64 = c.iter().enumerate().map(|(k, ck)| ck * z.powi(k as i32)).sum();
        assert!((v - 2.0 / std::f64::consts::PI.sqrt()).abs() < 1e-12, "{v}");
    }

    #[test]
    fn gamma_one_minus_at_half() {
        // Γ(0.5) = √π
        let g = gamma_one_minus_coeffs(60);
        let h: f64 = 0.5;
        let v: f64 = g.iter().enumerate().map(|(k, gk)| gk * h.powi(k as i32)).sum();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-12, "{v}");
    }

    #[test]
    fn stieltjes_known_values() {
        assert!((stieltjes(0) - EULER_GAMMA).abs() < 1e-13);
        assert!((stieltjes(1) + 0.072_815_845_483_676_7).abs() < 1e-13);
        assert!((stieltjes(2) + 0.009_690_363_192_872_32).abs() < 1e-13);
    }

    #[test]
    fn cos_integral_values() {
        // Ci(1) frozen from an arbitrary-precision evaluation.
        assert!((cos_integral(1.0) - 0.337_403_922_900_968_1).abs() < 1e-14);
        assert!((cos_integral(1e-4) - (EULER_GAMMA + (1e-4f64).ln())).abs() < 1e-8);
    }

    #[test]
    fn zeta_int_table() {
        assert!((zeta_int(2) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
        assert!((zeta_int(4) - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-14);
    }
}
