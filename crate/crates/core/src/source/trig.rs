//! Real trigonometric polynomials `a(0)/2 + Σ a(k) cos kx + b(k) sin kx`.

use crate::error::{GlsError, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPolynomial {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TrigPolynomial {
    /// Builds from cosine coefficients `a(0..=M)` and sine coefficients `b(1..=M)`.
    pub fn new(a: Vec<f64>, b_from_one: Vec<f64>) -> Result<Self> {
        let m = a.len().saturating_sub(1).max(b_from_one.len());
        let mut av = a;
        av.resize(m + 1, 0.0);
        let mut bv = Vec::with_capacity(m + 1);
        bv.push(0.0);
        bv.extend(b_from_one);
        bv.resize(m + 1, 0.0);
        if av.iter().chain(bv.iter()).any(|v| !v.is_finite()) {
            return Err(GlsError::invalid("trigonometric coefficients must be finite"));
        }
        Ok(TrigPolynomial { a: av, b: bv })
    }

    pub fn zero() -> Self {
        TrigPolynomial { a: vec![0.0], b: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        TrigPolynomial { a: vec![2.0 * c], b: vec![0.0] }
    }

    pub fn cos(k: usize) -> Self {
        let mut a = vec![0.0; k + 1];
        if k == 0 {
            a[0] = 2.0;
        } else {
            a[k] = 1.0;
        }
        TrigPolynomial { a, b: vec![0.0; k + 1] }
    }

    pub fn sin(k: usize) -> Self {
        let mut b = vec![0.0; k + 1];
        if k > 0 {
            b[k] = 1.0;
        }
        TrigPolynomial { a: vec![0.0; k + 1], b }
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    /// `a(0..=M)`.
    pub fn cos_coeffs(&self) -> &[f64] {
        &self.a
    }

    /// `b(0..=M)` with `b(0) = 0`.
    pub fn sin_coeffs(&self) -> &[f64] {
        &self.b
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut terms = Vec::with_capacity(2 * self.a.len());
        terms.push(0.5 * self.a[0]);
        for k in 1..self.a.len() {
            let kx = k as f64 * x;
            let (s, c) = kx.sin_cos();
            terms.push(self.a[k] * c);
            terms.push(self.b[k] * s);
        }
        crate::numeric::sum::pairwise(&terms)
    }

    /// Conjugate function: `cos kx ↦ sin kx`, `sin kx ↦ -cos kx`, constant term dropped.
    pub fn hilbert(&self) -> Self {
        let a: Vec<f64> = self.b.iter().map(|v| -v).collect();
        let mut b = self.a.clone();
        b[0] = 0.0;
        let mut a = a;
        a[0] = 0.0;
        TrigPolynomial { a, b }
    }

    /// Partial sum `s_M`: keeps frequencies `≤ m`.
    pub fn partial_sum(&self, m: usize) -> Self {
        let k = m.min(self.degree());
        TrigPolynomial { a: self.a[..=k].to_vec(), b: self.b[..=k].to_vec() }
    }

    pub fn mean_zero(&self) -> Self {
        let mut a = self.a.clone();
        a[0] = 0.0;
        TrigPolynomial { a, b: self.b.clone() }
    }

    pub fn scale(&self, s: f64) -> Self {
        TrigPolynomial { a: self.a.iter().map(|v| s * v).collect(), b: self.b.iter().map(|v| s * v).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.degree().max(other.degree());
        let get = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
        TrigPolynomial {
            a: (0..=m).map(|k| get(&self.a, k) + get(&other.a, k)).collect(),
            b: (0..=m).map(|k| get(&self.b, k) + get(&other.b, k)).collect(),
        }
    }

    /// Fourier coefficients `c(n)`, `n = 0..=M`, for the normalized measure; `c(-n) = conj c(n)`.
    pub fn complex_coeffs(&self) -> Vec<Complex64> {
        (0..=self.degree())
            .map(|n| if n == 0 { Complex64::new(0.5 * self.a[0], 0.0) } else { Complex64::new(0.5 * self.a[n], 0.5 * self.b[n]) })
            .collect()
    }

    /// Rebuilds a real polynomial from `c(0..=M)`.
    pub fn from_complex_coeffs(c: &[Complex64]) -> Self {
        let a: Vec<f64> = c.iter().map(|z| 2.0 * z.re).collect();
        let mut b: Vec<f64> = c.iter().map(|z| 2.0 * z.im).collect();
        b[0] = 0.0;
        TrigPolynomial { a, b }
    }

    /// `|f|_2` under the normalized measure, from coefficients.
    pub fn l2_norm(&self) -> f64 {
        let mut terms = vec![0.25 * self.a[0] * self.a[0]];
        for k in 1..self.a.len() {
            terms.push(0.5 * (self.a[k] * self.a[k] + self.b[k] * self.b[k]));
        }
        crate::numeric::sum::pairwise(&terms).sqrt()
    }

    /// Number of equispaced nodes used for norms: a power of two at least `max(1024, 64(M+1))`.
    pub fn trapezoid_nodes(&self) -> usize {
        (64 * (self.degree() + 1)).max(1024).next_power_of_two()
    }

    /// Values at `x_j = 2πj/n`.
    pub fn sample(&self, n: usize) -> Vec<f64> {
        (0..n).map(|j| self.eval(2.0 * PI * j as f64 / n as f64)).collect()
    }

    /// Largest coefficient magnitude at frequencies above `k`.
    pub fn max_coeff_above(&self, k: usize) -> f64 {
        (k + 1..=self.degree()).map(|n| self.a[n].abs().max(self.b[n].abs())).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_maps_cos_to_sin_and_sin_to_minus_cos() {
        assert_eq!(TrigPolynomial::cos(3).hilbert(), TrigPolynomial::sin(3));
        assert_eq!(TrigPolynomial::sin(2).hilbert(), TrigPolynomial::cos(2).scale(-1.0));
        assert_eq!(TrigPolynomial::constant(4.0).hilbert(), TrigPolynomial::constant(0.0));
    }

    #[test]
    fn complex_coefficients_round_trip() {
        let f = TrigPolynomial::new(vec![1.0, 2.0, -0.5], vec![0.25, 3.0]).unwrap();
        assert_eq!(TrigPolynomial::from_complex_coeffs(&f.complex_coeffs()), f);
    }

    #[test]
    fn evaluation_and_l2() {
        let f = TrigPolynomial::new(vec![2.0, 1.0], vec![1.0]).unwrap();
        let x = 0.7;
        assert!((f.eval(x) - (1.0 + x.cos() + x.sin())).abs() < 1e-15);
        assert!((f.l2_norm() - 2f64.sqrt()).abs() < 1e-15);
    }
}
