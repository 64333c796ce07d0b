//! Gauss–Legendre rules on [-1, 1].

use std::sync::OnceLock;

#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Builds the n-point rule by Newton iteration on the Legendre polynomial.
    pub fn legendre(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, z);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Maps node `i` to `[a, b]`, returning `(x, w)`.
    #[inline]
    pub fn mapped(&self, i: usize, a: f64, b: f64) -> (f64, f64) {
        let half = 0.5 * (b - a);
        (0.5 * (a + b) + half * self.nodes[i], half * self.weights[i])
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let mut terms = [0.0f64; 64];
        let n = self.len();
        if n <= 64 {
            for (i, t) in terms.iter_mut().enumerate().take(n) {
                let (x, w) = self.mapped(i, a, b);
                *t = w * f(x);
            }
            super::sum::pairwise(&terms[..n])
        } else {
            let v: Vec<f64> = (0..n)
                .map(|i| {
                    let (x, w) = self.mapped(i, a, b);
                    w * f(x)
                })
                .collect();
            super::sum::pairwise(&v)
        }
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// The 16-point rule used for every production quadrature cell.
pub fn gl16() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::legendre(16))
}

/// The 8-point companion rule used for error estimates.
pub fn gl8() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::legendre(8))
}
