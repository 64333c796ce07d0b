//! Deterministic summation. Every accumulation in the crate goes through these
//! helpers so serial and parallel runs agree bitwise.

const BLOCK: usize = 32;

/// Pairwise (tree) sum with a fixed split order.
pub fn pairwise(xs: &[f64]) -> f64 {
    if xs.len() <= BLOCK {
        let mut s = 0.0;
        for &x in xs {
            s += x;
        }
        s
    } else {
        let mid = xs.len() / 2;
        pairwise(&xs[..mid]) + pairwise(&xs[mid..])
    }
}

/// `ln Σ exp(l_i)`, with `-inf` entries ignored. Returns `-inf` for an empty or all-zero sum.
pub fn log_sum_exp(logs: &[f64]) -> f64 {
    let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if m == f64::INFINITY {
        return f64::INFINITY;
    }
    let scaled: Vec<f64> = logs.iter().map(|&l| (l - m).exp()).collect();
    m + pairwise(&scaled).ln()
}

/// `ln(e^a + e^b)`.
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Running Neumaier-compensated sum, used for long prefix/suffix sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Inclusive prefix sums with compensation.
pub fn prefix_sums(xs: &[f64]) -> Vec<f64> {
    let mut acc = Compensated::default();
    xs.iter()
        .map(|&x| {
            acc.add(x);
            acc.value()
        })
        .collect()
}

/// Inclusive suffix sums with compensation: `out[i] = Σ_{j ≥ i} xs[j]`.
pub fn suffix_sums(xs: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; xs.len()];
    let mut acc = Compensated::default();
    for i in (0..xs.len()).rev() {
        acc.add(xs[i]);
        out[i] = acc.value();
    }
    out
}
