//! Seeded corpora of random trigonometric polynomials.

use crate::error::{GlsError, Result};
use crate::source::TrigPolynomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_NAMES: [&str; 2] = ["trig-20", "trig-small"];

fn generate(seed: u64, count: usize, max_degree: usize) -> Vec<TrigPolynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(1..=max_degree);
            let a: Vec<f64> = (0..=m).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let b: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
            TrigPolynomial::new(a, b).expect("finite coefficients")
        })
        .collect()
}

/// `trig-20`: 20 polynomials of degree at most 64. `trig-small`: 6 of degree at most 8.
pub fn trig_corpus(name: &str) -> Result<Vec<TrigPolynomial>> {
    match name {
        "trig-20" => Ok(generate(0x5EED_0020, 20, 64)),
        "trig-small" => Ok(generate(0x5EED_0006, 6, 8)),
        _ => Err(GlsError::Spec(format!("unknown corpus `{name}` (known: {})", CORPUS_NAMES.join(", ")))),
    }
}
