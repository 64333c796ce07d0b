//! Sources: registry functions on the torus or line, and weighted sequences.

pub mod family;
pub mod function;
pub mod gdelta;
pub mod registry;
pub mod sequence;
pub mod table;
pub mod trig;

pub use family::{Domain, Family, GDeltaKind, Point, Segment};
pub use function::SampledFunction;
pub use gdelta::GDeltaSeries;
pub use sequence::{Coeffs, SeqVariant, Weight, WeightedSequence};
pub use trig::TrigPolynomial;

/// Anything with `p`-norms.
#[derive(Debug, Clone)]
pub enum Source {
    Function(SampledFunction),
    Sequence(WeightedSequence),
}

impl Source {
    pub fn name(&self) -> String {
        match self {
            Source::Function(f) => f.name(),
            Source::Sequence(s) => {
                if s.label().is_empty() {
                    "sequence".into()
                } else {
                    s.label().to_string()
                }
            }
        }
    }

    pub fn scale(&self, s: f64) -> Source {
        match self {
            Source::Function(f) => Source::Function(f.scale(s)),
            Source::Sequence(c) => Source::Sequence(c.scale(s)),
        }
    }

    pub fn base(&self) -> Source {
        match self {
            Source::Function(f) => Source::Function(f.base()),
            Source::Sequence(c) => Source::Sequence(c.base()),
        }
    }

    pub fn apply_abs_amplitude(&self, v: f64) -> f64 {
        match self {
            Source::Function(f) => f.apply_abs_amplitude(v),
            Source::Sequence(c) => c.apply_abs_amplitude(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        let amps = match self {
            Source::Function(f) => f.amplitudes(),
            Source::Sequence(c) => c.amplitudes(),
        };
        amps.contains(&0.0)
    }
}

impl From<SampledFunction> for Source {
    fn from(f: SampledFunction) -> Self {
        Source::Function(f)
    }
}

impl From<WeightedSequence> for Source {
    fn from(s: WeightedSequence) -> Self {
        Source::Sequence(s)
    }
}

impl From<Family> for Source {
    fn from(f: Family) -> Self {
        Source::Function(SampledFunction::new(f))
    }
}
