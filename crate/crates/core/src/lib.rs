#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Grand Lebesgue space norms, tails, conjugates and operator checks in one dimension.

pub mod corpus;
pub mod duality;
pub mod error;
pub mod gls;
pub mod norms;
pub mod numeric;
pub mod operators;
pub mod psi;
pub mod sharpness;
pub mod source;
pub mod suite;

pub use error::{GlsError, Result};
