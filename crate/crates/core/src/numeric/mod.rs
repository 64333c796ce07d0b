//! Numerical building blocks shared by every module.

pub mod gauss;
pub mod golden;
pub mod levels;
pub mod powerlog;
pub mod special;
pub mod sum;

pub use powerlog::{Estimate, PowerLog};
