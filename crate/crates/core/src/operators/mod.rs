//! Linear and maximal operators with their classical constants.

pub mod checks;
pub mod constants;
pub mod fourier;
pub mod hilbert;
pub mod leindler;
pub mod maximal;
pub mod weight;

pub use constants::{pichorides, sharp_constant, SharpConstant, SharpConstantKind};
pub use fourier::{fourier_line, fourier_torus, partial_inverse_line, truncated_fourier, TorusFourier};
pub use leindler::{leindler_apply, Which};
