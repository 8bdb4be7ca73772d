//! Numerical realization of jet kernels, quotient modules, orthogonal decompositions
//! and Möbius homogeneity for weighted Bergman modules over the polydisc.

pub mod decomposition;
pub mod error;
pub mod export;
pub mod fd;
pub mod homogeneity;
pub mod jets;
pub mod kernel;
pub mod linalg;
pub mod mobius;
pub mod polynomial;
pub mod quotient;
pub mod special;

pub use error::{JetError, Result};
pub use kernel::{eval_kernel, factor_mixed_partial, mixed_partial, DerivOrder, Point, ProductKernel, C64};
pub use special::pochhammer;

/// Shorthand for a complex number with the given parts.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
