//! Constant-depth algorithms for univariate polynomial algebra over prime
//! fields.
//!
//! Every algorithm works from the coefficients of its inputs through power
//! sums of roots, elementary symmetric functions evaluated by interpolation,
//! and first-nonzero selection, without Euclidean remainder sequences. Each
//! operation is available as a direct evaluation routine, and the core
//! constructions can also be emitted as explicit arithmetic circuits whose
//! size and depth are measured.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod circuit;
pub mod error;
pub mod field;
pub mod gcdlib;
pub mod gpoly;
pub mod matrix;
pub mod mpoly;
pub mod newton;
pub mod oracle;
pub mod ring;
pub mod rootops;
pub mod structmat;
pub mod symroots;
pub mod upoly;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use upoly::{Degree, DensePoly};
