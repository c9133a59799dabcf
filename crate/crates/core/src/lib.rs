//! Exact computational algebra for curved algebras of Landau-Ginzburg models.
//!
//! The crate is `no_std` with `alloc`. File formats, reports and the command
//! line live in the companion `lgcurve` crate.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod hkr;
pub mod hoch;
pub mod jacobi;
pub mod linalg;
pub mod matfact;
pub mod orbifold;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
