//! Exact number theory for the quotients `Q(z, y, n) = (z^n - y^n) / (z - y)`.
//!
//! The crate decides when an odd prime power `p^m` divides `Q(z, y, n)`,
//! constructs every residue class of `z` for which it does, and gathers the
//! supporting machinery: modular arithmetic, primality, factorization,
//! primitive roots modulo `p^2`, and exhaustive scans.
//!
//! Everything is `no_std` with `alloc`; all arithmetic is exact.

#![no_std]

extern crate alloc;

pub mod error;
pub mod factor;
pub mod modular;
pub mod primality;
pub mod primroot;
pub mod quotient;
pub mod scan;
pub mod witness;

pub use error::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = num_bigint::BigUint;
