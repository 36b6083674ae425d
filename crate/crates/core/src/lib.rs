//! CHSH expectation, spectral bounds and see-saw maximization for
//! two-qudit states, expressed in the generalized Gell-Mann basis.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, reports and
//! the command-line front end live in the `qchsh` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod correlation;
pub mod error;
pub mod numerics;
pub mod optimizer;
pub mod representation;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use rand_chacha::{rand_core, ChaCha8Rng};
