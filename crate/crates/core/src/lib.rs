//! The double cover `Pin(1,3) → O(1,3)` realized on 4×4 complex matrices,
//! the Dirac γ-matrix algebra, and the change-of-frame calculus for Dirac
//! spin-tensors.
//!
//! Modules build on each other in order: [`numerics`] → [`sl2c`] →
//! [`lorentz`] → [`dirac`] → [`spintensor`] → [`frames`]. [`verify`] runs
//! every identity as a randomized check; [`cli`] wraps it all in a command.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod dirac;
pub mod error;
pub mod frames;
pub mod lorentz;
pub mod numerics;
pub mod sl2c;
pub mod spintensor;
pub mod verify;

pub use error::{Error, Result};
