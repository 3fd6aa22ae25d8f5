//! Pseudospectral laboratory for the defocusing nonlinear Schrödinger
//! equation `i u_t + Δu = λ₁|u|^{p₁}u + λ₂|u|^{p₂}u` on periodic boxes in one
//! and two dimensions.
//!
//! The crate provides the smoothing multiplier `I = I_N` and the modified
//! energy `E(Iu)`, commutator and energy-increment diagnostics, Strichartz
//! and interaction-Morawetz space-time norms, rough initial data of
//! prescribed Sobolev regularity, regularity-threshold formulas, and the
//! experiment drivers behind the `nls-lab` command line tool.

pub mod data;
pub mod dynamics;
mod error;
pub mod experiments;
pub mod imethod;
pub mod spacetime;
pub mod spectral;

pub use error::{Error, Result};
