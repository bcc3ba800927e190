//! Covariant harmonic oscillators in the longitudinal/time-like plane.
//!
//! Lorentz boosts act on normalizable oscillator wave functions as squeeze
//! transformations. This crate evaluates those states, their Fock-series
//! expansion, the reduced density matrix left after tracing out the
//! time-like separation, and its purity and entropy. It also carries an
//! explicit 4×4 realization of the Lorentz algebra with the boosted
//! little-group generators and their contraction to E(2).
//!
//! Every closed form has an independent quadrature or series counterpart;
//! [`verify`] runs the full set of cross-checks.

pub mod commands;
pub mod density;
pub mod error;
pub mod lorentz;
pub mod matrix;
pub mod oscillator;
pub mod output;
pub mod quadrature;
pub mod special_functions;
pub mod squeeze;
pub mod verify;

pub use error::{Error, Result};
pub use oscillator::{LightConePoint, Rapidity, SpacetimePoint};
