//! Exact arithmetic for rank-2 filtered (φ, N, Gal(F/K), E)-modules.
//!
//! The crate builds the canonical module of every classification case
//! (Steinberg, the three principal series shapes, and the two supercuspidal
//! shapes), checks weak admissibility both through closed-form inequalities
//! and by brute force over stable lines, and classifies arbitrary modules by
//! Frobenius shape and inertial type.
//!
//! Everything is exact: coefficients live in `Q(ζ_m)[ϖ]/(ϖ^e − p)` and
//! valuations are computed through a Hensel-lifted prime above `p`.

#![no_std]

extern crate alloc;

pub mod admissibility;
pub mod builder;
pub mod classify;
pub mod coeff;
mod error;
pub mod phimod;
pub mod tower;

pub use error::{Error, Result};

/// Small exact rationals used for valuations, weights and Newton/Hodge numbers.
pub type Q64 = num_rational::Ratio<i64>;
