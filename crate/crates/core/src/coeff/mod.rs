//! The coefficient field E = Q(ζ_m)[ϖ]/(ϖ^e − p) and its p-adic valuation.

mod cyclo;
mod ecoeff;
mod padic;
pub mod poly;
mod sqrt;

pub use cyclo::{CycloCtx, CycloRational};
pub use ecoeff::{ECoeff, ECtx};
pub use padic::PAdicEmbedding;
pub use sqrt::{sqrt_in_e, NoRootReason, SqrtResult};
