//! Rank-2 filtered (φ, N, Gal(F/K), E)-modules.
//!
//! D = ⊕_{i ∈ ℤ/n0} D_i with each D_i ≅ E² in a fixed basis. Galois acts
//! semilinearly: g maps D_i to D_{i+s(g)}, and on D_F the convention is
//! (g·x)_{j_F} = G(g)·x_{j_F·g}.

mod invariants;
mod linalg;
mod module;
mod stable;
mod validate;

pub use invariants::{t_h_line, t_h_module, t_n_line, t_n_module, FilIndex, StableLine};
pub use linalg::{Mat2, ProjLine, Vec2};
pub use module::{FiltrationData, GenAction, PhiNModule, ShiftedMats};
pub use stable::{
    eigenvalues, stable_lines, stable_lines_with_bound, StableLines, StableTag, DEFAULT_SQRT_BOUND,
};
pub use validate::{validate, Check, ValidationReport};
