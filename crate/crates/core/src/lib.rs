//! # renyi-bounds
//!
//! Lower and upper bounds on the entanglement Rényi-α entropy
//!
//! ```text
//! E_α(ρ) = min Σ p_i H_α(μ(ψ_i))      (convex roof over pure decompositions)
//! ```
//!
//! of finite-dimensional bipartite states, computed from a concurrence
//! bracket `C̲ ≤ C(ρ) ≤ C̄`:
//!
//! ```text
//! co[R_L](C̲) ≤ E_α(ρ) ≤ ca[R_U](C̄)
//! ```
//!
//! where `R_L(c)` / `R_U(c)` are the smallest / largest Rényi entropy of a
//! Schmidt vector with concurrence `c`, and `co` / `ca` denote the convex /
//! concave hulls over the concurrence interval.
//!
//! ## Modules
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`qstate`] | bipartite density matrices, reductions, realignment, norms, entropies |
//! | [`concurrence`] | pure-state concurrence and the mixed-state bracket `(C̲, C̄)` |
//! | [`curves`] | extremal curves `R_L`, `R_U` (pattern enumeration, printed branches, brute-force oracle) |
//! | [`hull`] | convex/concave hulls, tangent solves, final bounds |
//! | [`states`] | Werner and isotropic-family states, random ensembles, decompositions |
//! | [`measures`] | companion measures (EOF, GM, log-negativity, G-concurrence) and inequality checks |
//!
//! All entropies are in bits.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod concurrence;
pub mod curves;
mod error;
pub mod hull;
pub mod measures;
pub mod qstate;
pub mod states;

pub use concurrence::{concurrence_bracket, ConcurrenceBracket};
pub use curves::{extremal_curve, CurveMethod, Extremum};
pub use error::{Error, Result};
pub use hull::{
    bounds_from_concurrence, build_hull, evaluate_bounds, BoundsOptions, BoundsReport, HullCache,
    HullFunction, HullKind,
};
pub use qstate::{BipartiteDims, DensityMatrix, PureState, SchmidtVector};
