//! Exact calculus for the instanton knot invariants `ν♯`, `r₀`, `τ♯` and
//! `ε♯`: surgery dimensions, slope bounds, concordance arithmetic, a rule
//! engine over partial records, and the exact verifications behind the
//! parity of `ν♯`.

pub mod concordance;
pub mod dimension;
pub mod error;
pub mod graded;
pub mod inference;
pub mod knot;
pub mod parity;
pub mod slope;

pub use concordance::{
    compare, epsilon, epsilon_of_sum, mirror, nu_of_sum, shape_of_sum, EpsilonValue, SumExpr,
};
pub use dimension::{
    classify_small, dim_surgery, dim_table, slope_bound, Bundle, Classification, SlopeBound,
};
pub use error::{Error, Result};
pub use inference::{apply_rules, check_consistency, InferenceOptions, InferenceReport};
pub use knot::{seed_database, Flag, KnotRecord, Shape, SignSet};
pub use slope::{cable_slope, distance, farey_parents, normalize, Slope};
