//! Binomial coefficient families, the matrices `N` and `M`, and their
//! exhaustive verification.

pub mod coeff;
pub mod identities;
pub mod matrix;
pub mod poly;
pub mod sweep;
pub mod verify;

pub use coeff::{
    binom, c_coeff, d_coeff, difference_recurrence_holds, hockey_stick, pathcount_closed_form,
    pathcount_power, telescoping_holds, v_coeffs, v_support, VSupport,
};
pub use identities::{run_identity_suite, IdentityCheck, IdentityLimits};
pub use matrix::{nullspace_int, IntMatrix};
pub use poly::{p_poly, p_polys, PolyCertificate, RatPoly};
pub use sweep::{index_sets, sweep, sweep_sequential, sweep_with_jobs, SweepReport, SweepRow};
pub use verify::{build_m, build_n, lift, verify_index_set, IndexReport, IndexSet};

#[cfg(feature = "parallel")]
pub use sweep::sweep_parallel;
