//! The Weierstrass family `y² = x³ + g₂(x₀)x + g₃(x₀)` over the projective
//! line: Kodaira fibers, the resultant `r(a)` and the weight-84 factor of the
//! discriminant.

mod fibers;
mod invariants;
mod kodaira;
mod params;
mod samples;

pub use fibers::{classify_all, classify_place, is_k3, FiberConfiguration, FiberReport, Place};
pub use invariants::{depressed_factors, disc84, disc84_euclid, disc_depressed, resultant_r, D84_REFERENCE};
pub use kodaira::{classify_orders, KodairaType, ORD_INFINITE};
pub use params::{build_model, quotient_sigma, FamilyParams, WeierstrassModel, WEIGHTS};
pub use samples::{degenerate_sample, random_params, random_rational, SampleKind};
