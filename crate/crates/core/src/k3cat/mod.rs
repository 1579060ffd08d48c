//! The concrete lattices: coordinates on the K3 lattice, the named catalog,
//! the embedding of `M₀` and the transcendental-lattice checks.

pub mod basis;
pub mod catalog;
pub mod checks;
pub mod labeling;

pub use basis::{AmbientVector, K3Basis};
pub use catalog::{catalog, Catalog, CATALOG_NAMES};
pub use checks::{
    catalog_check, complement_check, embed_a_j, embed_m0, disc_generators_check, nikulin_check, verify_b_vs_a_twists, verify_transcendental_lattice, ComplementCheck,
};
pub use labeling::{derive_e8_labeling, surviving_labelings, Labeling, TRANSCENDENTAL_GRAM};
