#![allow(clippy::needless_range_loop)]
pub mod cli;
pub mod ellfib;
pub mod error;
pub mod exactmath;
pub mod graded;
pub mod k3cat;
pub mod lattice;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
