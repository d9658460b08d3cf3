//! Exact verification engine for the doubly transitive SICs and the integer
//! rings of the normed division algebras.

pub mod error;
pub mod exact;
pub mod groups;
pub mod matgroups;
pub mod lattices;
pub mod sic;
pub mod algebras;
pub mod claims;

pub use error::{Error, Result};

/// Seed for every sampled check, so reports are reproducible.
pub const SAMPLE_SEED: u64 = 0x005e_ed0f_51c5;
