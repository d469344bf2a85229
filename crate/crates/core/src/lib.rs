//! Lattice codes for the binary deletion channel.
//!
//! Binary words are mapped to their runlength vectors; a few deletions
//! become a small Manhattan error, so Construction A lattices over `Z2` and
//! `Z4` give deletion-correcting codebooks. The crate counts such codebooks
//! with shifted theta-like series, enumerates them by tree search, decodes
//! single deletions, and evaluates finite and asymptotic bounds.

pub mod bounds;
pub mod channel;
pub mod codebook;
pub mod codes_gf2;
pub mod codes_z4;
pub mod decoder;
pub mod error;
pub mod lattice;
pub mod runlength;
pub mod series;
pub mod tables;

pub use error::{Error, Result};
