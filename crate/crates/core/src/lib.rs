//! Modeling the valid differential transitions of small SBoxes as minimal
//! systems of integer linear inequalities, for use in MILP-based differential
//! trail search.
//!
//! The pipeline: compute the DDT of an SBox ([`sbox`]), split the 2n-bit
//! difference space into possible and impossible transitions, compute the
//! exact H-representation of the convex hull of the possible points
//! ([`hull`]), enlarge the hull facets into a candidate pool ([`pool`]), and
//! reduce the pool to a minimum-size model by greedy heuristics ([`greedy`])
//! or exact set cover ([`setcover`]). Every produced model is certified by
//! exhaustive enumeration ([`verify`]).

pub mod bitset;
pub mod corpus;
pub mod error;
pub mod greedy;
pub mod hull;
pub mod inequality;
pub mod model;
pub mod pool;
pub mod sbox;
pub mod setcover;
pub mod verify;

pub use bitset::Bitset;
pub use error::Error;
pub use hull::HRep;
pub use inequality::{Inequality, RemovalSet};
pub use pool::CandidatePool;
pub use sbox::{Ddt, DiffPoint, Partition, SBox};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
