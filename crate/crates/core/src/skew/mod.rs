//! `L_π`, the skew inverse semigroup ring `A ⋊_π S` and partial skew
//! groupoid rings, with the identities and simplicity criteria checked on
//! them.

pub mod checks;
pub mod groupoid_skew;
pub mod lpi;
pub mod skew_ring;

pub use checks::BaseFacts;
pub use groupoid_skew::GroupoidSkew;
pub use lpi::{LPiRing, SymbolicLPi, MAX_LPI_GENERATORS};
pub use skew_ring::SkewRing;
