//! Systems over inverse semigroups: validation, structural predicates,
//! epsilon-strength, system ideals and the simplicity criteria built on them.

pub mod epsilon;
pub mod ideals;
pub mod system;
pub mod theorems;

pub use epsilon::{EpsilonStrength, EpsilonWitness, Hand, Property, Scope};
pub use system::{StructuralPredicates, SystemRing};
