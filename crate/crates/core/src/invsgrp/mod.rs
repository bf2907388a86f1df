//! Finite inverse semigroups, finite groupoids, and the bisection semigroup
//! of a finite discrete groupoid.

pub mod bisection;
pub mod groupoid;
pub mod semigroup;

pub use bisection::{BisectionSemigroup, DEFAULT_BISECTION_CAP};
pub use groupoid::{FinGroupoid, GroupoidPredicates, Mor, Obj};
pub use semigroup::{InverseSemigroup, SElem};
