//! Steinberg algebras of finite discrete groupoids: convolution and the
//! groupoid ring, indicator functions, the partial action of the bisection
//! semigroup on functions of the objects, the translation to the skew
//! inverse semigroup ring, and the simplicity criteria.

pub mod action;
pub mod algebra;
pub mod translation;
pub mod verdicts;

pub use action::{ga_partial_action, FunctionRing};
pub use algebra::SteinbergAlgebra;
pub use translation::{fibre_decomposition, singleton_decomposition, Translation};
pub use verdicts::{z_s_unit_failure, z_s_units, SteinbergCase};
