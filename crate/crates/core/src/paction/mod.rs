//! Partial actions of inverse semigroups and of groupoids on finite rings.

pub mod action;
pub mod groupoid_action;

pub use action::{extend_additively, ActionUnitality, PartialAction};
pub use groupoid_action::GroupoidPartialAction;
