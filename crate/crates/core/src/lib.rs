//! Finite models of inverse semigroups, partial actions on rings, skew inverse
//! semigroup rings and discrete Steinberg algebras, with exhaustive checkers
//! for their structural properties.

pub mod error;
pub mod finring;
pub mod harness;
pub mod invsgrp;
pub mod paction;
pub mod par;
pub mod skew;
pub mod steinberg;
pub mod syscheck;
pub mod verdict;

pub use error::{Error, Result};
