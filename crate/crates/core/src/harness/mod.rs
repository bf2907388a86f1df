//! Instance files, scenarios, random instances and check reports.

pub mod format;
pub mod fuzz;
pub mod instance;
pub mod report;
pub mod scenario;

pub use format::{Decl, Def, InstanceFile};
pub use instance::{Entity, Instance, InstanceError};
pub use report::{replay, run, CheckGroup, Report, Witness};
pub use scenario::{scenario, ScenarioParams, SCENARIOS};
