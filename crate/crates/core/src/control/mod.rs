//! Control types, instances, two-stage elections, decision and focus sets.

mod decide;
mod engine;
mod focus;
mod instance;
mod two_stage;
mod types;

pub use decide::{decide, decide_with_witness, goal_met, ControlAction, Witness};
pub use engine::MAX_ENUMERATION;
pub use focus::{focus_set, focus_sets};
pub use instance::{ControlInstance, ReducedInstance};
pub use two_stage::{tie_filter, two_stage_eval, Partition};
pub use types::{all_types, compatible_pairs, Action, CompatibilityClass, ControlType, Goal, TieRule, WinnerModel};
