//! Exact decision procedures for electoral control under plurality, veto
//! and approval voting, with tools for comparing control types.
//!
//! Every decision is made by exhaustive enumeration. Instances are meant to
//! be small: at most 32 candidates, and enumeration sizes are capped by
//! [`MAX_ENUMERATION`].

pub mod candset;
pub mod control;
pub mod corpus;
pub mod elections;
pub mod error;
pub mod relations;
pub mod search;
mod tally;

pub use candset::{CandSet, MAX_CANDIDATES};
pub use control::{
    all_types, compatible_pairs, decide, decide_with_witness, focus_set, focus_sets, goal_met, tie_filter,
    two_stage_eval, Action, CompatibilityClass, ControlAction, ControlInstance, ControlType, Goal, Partition,
    ReducedInstance, TieRule, WinnerModel, Witness, MAX_ENUMERATION,
};
pub use elections::{
    mask_votes, score, unique_winner, winners, ApprovalVote, Candidate, Election, LinearVote, Profile, VoteKey,
    VotingRule,
};
pub use error::{Error, Result};
