//! Yes/no decision for a single control type, with the first witnessing action.

use std::fmt::Write as _;
use std::ops::ControlFlow;

use crate::candset::CandSet;
use crate::control::engine::{Engine, Outcome, Step};
use crate::control::instance::ControlInstance;
use crate::control::types::{Action, ControlType, Goal, WinnerModel};
use crate::elections::{Election, VotingRule};
use crate::error::Result;

/// Whether `winners` meets the goal of `ty` for the focus candidate.
pub fn goal_met(ty: ControlType, winners: CandSet, focus: usize) -> bool {
    let unique = winners.only() == Some(focus);
    match (ty.goal(), ty.model()) {
        (Goal::Constructive, WinnerModel::NonUnique) => winners.contains(focus),
        (Goal::Constructive, WinnerModel::Unique) => unique,
        (Goal::Destructive, WinnerModel::NonUnique) => !winners.contains(focus),
        (Goal::Destructive, WinnerModel::Unique) => !unique,
    }
}

/// The control action that achieved the goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ControlAction {
    AddCandidates(CandSet),
    DeleteCandidates(CandSet),
    /// Indices into the spoiler votes.
    AddVoters(Vec<usize>),
    /// Indices into the votes.
    DeleteVoters(Vec<usize>),
    /// Vote indices of the first side.
    PartitionVoters(Vec<usize>),
    /// Candidates of the first side.
    PartitionCandidates(CandSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub action: ControlAction,
    /// Winners after the action.
    pub winners: CandSet,
}

impl Witness {
    /// Human-readable form using the candidate names of `election`.
    pub fn describe(&self, election: &Election) -> String {
        let list = |idx: &[usize]| {
            let mut s = String::from("[");
            for (n, i) in idx.iter().enumerate() {
                if n > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{i}");
            }
            s.push(']');
            s
        };
        let action = match &self.action {
            ControlAction::AddCandidates(s) => format!("add candidates {}", election.format_set(*s)),
            ControlAction::DeleteCandidates(s) => format!("delete candidates {}", election.format_set(*s)),
            ControlAction::AddVoters(v) => format!("add spoiler votes {}", list(v)),
            ControlAction::DeleteVoters(v) => format!("delete votes {}", list(v)),
            ControlAction::PartitionVoters(v) => format!("first vote side {}", list(v)),
            ControlAction::PartitionCandidates(s) => {
                format!("first candidate side {}", election.format_set(*s))
            }
        };
        format!("{action}; winners {}", election.format_set(self.winners))
    }
}

/// Decides `instance` for control type `ty` under `rule`.
pub fn decide(rule: VotingRule, ty: ControlType, instance: &ControlInstance) -> Result<bool> {
    Ok(decide_with_witness(rule, ty, instance)?.is_some())
}

/// Like [`decide`], also returning the first successful action in
/// enumeration order.
pub fn decide_with_witness(rule: VotingRule, ty: ControlType, instance: &ControlInstance) -> Result<Option<Witness>> {
    let reduced = instance.reduced();
    reduced.check(rule, ty)?;
    let focus = instance.focus();
    let mut engine = Engine::new(rule, reduced);
    let protect = (ty.action() == Action::DeleteCandidates).then_some(focus);
    let votes = engine.votes().clone();
    let extra = engine.extra().cloned();
    let found = engine.run(ty.action(), ty.tie(), protect, |step, Outcome { winners, .. }| {
        if !goal_met(ty, winners, focus) {
            return ControlFlow::Continue(());
        }
        let action = match (ty.action(), step) {
            (Action::AddCandidates | Action::UnlimitedAddCandidates, Step::Candidates(s)) => {
                ControlAction::AddCandidates(s)
            }
            (Action::DeleteCandidates, Step::Candidates(s)) => ControlAction::DeleteCandidates(s),
            (Action::PartitionCandidates | Action::RunoffPartitionCandidates, Step::Candidates(s)) => {
                ControlAction::PartitionCandidates(s)
            }
            (Action::AddVoters, Step::Votes(c)) => {
                ControlAction::AddVoters(extra.as_ref().map(|g| g.indices_for(c)).unwrap_or_default())
            }
            (Action::DeleteVoters, Step::Votes(c)) => ControlAction::DeleteVoters(votes.indices_for(c)),
            (Action::PartitionVoters, Step::Votes(c)) => ControlAction::PartitionVoters(votes.indices_for(c)),
            (a, s) => unreachable!("{} produced {s:?}", a.code()),
        };
        ControlFlow::Break((action, winners))
    })?;
    Ok(found.break_value().map(|(action, winners)| Witness { action, winners }))
}
