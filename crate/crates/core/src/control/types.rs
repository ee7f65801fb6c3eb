//! The 44 standard control types and their compatibility classes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// What the controller may do.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    /// Add at most `k` spoiler candidates (AC).
    AddCandidates,
    /// Add any number of spoiler candidates (UAC).
    UnlimitedAddCandidates,
    /// Delete at most `k` candidates other than the focus (printed `DC`).
    DeleteCandidates,
    /// Add at most `k` spoiler votes (AV).
    AddVoters,
    /// Delete at most `k` votes (DV).
    DeleteVoters,
    /// Two-stage election over a split of the votes (PV).
    PartitionVoters,
    /// First-round subelection on one side, the other side gets a bye (PC).
    PartitionCandidates,
    /// Both sides hold first-round subelections (RPC).
    RunoffPartitionCandidates,
}

impl Action {
    pub fn code(self) -> &'static str {
        match self {
            Action::AddCandidates => "AC",
            Action::UnlimitedAddCandidates => "UAC",
            Action::DeleteCandidates => "DC",
            Action::AddVoters => "AV",
            Action::DeleteVoters => "DV",
            Action::PartitionVoters => "PV",
            Action::PartitionCandidates => "PC",
            Action::RunoffPartitionCandidates => "RPC",
        }
    }

    fn from_code(s: &str) -> Option<Self> {
        Some(match s {
            "AC" => Action::AddCandidates,
            "UAC" => Action::UnlimitedAddCandidates,
            "DC" => Action::DeleteCandidates,
            "AV" => Action::AddVoters,
            "DV" => Action::DeleteVoters,
            "PV" => Action::PartitionVoters,
            "PC" => Action::PartitionCandidates,
            "RPC" => Action::RunoffPartitionCandidates,
            _ => return None,
        })
    }

    pub fn is_partition(self) -> bool {
        matches!(
            self,
            Action::PartitionVoters | Action::PartitionCandidates | Action::RunoffPartitionCandidates
        )
    }

    pub fn class(self) -> CompatibilityClass {
        match self {
            Action::PartitionVoters | Action::PartitionCandidates | Action::RunoffPartitionCandidates => {
                CompatibilityClass::Partition
            }
            Action::AddCandidates => CompatibilityClass::AddCandidates,
            Action::DeleteCandidates | Action::DeleteVoters => CompatibilityClass::Delete,
            Action::AddVoters => CompatibilityClass::AddVoters,
            Action::UnlimitedAddCandidates => CompatibilityClass::UnlimitedAddCandidates,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Goal {
    /// Make the focus candidate win.
    Constructive,
    /// Keep the focus candidate from winning.
    Destructive,
}

/// First-round tie handling of the partition actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TieRule {
    /// Only a unique subelection winner advances.
    TiesEliminate,
    /// Every subelection winner advances.
    TiesPromote,
}

impl TieRule {
    pub fn code(self) -> &'static str {
        match self {
            TieRule::TiesEliminate => "TE",
            TieRule::TiesPromote => "TP",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WinnerModel {
    /// Winning means being the only winner.
    Unique,
    /// Winning means being one of the winners.
    NonUnique,
}

impl WinnerModel {
    pub fn code(self) -> &'static str {
        match self {
            WinnerModel::Unique => "UW",
            WinnerModel::NonUnique => "NUW",
        }
    }
}

/// Groups of control types sharing an input signature. Only types of the
/// same class can be compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompatibilityClass {
    /// `(C, V)`: PV, PC, RPC.
    Partition,
    /// `(C, A, V, k)`: AC.
    AddCandidates,
    /// `(C, V, k)`: DC (deleting candidates), DV.
    Delete,
    /// `(C, V, W, k)`: AV.
    AddVoters,
    /// `(C, A, V)`: UAC.
    UnlimitedAddCandidates,
}

impl CompatibilityClass {
    pub const ALL: [CompatibilityClass; 5] = [
        CompatibilityClass::Partition,
        CompatibilityClass::AddCandidates,
        CompatibilityClass::Delete,
        CompatibilityClass::AddVoters,
        CompatibilityClass::UnlimitedAddCandidates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CompatibilityClass::Partition => "partition",
            CompatibilityClass::AddCandidates => "add-candidates",
            CompatibilityClass::Delete => "delete",
            CompatibilityClass::AddVoters => "add-voters",
            CompatibilityClass::UnlimitedAddCandidates => "unlimited-add-candidates",
        }
    }

    /// Members in canonical order.
    pub fn types(self) -> Vec<ControlType> {
        all_types().into_iter().filter(|t| t.class() == self).collect()
    }

    pub fn has_spoiler_candidates(self) -> bool {
        matches!(
            self,
            CompatibilityClass::AddCandidates | CompatibilityClass::UnlimitedAddCandidates
        )
    }

    pub fn has_limit(self) -> bool {
        matches!(
            self,
            CompatibilityClass::AddCandidates | CompatibilityClass::Delete | CompatibilityClass::AddVoters
        )
    }

    pub fn has_spoiler_votes(self) -> bool {
        self == CompatibilityClass::AddVoters
    }
}

impl fmt::Display for CompatibilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the 44 standard control types.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ControlType {
    goal: Goal,
    action: Action,
    tie: Option<TieRule>,
    model: WinnerModel,
}

impl ControlType {
    /// `tie` must be given exactly for the partition actions.
    pub fn new(goal: Goal, action: Action, tie: Option<TieRule>, model: WinnerModel) -> Result<Self> {
        if action.is_partition() != tie.is_some() {
            return Err(Error::usage(format!(
                "{} {} a tie-handling rule",
                action.code(),
                if action.is_partition() { "needs" } else { "takes no" }
            )));
        }
        Ok(ControlType {
            goal,
            action,
            tie,
            model,
        })
    }

    pub fn goal(self) -> Goal {
        self.goal
    }

    pub fn action(self) -> Action {
        self.action
    }

    pub fn tie(self) -> Option<TieRule> {
        self.tie
    }

    pub fn model(self) -> WinnerModel {
        self.model
    }

    pub fn class(self) -> CompatibilityClass {
        self.action.class()
    }

    pub fn is_constructive(self) -> bool {
        self.goal == Goal::Constructive
    }

    /// Same type under the other winner model.
    pub fn with_model(self, model: WinnerModel) -> Self {
        ControlType { model, ..self }
    }

    /// Position in [`all_types`].
    pub fn canonical_index(self) -> usize {
        let g = (self.goal == Goal::Destructive) as usize;
        let m = (self.model == WinnerModel::NonUnique) as usize;
        let t = (self.tie == Some(TieRule::TiesPromote)) as usize;
        match self.action {
            Action::PartitionVoters => g * 12 + t * 2 + m,
            Action::PartitionCandidates => g * 12 + 4 + t * 2 + m,
            Action::RunoffPartitionCandidates => g * 12 + 8 + t * 2 + m,
            Action::AddCandidates => 24 + g * 2 + m,
            Action::DeleteCandidates => 28 + g * 4 + m,
            Action::DeleteVoters => 28 + g * 4 + 2 + m,
            Action::AddVoters => 36 + g * 2 + m,
            Action::UnlimitedAddCandidates => 40 + g * 2 + m,
        }
    }
}

impl fmt::Display for ControlType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let goal = match self.goal {
            Goal::Constructive => "CC",
            Goal::Destructive => "DC",
        };
        write!(f, "{goal}-{}", self.action.code())?;
        if let Some(t) = self.tie {
            write!(f, "-{}", t.code())?;
        }
        write!(f, "-{}", self.model.code())
    }
}

impl fmt::Debug for ControlType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for ControlType {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ControlType {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical_index().cmp(&other.canonical_index())
    }
}

impl FromStr for ControlType {
    type Err = Error;

    /// Parses `CC|DC - action [- TE|TP] - UW|NUW`. The leading token is
    /// always the goal, so `DC-DC-UW` is destructive deleting candidates.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("unknown control type `{s}`"));
        let parts: Vec<&str> = s.split('-').collect();
        if parts.len() < 3 {
            return Err(bad());
        }
        let goal = match parts[0] {
            "CC" => Goal::Constructive,
            "DC" => Goal::Destructive,
            _ => return Err(bad()),
        };
        let action = Action::from_code(parts[1]).ok_or_else(bad)?;
        let (tie, rest) = if action.is_partition() {
            let tie = match parts.get(2) {
                Some(&"TE") => TieRule::TiesEliminate,
                Some(&"TP") => TieRule::TiesPromote,
                _ => return Err(bad()),
            };
            (Some(tie), &parts[3..])
        } else {
            (None, &parts[2..])
        };
        let model = match rest {
            ["UW"] => WinnerModel::Unique,
            ["NUW"] => WinnerModel::NonUnique,
            _ => return Err(bad()),
        };
        ControlType::new(goal, action, tie, model)
    }
}

/// All 44 types in canonical order: the partition block (CC then DC; PV, PC,
/// RPC; TE before TP; UW before NUW), then AC, the delete class, AV and UAC.
pub fn all_types() -> Vec<ControlType> {
    use Action::*;
    use Goal::*;
    use TieRule::*;
    use WinnerModel::*;

    let mut out = Vec::with_capacity(44);
    let push = |out: &mut Vec<ControlType>, g, a, t, m| {
        out.push(ControlType {
            goal: g,
            action: a,
            tie: t,
            model: m,
        })
    };
    for goal in [Constructive, Destructive] {
        for action in [PartitionVoters, PartitionCandidates, RunoffPartitionCandidates] {
            for tie in [TiesEliminate, TiesPromote] {
                for model in [Unique, NonUnique] {
                    push(&mut out, goal, action, Some(tie), model);
                }
            }
        }
    }
    for goal in [Constructive, Destructive] {
        for model in [Unique, NonUnique] {
            push(&mut out, goal, AddCandidates, None, model);
        }
    }
    for goal in [Constructive, Destructive] {
        for action in [DeleteCandidates, DeleteVoters] {
            for model in [Unique, NonUnique] {
                push(&mut out, goal, action, None, model);
            }
        }
    }
    for action in [AddVoters, UnlimitedAddCandidates] {
        for goal in [Constructive, Destructive] {
            for model in [Unique, NonUnique] {
                push(&mut out, goal, action, None, model);
            }
        }
    }
    out
}

/// All unordered pairs of distinct types from the same class, each pair in
/// canonical order.
pub fn compatible_pairs() -> Vec<(ControlType, ControlType)> {
    let types = all_types();
    let mut out = Vec::new();
    for (i, &a) in types.iter().enumerate() {
        for &b in &types[i + 1..] {
            if a.class() == b.class() {
                out.push((a, b));
            }
        }
    }
    out
}
