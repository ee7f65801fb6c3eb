//! Control inputs, with and without a focus candidate.

use crate::candset::CandSet;
use crate::control::types::{CompatibilityClass, ControlType};
use crate::elections::{Election, Profile, VotingRule};
use crate::error::{Error, Result};

/// A control input with the focus candidate left out.
///
/// The election's candidate list is the whole universe `C ∪ A`; `spoilers`
/// marks `A` and is empty outside the two adding-candidates classes.
/// Spoiler votes are only present for the adding-voters class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    class: CompatibilityClass,
    election: Election,
    spoilers: CandSet,
    spoiler_votes: Option<Profile>,
    limit: Option<u32>,
}

impl ReducedInstance {
    /// `(C, V)` for the partition actions.
    pub fn partition(election: Election) -> Self {
        ReducedInstance {
            class: CompatibilityClass::Partition,
            election,
            spoilers: CandSet::EMPTY,
            spoiler_votes: None,
            limit: None,
        }
    }

    /// `(C, A, V, k)`; `election` ranges over `C ∪ A` and `spoilers` is `A`.
    pub fn add_candidates(election: Election, spoilers: CandSet, limit: u32) -> Result<Self> {
        Self::with_spoilers(CompatibilityClass::AddCandidates, election, spoilers, Some(limit))
    }

    /// `(C, A, V)`.
    pub fn unlimited_add_candidates(election: Election, spoilers: CandSet) -> Result<Self> {
        Self::with_spoilers(CompatibilityClass::UnlimitedAddCandidates, election, spoilers, None)
    }

    fn with_spoilers(
        class: CompatibilityClass,
        election: Election,
        spoilers: CandSet,
        limit: Option<u32>,
    ) -> Result<Self> {
        if !spoilers.is_subset(election.all()) {
            return Err(Error::domain("spoiler candidates outside the candidate list"));
        }
        Ok(ReducedInstance {
            class,
            election,
            spoilers,
            spoiler_votes: None,
            limit,
        })
    }

    /// `(C, V, k)` for deleting candidates or voters.
    pub fn delete(election: Election, limit: u32) -> Self {
        ReducedInstance {
            class: CompatibilityClass::Delete,
            election,
            spoilers: CandSet::EMPTY,
            spoiler_votes: None,
            limit: Some(limit),
        }
    }

    /// `(C, V, W, k)`; `spoiler_votes` is `W`, over the same candidates.
    pub fn add_voters(election: Election, spoiler_votes: Profile, limit: u32) -> Result<Self> {
        // Validates W against C and against the vote kind of V.
        election.with_profile(spoiler_votes.clone())?;
        election.profile().concat(&spoiler_votes)?;
        Ok(ReducedInstance {
            class: CompatibilityClass::AddVoters,
            election,
            spoilers: CandSet::EMPTY,
            spoiler_votes: Some(spoiler_votes),
            limit: Some(limit),
        })
    }

    pub fn class(&self) -> CompatibilityClass {
        self.class
    }

    /// The election over the whole candidate universe.
    pub fn election(&self) -> &Election {
        &self.election
    }

    pub fn spoilers(&self) -> CandSet {
        self.spoilers
    }

    pub fn spoiler_votes(&self) -> Option<&Profile> {
        self.spoiler_votes.as_ref()
    }

    pub fn limit(&self) -> Option<u32> {
        self.limit
    }

    /// `C`: the candidates that may serve as focus.
    pub fn base(&self) -> CandSet {
        self.election.all().difference(self.spoilers)
    }

    /// Same instance with a different limit. No-op for classes without one.
    pub fn with_limit(&self, limit: u32) -> Self {
        let mut out = self.clone();
        if out.limit.is_some() {
            out.limit = Some(limit);
        }
        out
    }

    /// Adds the focus candidate back.
    pub fn inflate(&self, focus: &str) -> Result<ControlInstance> {
        let idx = self.election.index_of(focus)?;
        self.inflate_index(idx)
    }

    pub fn inflate_index(&self, focus: usize) -> Result<ControlInstance> {
        if !self.base().contains(focus) {
            return Err(Error::domain(
                "focus candidate must be one of the non-spoiler candidates",
            ));
        }
        Ok(ControlInstance {
            reduced: self.clone(),
            focus,
        })
    }

    pub(crate) fn check(&self, rule: VotingRule, ty: ControlType) -> Result<()> {
        if ty.class() != self.class {
            return Err(Error::usage(format!(
                "{ty} takes a {} instance, got a {} instance",
                ty.class(),
                self.class
            )));
        }
        rule.check_kind(self.election.profile())
    }
}

/// A control input including its focus candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlInstance {
    reduced: ReducedInstance,
    focus: usize,
}

impl ControlInstance {
    pub fn reduced(&self) -> &ReducedInstance {
        &self.reduced
    }

    pub fn focus(&self) -> usize {
        self.focus
    }

    pub fn focus_name(&self) -> &str {
        self.reduced.election.candidates()[self.focus].as_str()
    }
}
