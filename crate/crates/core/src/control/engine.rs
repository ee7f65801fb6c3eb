//! Exhaustive enumeration of control actions over a reduced instance.
//!
//! Votes are handled as distinct votes with multiplicities, so equal vote
//! splits are visited once. Candidate subsets follow binary-counter order
//! over the declared candidate order.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::candset::{CandSet, MAX_CANDIDATES};
use crate::control::instance::ReducedInstance;
use crate::control::two_stage::tie_filter;
use crate::control::types::{Action, TieRule};
use crate::elections::VotingRule;
use crate::error::{Error, Result};
use crate::tally::{argmax, for_each_submultiset, submultiset_count, Grouped};

/// Largest number of control actions a single enumeration may visit.
pub const MAX_ENUMERATION: u64 = 1 << 26;

/// One visited control action, borrowed from the enumerator.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Step<'s> {
    /// Candidates added, deleted, or placed in the first side.
    Candidates(CandSet),
    /// Counts per distinct vote: votes added, deleted, or placed in `V1`.
    Votes(&'s [u32]),
}

/// Candidates still in the election after the action, and the final winners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Outcome {
    pub present: CandSet,
    pub winners: CandSet,
}

/// Memoised winners over the full base profile.
struct WinnerCache {
    dense: Vec<u32>,
    sparse: HashMap<u32, CandSet>,
}

const DENSE_LIMIT: usize = 12;
const UNSET: u32 = u32::MAX;

impl WinnerCache {
    fn new(universe: usize) -> Self {
        let dense = if universe <= DENSE_LIMIT {
            vec![UNSET; 1 << universe]
        } else {
            Vec::new()
        };
        WinnerCache {
            dense,
            sparse: HashMap::new(),
        }
    }

    fn get(&mut self, rule: VotingRule, votes: &Grouped, among: CandSet) -> CandSet {
        let key = among.bits();
        if !self.dense.is_empty() {
            let slot = &mut self.dense[key as usize];
            if *slot == UNSET {
                *slot = votes.winners(rule, among, &votes.mult).bits();
            }
            return CandSet::from_bits(*slot);
        }
        *self
            .sparse
            .entry(key)
            .or_insert_with(|| votes.winners(rule, among, &votes.mult))
    }
}

pub(crate) struct Engine<'a> {
    rule: VotingRule,
    inst: &'a ReducedInstance,
    votes: Grouped,
    extra: Option<Grouped>,
    cache: WinnerCache,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(rule: VotingRule, inst: &'a ReducedInstance) -> Self {
        Engine {
            rule,
            inst,
            votes: Grouped::new(inst.election().profile()),
            extra: inst.spoiler_votes().map(Grouped::new),
            cache: WinnerCache::new(inst.election().num_candidates()),
        }
    }

    pub(crate) fn votes(&self) -> &Grouped {
        &self.votes
    }

    pub(crate) fn extra(&self) -> Option<&Grouped> {
        self.extra.as_ref()
    }

    /// Visits every action of the given kind in enumeration order.
    /// `protect` is a candidate that deleting candidates must leave alone.
    pub(crate) fn run<B>(
        &mut self,
        action: Action,
        tie: Option<TieRule>,
        protect: Option<usize>,
        mut f: impl FnMut(Step<'_>, Outcome) -> ControlFlow<B>,
    ) -> Result<ControlFlow<B>> {
        let Engine {
            rule,
            inst,
            votes,
            extra,
            cache,
        } = self;
        let rule = *rule;
        let base = inst.base();
        let limit = inst.limit();
        let tie = tie.unwrap_or(TieRule::TiesPromote);
        let mut whole = |among: CandSet| cache.get(rule, votes, among);

        let flow = match action {
            Action::AddCandidates | Action::UnlimitedAddCandidates => {
                let spoilers = inst.spoilers();
                guard_subsets(spoilers.len())?;
                let bound = if action == Action::AddCandidates { limit } else { None };
                for pattern in 0..1u64 << spoilers.len() {
                    let added = spoilers.select(pattern as u32);
                    if bound.is_some_and(|k| added.len() as u32 > k) {
                        continue;
                    }
                    let present = base.union(added);
                    let winners = whole(present);
                    if let ControlFlow::Break(b) = f(Step::Candidates(added), Outcome { present, winners }) {
                        return Ok(ControlFlow::Break(b));
                    }
                }
                ControlFlow::Continue(())
            }
            Action::DeleteCandidates => {
                let deletable = match protect {
                    Some(p) => base.difference(CandSet::singleton(p)),
                    None => base,
                };
                guard_subsets(deletable.len())?;
                let k = limit.unwrap_or(0);
                for pattern in 0..1u64 << deletable.len() {
                    let deleted = deletable.select(pattern as u32);
                    if deleted.len() as u32 > k {
                        continue;
                    }
                    let present = base.difference(deleted);
                    let winners = whole(present);
                    if let ControlFlow::Break(b) = f(Step::Candidates(deleted), Outcome { present, winners }) {
                        return Ok(ControlFlow::Break(b));
                    }
                }
                ControlFlow::Continue(())
            }
            Action::DeleteVoters => {
                guard_count(submultiset_count(&votes.mult))?;
                let mut remaining = vec![0u32; votes.groups()];
                for_each_submultiset(&votes.mult, limit, |deleted| {
                    for (r, (m, d)) in remaining.iter_mut().zip(votes.mult.iter().zip(deleted)) {
                        *r = m - d;
                    }
                    let winners = votes.winners(rule, base, &remaining);
                    f(Step::Votes(deleted), Outcome { present: base, winners })
                })
            }
            Action::AddVoters => {
                let extra = extra
                    .as_ref()
                    .ok_or_else(|| Error::usage("adding voters needs spoiler votes"))?;
                guard_count(submultiset_count(&extra.mult))?;
                let mut fixed = [0u32; MAX_CANDIDATES];
                votes.accumulate(rule, base, &votes.mult, &mut fixed);
                for_each_submultiset(&extra.mult, limit, |added| {
                    let mut scores = fixed;
                    extra.accumulate(rule, base, added, &mut scores);
                    let winners = argmax(base, &scores);
                    f(Step::Votes(added), Outcome { present: base, winners })
                })
            }
            Action::PartitionVoters => {
                guard_count(submultiset_count(&votes.mult))?;
                let mut rest = vec![0u32; votes.groups()];
                for_each_submultiset(&votes.mult, None, |first| {
                    for (r, (m, c)) in rest.iter_mut().zip(votes.mult.iter().zip(first)) {
                        *r = m - c;
                    }
                    let one = tie_filter(tie, votes.winners(rule, base, first));
                    let two = tie_filter(tie, votes.winners(rule, base, &rest));
                    let winners = whole(one.union(two));
                    f(Step::Votes(first), Outcome { present: base, winners })
                })
            }
            Action::PartitionCandidates | Action::RunoffPartitionCandidates => {
                guard_subsets(base.len())?;
                let runoff = action == Action::RunoffPartitionCandidates;
                for pattern in 0..1u64 << base.len() {
                    let first = base.select(pattern as u32);
                    let second = base.difference(first);
                    let one = tie_filter(tie, whole(first));
                    let finalists = if runoff {
                        one.union(tie_filter(tie, whole(second)))
                    } else {
                        one.union(second)
                    };
                    let winners = whole(finalists);
                    if let ControlFlow::Break(b) = f(Step::Candidates(first), Outcome { present: base, winners }) {
                        return Ok(ControlFlow::Break(b));
                    }
                }
                ControlFlow::Continue(())
            }
        };
        Ok(flow)
    }
}

fn guard_subsets(n: usize) -> Result<()> {
    if n >= 63 {
        return Err(Error::TooLarge(format!("2^{n} subsets to enumerate")));
    }
    guard_count(1u64 << n)
}

fn guard_count(count: u64) -> Result<()> {
    if count > MAX_ENUMERATION {
        Err(Error::TooLarge(format!(
            "{count} control actions to enumerate (at most {MAX_ENUMERATION})"
        )))
    } else {
        Ok(())
    }
}
