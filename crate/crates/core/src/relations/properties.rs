//! Property α, Unique-α and immunity checks.

use rayon::prelude::*;

use crate::candset::CandSet;
use crate::control::{decide, goal_met, CompatibilityClass, ControlType, ReducedInstance};
use crate::elections::{Election, VotingRule};
use crate::error::{Error, Result};
use crate::search::{random_instance, trial_rng, SearchConfig};
use crate::tally::Grouped;

/// Largest candidate count for which subsets are enumerated.
pub const MAX_ALPHA_CANDIDATES: usize = 20;

/// Whether every (unique) winner stays a (unique) winner in every
/// candidate subset containing it.
pub fn property_alpha(rule: VotingRule, election: &Election, unique: bool) -> Result<bool> {
    Ok(alpha_counterexample(rule, election, unique)?.is_none())
}

/// A winner and a subset in which it stops being a (unique) winner.
pub fn alpha_counterexample(rule: VotingRule, election: &Election, unique: bool) -> Result<Option<(usize, CandSet)>> {
    rule.check_kind(election.profile())?;
    let n = election.num_candidates();
    if n > MAX_ALPHA_CANDIDATES {
        return Err(Error::TooLarge(format!(
            "{n} candidates (at most {MAX_ALPHA_CANDIDATES} for subset enumeration)"
        )));
    }
    let votes = Grouped::new(election.profile());
    let all = election.all();
    let winners = votes.winners(rule, all, &votes.mult);
    let keeps = |w: CandSet, p: usize| if unique { w.only() == Some(p) } else { w.contains(p) };
    for p in winners.iter().filter(|&p| keeps(winners, p)) {
        let others = all.difference(CandSet::singleton(p));
        for pattern in 0..1u64 << others.len() {
            let subset = others.select(pattern as u32).union(CandSet::singleton(p));
            if !keeps(votes.winners(rule, subset, &votes.mult), p) {
                return Ok(Some((p, subset)));
            }
        }
    }
    Ok(None)
}

/// First sampled election (in trial order) violating Property α, or
/// Unique-α when `unique`.
pub fn search_alpha_counterexample(
    rule: VotingRule,
    unique: bool,
    config: &SearchConfig,
) -> Result<Option<(u64, Election)>> {
    config.validate()?;
    let hit = (0..config.max_trials).into_par_iter().find_map_first(|i| {
        let mut rng = trial_rng(config.seed, i);
        let election = random_instance(&mut rng, rule, CompatibilityClass::Partition, config)
            .election()
            .clone();
        match alpha_counterexample(rule, &election, unique) {
            Ok(None) => None,
            Ok(Some(_)) => Some(Ok((i, election))),
            Err(e) => Some(Err(e)),
        }
    });
    hit.transpose()
}

/// Types the rule is known to be immune to: a successful action never
/// changes whether the goal holds.
pub fn immune_types(rule: VotingRule) -> Vec<ControlType> {
    match rule {
        VotingRule::Approval => [
            "CC-PC-TP-NUW",
            "CC-RPC-TP-NUW",
            "CC-PC-TP-UW",
            "CC-RPC-TP-UW",
            "DC-PC-TP-UW",
            "DC-PC-TE-UW",
            "DC-RPC-TP-UW",
            "DC-RPC-TE-UW",
            "DC-DC-UW",
            "DC-DC-NUW",
        ]
        .iter()
        .map(|s| s.parse().expect("well-formed type string"))
        .collect(),
        VotingRule::Plurality | VotingRule::Veto => Vec::new(),
    }
}

/// Checks immunity on every instance and focus: a yes answer must mean the
/// goal already held without control. Returns the first failing instance
/// index and focus.
pub fn immunity_check(rule: VotingRule, ty: ControlType, corpus: &[ReducedInstance]) -> Result<Option<(usize, usize)>> {
    if !immune_types(rule).contains(&ty) {
        return Err(Error::usage(format!("{rule} is not known to be immune to {ty}")));
    }
    for (i, reduced) in corpus.iter().enumerate() {
        if reduced.class() != ty.class() {
            continue;
        }
        let winners = reduced.election().winners_among(rule, reduced.base())?;
        for c in reduced.base().iter() {
            if decide(rule, ty, &reduced.inflate_index(c)?)? && !goal_met(ty, winners, c) {
                return Ok(Some((i, c)));
            }
        }
    }
    Ok(None)
}
