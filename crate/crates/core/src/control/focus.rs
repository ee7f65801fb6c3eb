//! Successful focus sets: for a reduced instance, every candidate the
//! controller can succeed for.

use std::collections::HashSet;
use std::convert::Infallible;
use std::ops::ControlFlow;

use crate::candset::CandSet;
use crate::control::decide::goal_met;
use crate::control::engine::{Engine, Outcome};
use crate::control::instance::ReducedInstance;
use crate::control::types::{Action, ControlType, TieRule};
use crate::elections::VotingRule;
use crate::error::Result;

/// `{c ∈ C : decide(rule, ty, inflate(reduced, c))}`.
pub fn focus_set(rule: VotingRule, ty: ControlType, reduced: &ReducedInstance) -> Result<CandSet> {
    reduced.check(rule, ty)?;
    let mut engine = Engine::new(rule, reduced);
    let outcomes = outcomes(&mut engine, ty.action(), ty.tie())?;
    Ok(from_outcomes(ty, reduced.base(), &outcomes))
}

type OutcomeKey = (Action, Option<TieRule>);

/// Focus sets of every type in the instance's class, in canonical order.
/// Each action is enumerated once and shared by the goal and winner-model
/// variants.
pub fn focus_sets(rule: VotingRule, reduced: &ReducedInstance) -> Result<Vec<(ControlType, CandSet)>> {
    let types = reduced.class().types();
    if let Some(&first) = types.first() {
        reduced.check(rule, first)?;
    }
    let mut engine = Engine::new(rule, reduced);
    let mut cached: Vec<(OutcomeKey, HashSet<Outcome>)> = Vec::new();
    let mut out = Vec::with_capacity(types.len());
    for ty in types {
        let key = (ty.action(), ty.tie());
        let pos = match cached.iter().position(|(k, _)| *k == key) {
            Some(pos) => pos,
            None => {
                cached.push((key, outcomes(&mut engine, key.0, key.1)?));
                cached.len() - 1
            }
        };
        out.push((ty, from_outcomes(ty, reduced.base(), &cached[pos].1)));
    }
    Ok(out)
}

fn outcomes(engine: &mut Engine<'_>, action: Action, tie: Option<TieRule>) -> Result<HashSet<Outcome>> {
    let mut seen = HashSet::new();
    let ControlFlow::Continue(()) = engine.run::<Infallible>(action, tie, None, |_, outcome| {
        seen.insert(outcome);
        ControlFlow::Continue(())
    })?;
    Ok(seen)
}

fn from_outcomes(ty: ControlType, base: CandSet, outcomes: &HashSet<Outcome>) -> CandSet {
    base.iter()
        .filter(|&c| {
            outcomes
                .iter()
                .any(|o| o.present.contains(c) && goal_met(ty, o.winners, c))
        })
        .collect()
}
