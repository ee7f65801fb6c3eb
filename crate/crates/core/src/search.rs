//! Seeded random search for separation witnesses.
//!
//! Trial `i` draws from a ChaCha8 generator seeded with the run seed and
//! switched to stream `i`, so every trial can be replayed on its own and
//! parallel evaluation cannot change which trial is reported.

use std::fmt;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::candset::CandSet;
use crate::control::{decide, focus_set, CompatibilityClass, ControlType, ReducedInstance};
use crate::elections::{ApprovalVote, Candidate, Election, LinearVote, Profile, VotingRule};
use crate::error::{Error, Result};

/// Largest candidate universe (candidates plus spoilers) a search may draw.
pub const MAX_SEARCH_CANDIDATES: usize = 10;
/// Largest vote or spoiler-vote count a search may draw.
pub const MAX_SEARCH_VOTES: usize = 20;

/// Trials evaluated together before checking for a hit.
const BATCH: u64 = 256;

/// Size ranges (inclusive) for sampled instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    pub max_trials: u64,
    pub candidates: RangeInclusive<usize>,
    pub votes: RangeInclusive<usize>,
    pub limit: RangeInclusive<u32>,
    pub spoiler_candidates: RangeInclusive<usize>,
    pub spoiler_votes: RangeInclusive<usize>,
}

impl SearchConfig {
    /// Small instances: up to 5 candidates and 8 votes.
    pub fn small(seed: u64, max_trials: u64) -> Self {
        SearchConfig {
            seed,
            max_trials,
            candidates: 1..=5,
            votes: 0..=8,
            limit: 0..=3,
            spoiler_candidates: 0..=2,
            spoiler_votes: 0..=4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let empty = |name: &str| Error::usage(format!("{name} range is empty"));
        if self.candidates.is_empty() {
            return Err(empty("candidate"));
        }
        if self.votes.is_empty() {
            return Err(empty("vote"));
        }
        if self.limit.is_empty() {
            return Err(empty("k"));
        }
        if self.spoiler_candidates.is_empty() {
            return Err(empty("spoiler-candidate"));
        }
        if self.spoiler_votes.is_empty() {
            return Err(empty("spoiler-vote"));
        }
        if *self.candidates.start() == 0 {
            return Err(Error::usage("instances need at least one candidate"));
        }
        if self.candidates.end() + self.spoiler_candidates.end() > MAX_SEARCH_CANDIDATES {
            return Err(Error::usage(format!(
                "at most {MAX_SEARCH_CANDIDATES} candidates including spoilers"
            )));
        }
        if *self.votes.end() > MAX_SEARCH_VOTES || *self.spoiler_votes.end() > MAX_SEARCH_VOTES {
            return Err(Error::usage(format!("at most {MAX_SEARCH_VOTES} votes")));
        }
        Ok(())
    }
}

/// The generator of trial `trial` in a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws a reduced instance of `class`. Sizes are uniform within the
/// configured ranges, linear votes are uniform permutations and approval
/// votes uniform bit vectors.
pub fn random_instance(
    rng: &mut impl Rng,
    rule: VotingRule,
    class: CompatibilityClass,
    config: &SearchConfig,
) -> ReducedInstance {
    let base = rng.random_range(config.candidates.clone());
    let spoilers = if class.has_spoiler_candidates() {
        rng.random_range(config.spoiler_candidates.clone())
    } else {
        0
    };
    let universe = base + spoilers;
    let names: Vec<Candidate> = (0..universe)
        .map(|i| Candidate::new(candidate_name(i)).expect("generated names are valid"))
        .collect();
    let count = rng.random_range(config.votes.clone());
    let votes = random_profile(rng, rule, universe, count);
    let election = Election::new(names.clone(), votes).expect("sampled votes are valid");
    let limit = rng.random_range(config.limit.clone());
    let spoiler_set = election.all().difference(CandSet::full(base));
    match class {
        CompatibilityClass::Partition => ReducedInstance::partition(election),
        CompatibilityClass::Delete => ReducedInstance::delete(election, limit),
        CompatibilityClass::AddCandidates => {
            ReducedInstance::add_candidates(election, spoiler_set, limit).expect("spoilers are in range")
        }
        CompatibilityClass::UnlimitedAddCandidates => {
            ReducedInstance::unlimited_add_candidates(election, spoiler_set).expect("spoilers are in range")
        }
        CompatibilityClass::AddVoters => {
            let count = rng.random_range(config.spoiler_votes.clone());
            let extra = random_profile(rng, rule, base, count);
            ReducedInstance::add_voters(election, extra, limit).expect("spoiler votes are valid")
        }
    }
}

/// `a`, `b`, ..., `z`, then `c26`, `c27`, ...
fn candidate_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("c{i}")
    }
}

fn random_profile(rng: &mut impl Rng, rule: VotingRule, n: usize, count: usize) -> Profile {
    if rule.uses_approval() {
        let votes = (0..count)
            .map(|_| {
                let set: CandSet = (0..n).filter(|_| rng.random_bool(0.5)).collect();
                ApprovalVote::new(set, n).expect("in range")
            })
            .collect();
        Profile::Approval(votes)
    } else {
        let votes = (0..count)
            .map(|_| {
                let mut ranking: Vec<usize> = (0..n).collect();
                ranking.shuffle(rng);
                LinearVote::new(ranking, n).expect("permutation")
            })
            .collect();
        Profile::Linear(votes)
    }
}

/// Which focus-set difference a search looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `f_A − f_B ≠ ∅`.
    AMinusB,
    /// `f_B − f_A ≠ ∅`.
    BMinusA,
    /// Both differences nonempty on one instance.
    Both,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::AMinusB => "a-b",
            Direction::BMinusA => "b-a",
            Direction::Both => "both",
        })
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a-b" => Ok(Direction::AMinusB),
            "b-a" => Ok(Direction::BMinusA),
            "both" => Ok(Direction::Both),
            _ => Err(Error::usage(format!("unknown direction `{s}` (use a-b, b-a or both)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchTarget {
    pub rule: VotingRule,
    pub type_a: ControlType,
    pub type_b: ControlType,
    pub direction: Direction,
}

impl SearchTarget {
    pub fn new(rule: VotingRule, type_a: ControlType, type_b: ControlType, direction: Direction) -> Result<Self> {
        if type_a.class() != type_b.class() {
            return Err(Error::usage(format!("{type_a} and {type_b} are not compatible")));
        }
        Ok(SearchTarget {
            rule,
            type_a,
            type_b,
            direction,
        })
    }
}

/// A reduced instance on which the target difference shows up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Found {
    pub trial: u64,
    pub instance: ReducedInstance,
    /// `f_A − f_B`.
    pub a_minus_b: CandSet,
    /// `f_B − f_A`.
    pub b_minus_a: CandSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Found),
    Exhausted { trials: u64 },
}

/// Runs trials `0..max_trials` and returns the first hit in trial order.
/// A hit is re-checked by deciding every candidate from scratch.
pub fn find_witness(target: &SearchTarget, config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let class = target.type_a.class();
    let trial = |i: u64| -> Option<Result<Found>> {
        let mut rng = trial_rng(config.seed, i);
        let instance = random_instance(&mut rng, target.rule, class, config);
        let sets = focus_set(target.rule, target.type_a, &instance)
            .and_then(|a| Ok((a, focus_set(target.rule, target.type_b, &instance)?)));
        let (fa, fb) = match sets {
            Ok(sets) => sets,
            Err(e) => return Some(Err(e)),
        };
        let a_minus_b = fa.difference(fb);
        let b_minus_a = fb.difference(fa);
        let hit = match target.direction {
            Direction::AMinusB => !a_minus_b.is_empty(),
            Direction::BMinusA => !b_minus_a.is_empty(),
            Direction::Both => !a_minus_b.is_empty() && !b_minus_a.is_empty(),
        };
        hit.then_some(Ok(Found {
            trial: i,
            instance,
            a_minus_b,
            b_minus_a,
        }))
    };
    let mut start = 0;
    while start < config.max_trials {
        let end = config.max_trials.min(start + BATCH);
        if let Some(hit) = (start..end).into_par_iter().find_map_first(trial) {
            let found = hit?;
            reverify(target, &found)?;
            return Ok(SearchOutcome::Found(found));
        }
        start = end;
    }
    Ok(SearchOutcome::Exhausted {
        trials: config.max_trials,
    })
}

/// Recomputes both differences through single-candidate decisions.
pub fn reverify(target: &SearchTarget, found: &Found) -> Result<()> {
    let inst = &found.instance;
    let mut a_minus_b = CandSet::EMPTY;
    let mut b_minus_a = CandSet::EMPTY;
    for c in inst.base().iter() {
        let full = inst.inflate_index(c)?;
        let in_a = decide(target.rule, target.type_a, &full)?;
        let in_b = decide(target.rule, target.type_b, &full)?;
        if in_a && !in_b {
            a_minus_b.insert(c);
        }
        if in_b && !in_a {
            b_minus_a.insert(c);
        }
    }
    if (a_minus_b, b_minus_a) == (found.a_minus_b, found.b_minus_a) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "witness from trial {} failed re-verification",
            found.trial
        )))
    }
}

/// Report lines: one per trial up to the outcome when `verbose`, otherwise
/// only the final line.
pub fn search_report(config: &SearchConfig, outcome: &SearchOutcome, verbose: bool) -> String {
    let (last, found) = match outcome {
        SearchOutcome::Found(f) => (f.trial, true),
        SearchOutcome::Exhausted { trials } => (trials.saturating_sub(1), false),
    };
    let mut out = String::new();
    if verbose {
        for i in 0..last {
            out.push_str(&format!("trial={i} seed={} result=no\n", config.seed));
        }
    }
    if found || config.max_trials > 0 {
        let result = if found { "found" } else { "no" };
        out.push_str(&format!("trial={last} seed={} result={result}\n", config.seed));
    }
    if !found {
        out.push_str("exhausted\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        let cfg = SearchConfig::small(42, 1);
        for class in CompatibilityClass::ALL {
            let one = random_instance(&mut trial_rng(42, 0), VotingRule::Veto, class, &cfg);
            let two = random_instance(&mut trial_rng(42, 0), VotingRule::Veto, class, &cfg);
            assert_eq!(one, two);
        }
        let a = random_instance(
            &mut trial_rng(42, 0),
            VotingRule::Plurality,
            CompatibilityClass::Partition,
            &cfg,
        );
        let b = random_instance(
            &mut trial_rng(42, 1),
            VotingRule::Plurality,
            CompatibilityClass::Partition,
            &cfg,
        );
        let c = random_instance(
            &mut trial_rng(42, 2),
            VotingRule::Plurality,
            CompatibilityClass::Partition,
            &cfg,
        );
        assert!(a != b || b != c);
    }

    #[test]
    fn sizes_stay_in_range() {
        let cfg = SearchConfig::small(7, 1);
        for i in 0..300 {
            let mut rng = trial_rng(7, i);
            for class in CompatibilityClass::ALL {
                let r = random_instance(&mut rng, VotingRule::Approval, class, &cfg);
                let n = r.base().len();
                assert!(cfg.candidates.contains(&n));
                assert!(cfg.spoiler_candidates.contains(&r.spoilers().len()));
                assert!(cfg.votes.contains(&r.election().profile().len()));
                if let Some(k) = r.limit() {
                    assert!(cfg.limit.contains(&k));
                }
            }
        }
    }

    #[test]
    fn config_guards() {
        let mut cfg = SearchConfig::small(0, 1);
        assert!(cfg.validate().is_ok());
        cfg.candidates = 1..=9;
        assert!(cfg.validate().is_err());
        cfg.candidates = RangeInclusive::new(3, 2);
        assert!(cfg.validate().is_err());
        cfg = SearchConfig::small(0, 1);
        cfg.votes = 0..=21;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn direction_round_trip() {
        for d in [Direction::AMinusB, Direction::BMinusA, Direction::Both] {
            assert_eq!(d.to_string().parse::<Direction>().unwrap(), d);
        }
        assert!("x".parse::<Direction>().is_err());
    }
}
