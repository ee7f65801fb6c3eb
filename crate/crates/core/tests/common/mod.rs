//! A slow reference implementation: raw votes, explicit index subsets and
//! scores recounted from scratch for every election.

#![allow(dead_code)]

use elcontrol::{
    Action, CandSet, CompatibilityClass, ControlInstance, ControlType, Goal, Profile, ReducedInstance, TieRule,
    VotingRule, WinnerModel,
};
use proptest::prelude::*;

#[derive(Clone, Debug)]
pub enum RawVote {
    Ranking(Vec<usize>),
    Approved(CandSet),
}

pub fn raw_votes(profile: &Profile) -> Vec<RawVote> {
    match profile {
        Profile::Linear(votes) => votes.iter().map(|v| RawVote::Ranking(v.ranking().collect())).collect(),
        Profile::Approval(votes) => votes.iter().map(|v| RawVote::Approved(v.approved())).collect(),
    }
}

/// Points of every candidate in `among`, counting only `votes`.
pub fn naive_scores(rule: VotingRule, votes: &[&RawVote], among: CandSet) -> Vec<u32> {
    let mut points = vec![0u32; 32];
    for vote in votes {
        match (rule, vote) {
            (VotingRule::Plurality, RawVote::Ranking(r)) => {
                if let Some(&top) = r.iter().find(|&&c| among.contains(c)) {
                    points[top] += 1;
                }
            }
            (VotingRule::Veto, RawVote::Ranking(r)) => {
                let bottom = r.iter().rev().find(|&&c| among.contains(c));
                for c in among.iter() {
                    if Some(&c) != bottom {
                        points[c] += 1;
                    }
                }
            }
            (VotingRule::Approval, RawVote::Approved(set)) => {
                for c in set.intersection(among).iter() {
                    points[c] += 1;
                }
            }
            _ => panic!("vote kind does not match the rule"),
        }
    }
    points
}

pub fn naive_winners(rule: VotingRule, votes: &[&RawVote], among: CandSet) -> CandSet {
    let points = naive_scores(rule, votes, among);
    let best = among.iter().map(|c| points[c]).max();
    among.iter().filter(|&c| Some(points[c]) == best).collect()
}

fn filter(tie: TieRule, winners: CandSet) -> CandSet {
    if tie == TieRule::TiesEliminate && winners.len() != 1 {
        CandSet::EMPTY
    } else {
        winners
    }
}

fn goal(ty: ControlType, winners: CandSet, p: usize) -> bool {
    let won = match ty.model() {
        WinnerModel::NonUnique => winners.contains(p),
        WinnerModel::Unique => winners == CandSet::singleton(p),
    };
    match ty.goal() {
        Goal::Constructive => won,
        Goal::Destructive => !won,
    }
}

/// All subsets of `0..n` as index lists, in no particular order.
fn index_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

fn set_subsets(set: CandSet) -> impl Iterator<Item = CandSet> {
    let members: Vec<usize> = set.iter().collect();
    index_subsets(members.len()).map(move |idx| idx.iter().map(|&i| members[i]).collect())
}

/// Whether control of type `ty` succeeds, by trying every action.
pub fn naive_decide(rule: VotingRule, ty: ControlType, instance: &ControlInstance) -> bool {
    let reduced = instance.reduced();
    let p = instance.focus();
    let base = reduced.base();
    let votes = raw_votes(reduced.election().profile());
    let all_votes: Vec<&RawVote> = votes.iter().collect();
    let k = reduced.limit().unwrap_or(u32::MAX) as usize;
    let outcome = |among: CandSet, vs: &[&RawVote]| naive_winners(rule, vs, among);
    match ty.action() {
        Action::AddCandidates | Action::UnlimitedAddCandidates => set_subsets(reduced.spoilers())
            .filter(|added| ty.action() == Action::UnlimitedAddCandidates || added.len() <= k)
            .any(|added| goal(ty, outcome(base.union(added), &all_votes), p)),
        Action::DeleteCandidates => set_subsets(base.difference(CandSet::singleton(p)))
            .filter(|gone| gone.len() <= k)
            .any(|gone| goal(ty, outcome(base.difference(gone), &all_votes), p)),
        Action::DeleteVoters => index_subsets(votes.len()).filter(|gone| gone.len() <= k).any(|gone| {
            let kept: Vec<&RawVote> = (0..votes.len())
                .filter(|i| !gone.contains(i))
                .map(|i| &votes[i])
                .collect();
            goal(ty, outcome(base, &kept), p)
        }),
        Action::AddVoters => {
            let extra = raw_votes(reduced.spoiler_votes().expect("AV instance"));
            index_subsets(extra.len())
                .filter(|added| added.len() <= k)
                .any(|added| {
                    let mut vs = all_votes.clone();
                    vs.extend(added.iter().map(|&i| &extra[i]));
                    goal(ty, outcome(base, &vs), p)
                })
        }
        Action::PartitionVoters => {
            let tie = ty.tie().expect("partition type");
            index_subsets(votes.len()).any(|first| {
                let (one, two): (Vec<usize>, Vec<usize>) = (0..votes.len()).partition(|i| first.contains(i));
                let pick = |idx: &[usize]| idx.iter().map(|&i| &votes[i]).collect::<Vec<_>>();
                let survivors = filter(tie, outcome(base, &pick(&one))).union(filter(tie, outcome(base, &pick(&two))));
                goal(ty, outcome(survivors, &all_votes), p)
            })
        }
        Action::PartitionCandidates | Action::RunoffPartitionCandidates => {
            let tie = ty.tie().expect("partition type");
            set_subsets(base).any(|first| {
                let second = base.difference(first);
                let one = filter(tie, outcome(first, &all_votes));
                let two = if ty.action() == Action::RunoffPartitionCandidates {
                    filter(tie, outcome(second, &all_votes))
                } else {
                    second
                };
                goal(ty, outcome(one.union(two), &all_votes), p)
            })
        }
    }
}

/// Naive focus set.
pub fn naive_focus_set(rule: VotingRule, ty: ControlType, reduced: &ReducedInstance) -> CandSet {
    reduced
        .base()
        .iter()
        .filter(|&c| naive_decide(rule, ty, &reduced.inflate_index(c).unwrap()))
        .collect()
}

pub fn any_rule() -> impl Strategy<Value = VotingRule> {
    prop::sample::select(VotingRule::ALL.to_vec())
}

pub fn any_class() -> impl Strategy<Value = CompatibilityClass> {
    prop::sample::select(CompatibilityClass::ALL.to_vec())
}
