//! Score computation on candidate subsets, with and without vote
//! multiplicities. This is the hot path of every control search.

use std::ops::ControlFlow;

use crate::candset::{CandSet, MAX_CANDIDATES};
use crate::elections::{Profile, VotingRule};

pub(crate) type Scores = [u32; MAX_CANDIDATES];

/// Candidates of `among` with maximal score. Empty when `among` is empty.
pub(crate) fn argmax(among: CandSet, scores: &Scores) -> CandSet {
    let best = among.iter().map(|c| scores[c]).max();
    match best {
        None => CandSet::EMPTY,
        Some(best) => among.iter().filter(|&c| scores[c] == best).collect(),
    }
}

/// Scores of the election restricted to `among`, with the vote kind
/// already checked against the rule.
pub(crate) fn scores(rule: VotingRule, profile: &Profile, among: CandSet) -> Scores {
    let grouped = Grouped::new(profile);
    let mut out = [0; MAX_CANDIDATES];
    grouped.accumulate(rule, among, &grouped.mult, &mut out);
    out
}

/// Distinct votes of a profile with multiplicities, in order of first
/// appearance.
#[derive(Clone, Debug)]
pub(crate) struct Grouped {
    kinds: Kinds,
    pub(crate) mult: Vec<u32>,
    /// Index of the first occurrence of each distinct vote in the source list.
    pub(crate) first_index: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
enum Kinds {
    Linear(Vec<Vec<u8>>),
    Approval(Vec<CandSet>),
}

impl Grouped {
    pub(crate) fn new(profile: &Profile) -> Self {
        let mut mult: Vec<u32> = Vec::new();
        let mut first_index: Vec<Vec<usize>> = Vec::new();
        let kinds = match profile {
            Profile::Linear(votes) => {
                let mut kinds: Vec<Vec<u8>> = Vec::new();
                for (i, v) in votes.iter().enumerate() {
                    let r: Vec<u8> = v.ranking().map(|c| c as u8).collect();
                    match kinds.iter().position(|k| *k == r) {
                        Some(g) => {
                            mult[g] += 1;
                            first_index[g].push(i);
                        }
                        None => {
                            kinds.push(r);
                            mult.push(1);
                            first_index.push(vec![i]);
                        }
                    }
                }
                Kinds::Linear(kinds)
            }
            Profile::Approval(votes) => {
                let mut kinds: Vec<CandSet> = Vec::new();
                for (i, v) in votes.iter().enumerate() {
                    let a = v.approved();
                    match kinds.iter().position(|k| *k == a) {
                        Some(g) => {
                            mult[g] += 1;
                            first_index[g].push(i);
                        }
                        None => {
                            kinds.push(a);
                            mult.push(1);
                            first_index.push(vec![i]);
                        }
                    }
                }
                Kinds::Approval(kinds)
            }
        };
        Grouped {
            kinds,
            mult,
            first_index,
        }
    }

    pub(crate) fn groups(&self) -> usize {
        self.mult.len()
    }

    /// Adds the scores of the votes selected by `counts` (one count per
    /// distinct vote) in the election restricted to `among`.
    pub(crate) fn accumulate(&self, rule: VotingRule, among: CandSet, counts: &[u32], out: &mut Scores) {
        if among.is_empty() {
            return;
        }
        match (&self.kinds, rule) {
            (Kinds::Linear(kinds), VotingRule::Plurality) => {
                for (r, &m) in kinds.iter().zip(counts) {
                    if m == 0 {
                        continue;
                    }
                    if let Some(&top) = r.iter().find(|&&c| among.contains(c as usize)) {
                        out[top as usize] += m;
                    }
                }
            }
            (Kinds::Linear(kinds), VotingRule::Veto) => {
                let mut total = 0;
                let mut vetoes = [0u32; MAX_CANDIDATES];
                for (r, &m) in kinds.iter().zip(counts) {
                    if m == 0 {
                        continue;
                    }
                    total += m;
                    if let Some(&last) = r.iter().rev().find(|&&c| among.contains(c as usize)) {
                        vetoes[last as usize] += m;
                    }
                }
                for c in among.iter() {
                    out[c] += total - vetoes[c];
                }
            }
            (Kinds::Approval(kinds), VotingRule::Approval) => {
                for (&a, &m) in kinds.iter().zip(counts) {
                    if m == 0 {
                        continue;
                    }
                    for c in a.intersection(among).iter() {
                        out[c] += m;
                    }
                }
            }
            _ => unreachable!("vote kind is checked before tallying"),
        }
    }

    pub(crate) fn winners(&self, rule: VotingRule, among: CandSet, counts: &[u32]) -> CandSet {
        let mut s = [0; MAX_CANDIDATES];
        self.accumulate(rule, among, counts, &mut s);
        argmax(among, &s)
    }

    /// Original vote indices realising a count vector: the first `counts[g]`
    /// occurrences of each distinct vote.
    pub(crate) fn indices_for(&self, counts: &[u32]) -> Vec<usize> {
        let mut out: Vec<usize> = counts
            .iter()
            .zip(&self.first_index)
            .flat_map(|(&m, idx)| idx[..m as usize].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Number of sub-multisets of a multiset with the given multiplicities,
/// saturating.
pub(crate) fn submultiset_count(mult: &[u32]) -> u64 {
    mult.iter().fold(1u64, |acc, &m| acc.saturating_mul(m as u64 + 1))
}

/// Visits every sub-multiset of total size at most `max_total`, as count
/// vectors in mixed-radix counter order (first distinct vote is the least
/// significant digit). Stops at the first `Break`.
pub(crate) fn for_each_submultiset<B>(
    mult: &[u32],
    max_total: Option<u32>,
    mut f: impl FnMut(&[u32]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let mut counts = vec![0u32; mult.len()];
    let mut total = 0u32;
    loop {
        if max_total.is_none_or(|k| total <= k) {
            f(&counts)?;
        }
        let mut g = 0;
        loop {
            if g == counts.len() {
                return ControlFlow::Continue(());
            }
            if counts[g] < mult[g] {
                counts[g] += 1;
                total += 1;
                break;
            }
            total -= counts[g];
            counts[g] = 0;
            g += 1;
        }
    }
}
