//! Two-stage elections used by the partition actions.

use crate::candset::CandSet;
use crate::control::types::{Action, TieRule};
use crate::elections::{Election, VotingRule};
use crate::error::{Error, Result};

/// How the input of a partition action is split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Partition {
    /// Vote indices forming `V1`; the remaining votes form `V2`.
    Voters { first: Vec<usize> },
    /// `C1`; the remaining candidates form `C2`.
    Candidates { first: CandSet },
}

/// Applies the first-round tie rule to a set of subelection winners.
pub fn tie_filter(tie: TieRule, winners: CandSet) -> CandSet {
    match tie {
        TieRule::TiesPromote => winners,
        TieRule::TiesEliminate if winners.len() == 1 => winners,
        TieRule::TiesEliminate => CandSet::EMPTY,
    }
}

/// Final-round winners of a partition action applied to `election`.
pub fn two_stage_eval(
    rule: VotingRule,
    action: Action,
    tie: TieRule,
    election: &Election,
    partition: &Partition,
) -> Result<CandSet> {
    rule.check_kind(election.profile())?;
    let all = election.all();
    let survivors = match (action, partition) {
        (Action::PartitionVoters, Partition::Voters { first }) => {
            let n = election.profile().len();
            let mut in_first = vec![false; n];
            for &i in first {
                if i >= n || in_first[i] {
                    return Err(Error::domain(format!("vote index {i} is out of range or repeated")));
                }
                in_first[i] = true;
            }
            let side = |keep: bool| {
                let picked = (0..n).filter(|&i| in_first[i] == keep);
                let sub = election.with_profile(election.profile().select(picked))?;
                Ok::<_, Error>(tie_filter(tie, sub.winners_among(rule, all)?))
            };
            side(true)?.union(side(false)?)
        }
        (Action::PartitionCandidates, Partition::Candidates { first }) => {
            check_split(*first, all)?;
            let first_round = tie_filter(tie, election.winners_among(rule, *first)?);
            first_round.union(all.difference(*first))
        }
        (Action::RunoffPartitionCandidates, Partition::Candidates { first }) => {
            check_split(*first, all)?;
            let one = tie_filter(tie, election.winners_among(rule, *first)?);
            let two = tie_filter(tie, election.winners_among(rule, all.difference(*first))?);
            one.union(two)
        }
        (Action::PartitionVoters | Action::PartitionCandidates | Action::RunoffPartitionCandidates, _) => {
            return Err(Error::domain(format!(
                "{} needs a partition of the other kind",
                action.code()
            )));
        }
        _ => return Err(Error::usage(format!("{} is not a partition action", action.code()))),
    };
    election.winners_among(rule, survivors)
}

fn check_split(first: CandSet, all: CandSet) -> Result<()> {
    if first.is_subset(all) {
        Ok(())
    } else {
        Err(Error::domain("candidate partition mentions unknown candidates"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{approval, linear};

    #[test]
    fn pv_te_with_empty_side_eliminates_everyone() {
        let e = linear("a b", "a>b, b>a");
        let p = Partition::Voters { first: vec![0, 1] };
        let w = two_stage_eval(
            VotingRule::Plurality,
            Action::PartitionVoters,
            TieRule::TiesEliminate,
            &e,
            &p,
        );
        assert_eq!(w.unwrap(), CandSet::EMPTY);
    }

    #[test]
    fn pc_single_vote() {
        let e = linear("a b", "a>b");
        let p = Partition::Candidates {
            first: CandSet::singleton(0),
        };
        for tie in [TieRule::TiesEliminate, TieRule::TiesPromote] {
            let w = two_stage_eval(VotingRule::Plurality, Action::PartitionCandidates, tie, &e, &p).unwrap();
            assert_eq!(w, CandSet::singleton(0));
        }
    }

    #[test]
    fn rpc_tp_with_empty_first_side_is_plain_election() {
        let e = approval("a b c", "110, 011, 100");
        let p = Partition::Candidates { first: CandSet::EMPTY };
        let w = two_stage_eval(
            VotingRule::Approval,
            Action::RunoffPartitionCandidates,
            TieRule::TiesPromote,
            &e,
            &p,
        )
        .unwrap();
        assert_eq!(w, e.winners(VotingRule::Approval).unwrap());
    }

    #[test]
    fn malformed_partitions_rejected() {
        let e = linear("a b", "a>b");
        let dup = Partition::Voters { first: vec![0, 0] };
        let r = two_stage_eval(
            VotingRule::Plurality,
            Action::PartitionVoters,
            TieRule::TiesPromote,
            &e,
            &dup,
        );
        assert!(matches!(r, Err(Error::Domain(_))));
        let wrong = Partition::Candidates {
            first: CandSet::singleton(5),
        };
        let r = two_stage_eval(
            VotingRule::Plurality,
            Action::PartitionCandidates,
            TieRule::TiesPromote,
            &e,
            &wrong,
        );
        assert!(matches!(r, Err(Error::Domain(_))));
        let kind = Partition::Candidates { first: CandSet::EMPTY };
        let r = two_stage_eval(
            VotingRule::Plurality,
            Action::PartitionVoters,
            TieRule::TiesPromote,
            &e,
            &kind,
        );
        assert!(r.is_err());
    }
}
