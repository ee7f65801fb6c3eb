//! Elections, votes and the three winner rules (plurality, veto, approval).
//!
//! Candidates are referred to by index into the election's candidate list.
//! Name-based helpers ([`score`], [`winners`], [`unique_winner`],
//! [`mask_votes`]) sit on top of the index-based API.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::candset::{CandSet, MAX_CANDIDATES};
use crate::error::{Error, Result};

/// A candidate name: a nonempty token without whitespace and without `>`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Candidate(String);

impl Candidate {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.contains('>') || name.chars().any(char::is_whitespace) {
            return Err(Error::domain(format!("invalid candidate name {name:?}")));
        }
        Ok(Candidate(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Candidate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Candidate::new(s)
    }
}

/// A strict ranking of the whole candidate universe, best first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearVote(Vec<u8>);

impl LinearVote {
    /// Builds a ranking; it must be a permutation of `0..n`.
    pub fn new(ranking: Vec<usize>, n: usize) -> Result<Self> {
        if ranking.len() != n {
            return Err(Error::domain(format!(
                "vote ranks {} candidates, expected {n}",
                ranking.len()
            )));
        }
        let mut seen = CandSet::EMPTY;
        for &c in &ranking {
            if c >= n || seen.contains(c) {
                return Err(Error::domain("vote is not a permutation of the candidates"));
            }
            seen.insert(c);
        }
        Ok(LinearVote(ranking.into_iter().map(|c| c as u8).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ranking(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.0.iter().map(|&c| c as usize)
    }

    /// Most preferred member of `among`.
    pub fn top(&self, among: CandSet) -> Option<usize> {
        self.ranking().find(|&c| among.contains(c))
    }

    /// Least preferred member of `among`.
    pub fn bottom(&self, among: CandSet) -> Option<usize> {
        self.ranking().rev().find(|&c| among.contains(c))
    }
}

/// One approval bit per candidate of the universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApprovalVote(CandSet);

impl ApprovalVote {
    pub fn new(approved: CandSet, n: usize) -> Result<Self> {
        if !approved.is_subset(CandSet::full(n)) {
            return Err(Error::domain("approval vector longer than the candidate list"));
        }
        Ok(ApprovalVote(approved))
    }

    pub fn approved(&self) -> CandSet {
        self.0
    }
}

/// A vote collection. Order carries no meaning; duplicates do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Profile {
    Linear(Vec<LinearVote>),
    Approval(Vec<ApprovalVote>),
}

impl Profile {
    pub fn len(&self) -> usize {
        match self {
            Profile::Linear(v) => v.len(),
            Profile::Approval(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, Profile::Linear(_))
    }

    /// An empty profile of the same vote kind.
    pub fn empty_like(&self) -> Profile {
        match self {
            Profile::Linear(_) => Profile::Linear(Vec::new()),
            Profile::Approval(_) => Profile::Approval(Vec::new()),
        }
    }

    /// Restricts every vote to `subset` and renumbers the survivors
    /// `0..subset.len()` in their original relative order.
    pub fn mask(&self, subset: CandSet) -> Profile {
        let mut renumber = [u8::MAX; MAX_CANDIDATES];
        for (new, old) in subset.iter().enumerate() {
            renumber[old] = new as u8;
        }
        match self {
            Profile::Linear(votes) => Profile::Linear(
                votes
                    .iter()
                    .map(|v| {
                        LinearVote(
                            v.0.iter()
                                .filter(|&&c| subset.contains(c as usize))
                                .map(|&c| renumber[c as usize])
                                .collect(),
                        )
                    })
                    .collect(),
            ),
            Profile::Approval(votes) => Profile::Approval(
                votes
                    .iter()
                    .map(|v| ApprovalVote(v.0.intersection(subset).iter().map(|c| renumber[c] as usize).collect()))
                    .collect(),
            ),
        }
    }

    /// Multiset view: distinct votes with their multiplicities.
    pub fn multiplicities(&self) -> HashMap<VoteKey, usize> {
        let mut out = HashMap::new();
        for i in 0..self.len() {
            *out.entry(self.key(i)).or_insert(0) += 1;
        }
        out
    }

    pub(crate) fn key(&self, i: usize) -> VoteKey {
        match self {
            Profile::Linear(v) => VoteKey::Linear(v[i].clone()),
            Profile::Approval(v) => VoteKey::Approval(v[i]),
        }
    }

    /// Multiset equality.
    pub fn same_multiset(&self, other: &Profile) -> bool {
        self.multiplicities() == other.multiplicities()
    }

    /// Concatenation of two profiles of the same kind.
    pub fn concat(&self, other: &Profile) -> Result<Profile> {
        match (self, other) {
            (Profile::Linear(a), Profile::Linear(b)) => Ok(Profile::Linear(a.iter().chain(b).cloned().collect())),
            (Profile::Approval(a), Profile::Approval(b)) => Ok(Profile::Approval(a.iter().chain(b).copied().collect())),
            _ => Err(Error::domain("cannot mix linear and approval votes")),
        }
    }

    /// Sub-collection picked by vote index.
    pub fn select(&self, indices: impl IntoIterator<Item = usize>) -> Profile {
        match self {
            Profile::Linear(v) => Profile::Linear(indices.into_iter().map(|i| v[i].clone()).collect()),
            Profile::Approval(v) => Profile::Approval(indices.into_iter().map(|i| v[i]).collect()),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            Profile::Linear(votes) => {
                for v in votes {
                    LinearVote::new(v.ranking().collect(), n)?;
                }
            }
            Profile::Approval(votes) => {
                for v in votes {
                    ApprovalVote::new(v.0, n)?;
                }
            }
        }
        Ok(())
    }
}

/// Hashable identity of a single vote.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VoteKey {
    Linear(LinearVote),
    Approval(ApprovalVote),
}

/// A candidate list together with a profile over exactly those candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    candidates: Vec<Candidate>,
    profile: Profile,
}

impl Election {
    pub fn new(candidates: Vec<Candidate>, profile: Profile) -> Result<Self> {
        if candidates.len() > MAX_CANDIDATES {
            return Err(Error::TooLarge(format!(
                "{} candidates (at most {MAX_CANDIDATES})",
                candidates.len()
            )));
        }
        for (i, c) in candidates.iter().enumerate() {
            if candidates[..i].contains(c) {
                return Err(Error::domain(format!("duplicate candidate `{c}`")));
            }
        }
        profile.validate(candidates.len())?;
        Ok(Election { candidates, profile })
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn all(&self) -> CandSet {
        CandSet::full(self.candidates.len())
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.candidates
            .iter()
            .position(|c| c.as_str() == name)
            .ok_or_else(|| Error::UnknownCandidate(name.to_string()))
    }

    pub fn subset_of(&self, names: &[&str]) -> Result<CandSet> {
        names.iter().map(|n| self.index_of(n)).collect()
    }

    /// Names of a candidate set, in declared order.
    pub fn names(&self, set: CandSet) -> Vec<&str> {
        set.iter().map(|c| self.candidates[c].as_str()).collect()
    }

    /// `{a,b}`-style rendering of a candidate set.
    pub fn format_set(&self, set: CandSet) -> String {
        format!("{{{}}}", self.names(set).join(","))
    }

    /// The election `(subset, V masked to subset)`.
    pub fn restrict(&self, subset: CandSet) -> Election {
        Election {
            candidates: subset.iter().map(|c| self.candidates[c].clone()).collect(),
            profile: self.profile.mask(subset),
        }
    }

    pub fn with_profile(&self, profile: Profile) -> Result<Election> {
        Election::new(self.candidates.clone(), profile)
    }

    /// Per-candidate scores of the election restricted to `among`; entries
    /// outside `among` are zero.
    pub fn scores_among(&self, rule: VotingRule, among: CandSet) -> Result<[u32; MAX_CANDIDATES]> {
        rule.check_kind(&self.profile)?;
        Ok(crate::tally::scores(rule, &self.profile, among))
    }

    /// Winners of the election restricted to `among`.
    pub fn winners_among(&self, rule: VotingRule, among: CandSet) -> Result<CandSet> {
        let scores = self.scores_among(rule, among)?;
        Ok(crate::tally::argmax(among, &scores))
    }

    pub fn winners(&self, rule: VotingRule) -> Result<CandSet> {
        self.winners_among(rule, self.all())
    }
}

/// The three implemented election systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VotingRule {
    Plurality,
    Veto,
    Approval,
}

impl VotingRule {
    pub const ALL: [VotingRule; 3] = [VotingRule::Plurality, VotingRule::Veto, VotingRule::Approval];

    pub fn name(self) -> &'static str {
        match self {
            VotingRule::Plurality => "plurality",
            VotingRule::Veto => "veto",
            VotingRule::Approval => "approval",
        }
    }

    /// True if the rule takes approval vectors rather than rankings.
    pub fn uses_approval(self) -> bool {
        self == VotingRule::Approval
    }

    pub(crate) fn check_kind(self, profile: &Profile) -> Result<()> {
        match (self.uses_approval(), profile.is_linear()) {
            (false, true) | (true, false) => Ok(()),
            (false, false) => Err(Error::VoteKind {
                rule: self.name(),
                expected: "linear",
            }),
            (true, true) => Err(Error::VoteKind {
                rule: self.name(),
                expected: "approval",
            }),
        }
    }
}

impl fmt::Display for VotingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VotingRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plurality" => Ok(VotingRule::Plurality),
            "veto" => Ok(VotingRule::Veto),
            "approval" => Ok(VotingRule::Approval),
            other => Err(Error::usage(format!("unknown election system `{other}`"))),
        }
    }
}

/// The rule's point count for candidate `c`.
pub fn score(rule: VotingRule, election: &Election, c: &str) -> Result<u32> {
    let idx = election.index_of(c)?;
    Ok(election.scores_among(rule, election.all())?[idx])
}

/// All candidates of maximal score.
pub fn winners(rule: VotingRule, election: &Election) -> Result<Vec<Candidate>> {
    let w = election.winners(rule)?;
    Ok(w.iter().map(|c| election.candidates[c].clone()).collect())
}

/// True iff `c` is the one and only winner.
pub fn unique_winner(rule: VotingRule, election: &Election, c: &str) -> Result<bool> {
    let idx = election.index_of(c)?;
    Ok(election.winners(rule)? == CandSet::singleton(idx))
}

/// The election restricted to the named candidates (kept in declared order).
pub fn mask_votes(election: &Election, subset: &[&str]) -> Result<Election> {
    let set = election.subset_of(subset)?;
    Ok(election.restrict(set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{approval, linear};

    #[test]
    fn plurality_intro_example() {
        let e = linear("a b c", "a>b>c, a>b>c, a>c>b, b>c>a");
        assert_eq!(score(VotingRule::Plurality, &e, "a").unwrap(), 3);
        let w = winners(VotingRule::Plurality, &e).unwrap();
        assert_eq!(w, vec![Candidate::new("a").unwrap()]);
        assert!(unique_winner(VotingRule::Plurality, &e, "a").unwrap());
    }

    #[test]
    fn veto_example() {
        let e = linear("a b c", "a>b>c, c>a>b");
        assert_eq!(score(VotingRule::Veto, &e, "a").unwrap(), 2);
        assert_eq!(score(VotingRule::Veto, &e, "b").unwrap(), 1);
        assert_eq!(score(VotingRule::Veto, &e, "c").unwrap(), 1);
        assert_eq!(e.winners(VotingRule::Veto).unwrap(), CandSet::singleton(0));
    }

    #[test]
    fn approval_scores() {
        let e = approval("a b", "10");
        assert_eq!(score(VotingRule::Approval, &e, "b").unwrap(), 0);
        let e = approval("a b", "10, 01");
        assert!(!unique_winner(VotingRule::Approval, &e, "a").unwrap());
    }

    #[test]
    fn empty_cases() {
        for rule in VotingRule::ALL {
            let e = if rule.uses_approval() {
                approval("a b", "")
            } else {
                linear("a b", "")
            };
            assert_eq!(e.winners(rule).unwrap(), CandSet::full(2));
            assert_eq!(e.winners_among(rule, CandSet::EMPTY).unwrap(), CandSet::EMPTY);
        }
        let e = linear("a", "a");
        for rule in [VotingRule::Plurality, VotingRule::Veto] {
            assert!(unique_winner(rule, &e, "a").unwrap());
        }
    }

    #[test]
    fn kind_and_name_errors() {
        let e = linear("a b", "a>b");
        assert!(matches!(
            score(VotingRule::Approval, &e, "a"),
            Err(Error::VoteKind { .. })
        ));
        assert!(matches!(
            score(VotingRule::Plurality, &e, "z"),
            Err(Error::UnknownCandidate(_))
        ));
        assert!(mask_votes(&e, &["a", "q"]).is_err());
    }

    #[test]
    fn invalid_votes_rejected() {
        let cands: Vec<Candidate> = ["a", "b"].iter().map(|s| Candidate::new(*s).unwrap()).collect();
        assert!(LinearVote::new(vec![0, 0], 2).is_err());
        assert!(LinearVote::new(vec![0], 2).is_err());
        assert!(ApprovalVote::new(CandSet::from_bits(0b100), 2).is_err());
        assert!(Election::new(vec![cands[0].clone(), cands[0].clone()], Profile::Linear(vec![])).is_err());
        assert!(Candidate::new("a>b").is_err());
        assert!(Candidate::new("").is_err());
    }

    #[test]
    fn masking() {
        let e = linear("a b c", "a>b>c");
        let m = mask_votes(&e, &["a", "c"]).unwrap();
        assert_eq!(m, linear("a c", "a>c"));

        let e = linear("a b c", "a>b>c, b>c>a");
        let m = mask_votes(&e, &["b"]).unwrap();
        assert_eq!(m, linear("b", "b, b"));

        let e = approval("a b c", "101");
        let m = mask_votes(&e, &["a", "b"]).unwrap();
        assert_eq!(m, approval("a b", "10"));
    }
}
