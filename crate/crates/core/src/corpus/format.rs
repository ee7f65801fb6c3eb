//! The `.election` file format.
//!
//! ```text
//! system: veto
//! candidates: a b c
//! spoiler-candidates: d
//! k: 1
//! votes:
//! c>a>b>d
//! spoiler-votes:
//! ```
//!
//! Headers appear in this order; `spoiler-candidates:`, `k:` and
//! `spoiler-votes:` are optional, and a present header with nothing after
//! it denotes an empty set. Votes range over the candidates followed by
//! the spoiler candidates; spoiler votes range over the candidates only.
//! Linear votes are written `a>b>c`, approval votes as one bit per
//! candidate in declared order.

use std::fmt::Write as _;

use crate::candset::CandSet;
use crate::control::{CompatibilityClass, ReducedInstance};
use crate::elections::{ApprovalVote, Candidate, Election, LinearVote, Profile, VotingRule};
use crate::error::{Error, Result};

/// Contents of one election file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElectionFile {
    rule: VotingRule,
    /// Over the candidates followed by the spoiler candidates.
    election: Election,
    spoilers: Option<usize>,
    limit: Option<u32>,
    spoiler_votes: Option<Profile>,
}

impl ElectionFile {
    /// Checks that the votes fit the rule and that the optional fields
    /// select exactly one compatibility class.
    pub fn new(
        rule: VotingRule,
        candidates: Vec<Candidate>,
        spoilers: Option<Vec<Candidate>>,
        limit: Option<u32>,
        votes: Profile,
        spoiler_votes: Option<Profile>,
    ) -> Result<Self> {
        let base = candidates.len();
        let spoiler_count = spoilers.as_ref().map(Vec::len);
        let mut all = candidates;
        all.extend(spoilers.unwrap_or_default());
        let election = Election::new(all, votes)?;
        rule.check_kind(election.profile())?;
        if let Some(extra) = &spoiler_votes {
            rule.check_kind(extra)?;
            let base_names = election.candidates()[..base].to_vec();
            Election::new(base_names, extra.clone())?;
        }
        let file = ElectionFile {
            rule,
            election,
            spoilers: spoiler_count,
            limit,
            spoiler_votes,
        };
        file.class()?;
        Ok(file)
    }

    pub fn rule(&self) -> VotingRule {
        self.rule
    }

    /// The election over candidates and spoiler candidates together.
    pub fn election(&self) -> &Election {
        &self.election
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.election.candidates()[..self.base_len()]
    }

    pub fn spoilers(&self) -> Option<&[Candidate]> {
        self.spoilers.map(|_| &self.election.candidates()[self.base_len()..])
    }

    pub fn limit(&self) -> Option<u32> {
        self.limit
    }

    pub fn votes(&self) -> &Profile {
        self.election.profile()
    }

    pub fn spoiler_votes(&self) -> Option<&Profile> {
        self.spoiler_votes.as_ref()
    }

    fn base_len(&self) -> usize {
        self.election.num_candidates() - self.spoilers.unwrap_or(0)
    }

    /// The compatibility class named by the fields present.
    pub fn class(&self) -> Result<CompatibilityClass> {
        let present = (
            self.spoilers.is_some(),
            self.spoiler_votes.is_some(),
            self.limit.is_some(),
        );
        Ok(match present {
            (false, false, false) => CompatibilityClass::Partition,
            (true, false, true) => CompatibilityClass::AddCandidates,
            (true, false, false) => CompatibilityClass::UnlimitedAddCandidates,
            (false, false, true) => CompatibilityClass::Delete,
            (false, true, true) => CompatibilityClass::AddVoters,
            _ => {
                return Err(Error::domain(
                    "field combination matches no control input (spoiler votes need k and exclude spoiler candidates)",
                ))
            }
        })
    }

    /// The control input without a focus candidate.
    pub fn reduced(&self) -> Result<ReducedInstance> {
        let election = self.election.clone();
        Ok(match self.class()? {
            CompatibilityClass::Partition => ReducedInstance::partition(election),
            CompatibilityClass::Delete => ReducedInstance::delete(election, self.limit.unwrap_or(0)),
            CompatibilityClass::AddCandidates => {
                let spoilers = self.spoiler_set();
                ReducedInstance::add_candidates(election, spoilers, self.limit.unwrap_or(0))?
            }
            CompatibilityClass::UnlimitedAddCandidates => {
                let spoilers = self.spoiler_set();
                ReducedInstance::unlimited_add_candidates(election, spoilers)?
            }
            CompatibilityClass::AddVoters => {
                let extra = self.spoiler_votes.clone().unwrap_or_else(|| self.votes().empty_like());
                ReducedInstance::add_voters(election, extra, self.limit.unwrap_or(0))?
            }
        })
    }

    /// The file form of a reduced instance. Spoiler candidates must come
    /// after all other candidates.
    pub fn from_reduced(rule: VotingRule, reduced: &ReducedInstance) -> Result<Self> {
        let election = reduced.election();
        let base = reduced.base();
        if base != CandSet::full(base.len()) {
            return Err(Error::domain("spoiler candidates must follow the other candidates"));
        }
        let class = reduced.class();
        let names = election.candidates();
        let spoilers = class.has_spoiler_candidates().then(|| names[base.len()..].to_vec());
        let limit = if class.has_limit() { reduced.limit() } else { None };
        ElectionFile::new(
            rule,
            names[..base.len()].to_vec(),
            spoilers,
            limit,
            election.profile().clone(),
            reduced.spoiler_votes().cloned(),
        )
    }

    fn spoiler_set(&self) -> CandSet {
        self.election.all().difference(CandSet::full(self.base_len()))
    }
}

/// Reads an election file.
pub fn parse_instance(text: &str) -> Result<ElectionFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    let last_line = text.lines().count().max(1);

    let mut header = |key: &str, required: bool| -> Result<Option<(usize, String)>> {
        match lines.peek() {
            Some(&(n, line)) => match line.strip_prefix(key).and_then(|r| r.strip_prefix(':')) {
                Some(value) => {
                    lines.next();
                    Ok(Some((n, value.trim().to_string())))
                }
                None if required => Err(Error::parse(n, format!("expected `{key}:`"))),
                None => Ok(None),
            },
            None if required => Err(Error::parse(last_line, format!("missing `{key}:`"))),
            None => Ok(None),
        }
    };

    let (n, system) = header("system", true)?.expect("required");
    let rule: VotingRule = system
        .parse()
        .map_err(|_| Error::parse(n, format!("unknown system `{system}`")))?;
    let (names_line, names) = header("candidates", true)?.expect("required");
    let candidates = parse_names(names_line, &names)?;
    check_distinct(names_line, &candidates)?;
    let spoiler_header = header("spoiler-candidates", false)?;
    let spoiler_line = spoiler_header.as_ref().map_or(names_line, |(n, _)| *n);
    let spoilers = spoiler_header.map(|(n, names)| parse_names(n, &names)).transpose()?;
    let limit = header("k", false)?
        .map(|(n, k)| {
            k.parse::<u32>()
                .map_err(|_| Error::parse(n, format!("k must be a nonnegative integer, got `{k}`")))
        })
        .transpose()?;
    let (n, rest) = header("votes", true)?.expect("required");
    if !rest.is_empty() {
        return Err(Error::parse(n, "votes go on the lines after `votes:`"));
    }

    let mut all = candidates.clone();
    all.extend(spoilers.iter().flatten().cloned());
    check_distinct(spoiler_line, &all)?;

    let mut votes = Vec::new();
    let mut extra: Option<Vec<(usize, &str)>> = None;
    for (n, line) in lines {
        if let Some(rest) = line.strip_prefix("spoiler-votes:") {
            if extra.is_some() {
                return Err(Error::parse(n, "repeated `spoiler-votes:`"));
            }
            if !rest.trim().is_empty() {
                return Err(Error::parse(n, "spoiler votes go on the lines after `spoiler-votes:`"));
            }
            extra = Some(Vec::new());
        } else if line.contains(':') {
            return Err(Error::parse(n, format!("unexpected header `{line}`")));
        } else {
            match &mut extra {
                Some(list) => list.push((n, line)),
                None => votes.push((n, line)),
            }
        }
    }

    let votes = parse_profile(rule, &all, votes)?;
    let spoiler_votes = extra.map(|list| parse_profile(rule, &candidates, list)).transpose()?;
    ElectionFile::new(rule, candidates, spoilers, limit, votes, spoiler_votes)
        .map_err(|e| Error::parse(last_line, e.to_string()))
}

fn parse_names(line: usize, names: &str) -> Result<Vec<Candidate>> {
    names
        .split_whitespace()
        .map(|s| s.parse().map_err(|e: Error| Error::parse(line, e.to_string())))
        .collect()
}

fn check_distinct(line: usize, names: &[Candidate]) -> Result<()> {
    for (i, c) in names.iter().enumerate() {
        if names[..i].contains(c) {
            return Err(Error::parse(line, format!("duplicate candidate `{c}`")));
        }
    }
    Ok(())
}

pub(crate) fn parse_profile<'t>(
    rule: VotingRule,
    names: &[Candidate],
    lines: impl IntoIterator<Item = (usize, &'t str)>,
) -> Result<Profile> {
    let lines = lines.into_iter();
    if rule.uses_approval() {
        lines
            .map(|(n, l)| parse_approval(l, names.len()).map_err(|m| Error::parse(n, m)))
            .collect::<Result<_>>()
            .map(Profile::Approval)
    } else {
        lines
            .map(|(n, l)| parse_linear(l, names).map_err(|m| Error::parse(n, m)))
            .collect::<Result<_>>()
            .map(Profile::Linear)
    }
}

fn parse_linear(text: &str, names: &[Candidate]) -> std::result::Result<LinearVote, String> {
    let ranking = text
        .split('>')
        .map(|name| {
            let name = name.trim();
            names
                .iter()
                .position(|c| c.as_str() == name)
                .ok_or_else(|| format!("unknown candidate `{name}` in vote `{text}`"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    LinearVote::new(ranking, names.len()).map_err(|e| format!("vote `{text}`: {e}"))
}

fn parse_approval(text: &str, n: usize) -> std::result::Result<ApprovalVote, String> {
    if text.chars().count() != n {
        return Err(format!(
            "approval vote `{text}` has {} bits, expected {n}",
            text.chars().count()
        ));
    }
    let mut set = CandSet::EMPTY;
    for (i, ch) in text.chars().enumerate() {
        match ch {
            '1' => set.insert(i),
            '0' => {}
            _ => return Err(format!("approval vote `{text}` must contain only 0 and 1")),
        }
    }
    ApprovalVote::new(set, n).map_err(|e| e.to_string())
}

/// Canonical text of an election file.
pub fn serialize_instance(file: &ElectionFile) -> String {
    let names = |list: &[Candidate]| list.iter().map(Candidate::as_str).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "system: {}", file.rule.name());
    push_header(&mut out, "candidates", &names(file.candidates()));
    if let Some(spoilers) = file.spoilers() {
        push_header(&mut out, "spoiler-candidates", &names(spoilers));
    }
    if let Some(k) = file.limit {
        let _ = writeln!(out, "k: {k}");
    }
    out.push_str("votes:\n");
    push_votes(&mut out, file.election.candidates(), file.votes());
    if let Some(extra) = &file.spoiler_votes {
        out.push_str("spoiler-votes:\n");
        push_votes(&mut out, file.candidates(), extra);
    }
    out
}

fn push_header(out: &mut String, key: &str, value: &str) {
    if value.is_empty() {
        let _ = writeln!(out, "{key}:");
    } else {
        let _ = writeln!(out, "{key}: {value}");
    }
}

fn push_votes(out: &mut String, names: &[Candidate], profile: &Profile) {
    match profile {
        Profile::Linear(votes) => {
            for v in votes {
                let ranked: Vec<&str> = v.ranking().map(|c| names[c].as_str()).collect();
                out.push_str(&ranked.join(">"));
                out.push('\n');
            }
        }
        Profile::Approval(votes) => {
            for v in votes {
                out.extend((0..names.len()).map(|c| if v.approved().contains(c) { '1' } else { '0' }));
                out.push('\n');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_minimal_file() {
        let f = parse_instance("system: plurality\ncandidates: a b\nvotes:\na>b\n").unwrap();
        assert_eq!(f.class().unwrap(), CompatibilityClass::Partition);
        assert_eq!(f.votes().len(), 1);
        assert_eq!(
            serialize_instance(&f),
            "system: plurality\ncandidates: a b\nvotes:\na>b\n"
        );
    }

    #[test]
    fn reads_spoiler_votes() {
        let text = "system: veto\ncandidates: a b c\nk: 1\nvotes:\nc>a>b\nspoiler-votes:\nc>a>b\n";
        let f = parse_instance(text).unwrap();
        assert_eq!(f.class().unwrap(), CompatibilityClass::AddVoters);
        assert_eq!(f.spoiler_votes().unwrap().len(), 1);
        assert_eq!(serialize_instance(&f), text);
    }

    #[test]
    fn empty_spoiler_sets_are_kept() {
        let text = "system: plurality\ncandidates: a\nspoiler-candidates:\nk: 0\nvotes:\na\n";
        let f = parse_instance(text).unwrap();
        assert_eq!(f.class().unwrap(), CompatibilityClass::AddCandidates);
        assert_eq!(serialize_instance(&f), text);
        let text = "system: approval\ncandidates: a b\nk: 0\nvotes:\n10\n01\nspoiler-votes:\n";
        let f = parse_instance(text).unwrap();
        assert_eq!(f.class().unwrap(), CompatibilityClass::AddVoters);
        assert_eq!(serialize_instance(&f), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("system: borda\ncandidates: a\nvotes:\n", 1),
            ("system: plurality\ncandidates: a a\nvotes:\n", 2),
            ("system: plurality\ncandidates: a b\nspoiler-candidates: b\nvotes:\n", 3),
            ("system: plurality\ncandidates: a b\nvotes:\na>b\nb>b\n", 5),
            ("system: approval\ncandidates: a b\nvotes:\n10\n1\n", 5),
            ("system: approval\ncandidates: a b\nvotes:\n1x\n", 4),
            ("system: plurality\nvotes:\n", 2),
            ("system: plurality\ncandidates: a b\nk: -1\nvotes:\n", 3),
            ("system: plurality\ncandidates: a b\nvotes:\na>b\nfoo: 1\n", 5),
        ];
        for (text, line) in cases {
            match parse_instance(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn spoiler_votes_need_a_limit() {
        let text = "system: plurality\ncandidates: a b\nvotes:\na>b\nspoiler-votes:\nb>a\n";
        assert!(parse_instance(text).is_err());
    }
}
