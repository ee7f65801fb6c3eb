//! The embedded witness tables.

use crate::corpus::format::{parse_profile, ElectionFile};
use crate::corpus::WitnessRecord;
use crate::elections::{Candidate, VotingRule};
use crate::error::{Error, Result};

const PLURALITY: &str = include_str!("data/plurality.txt");
const VETO: &str = include_str!("data/veto.txt");
const APPROVAL: &str = include_str!("data/approval.txt");

pub(crate) fn table(rule: VotingRule) -> &'static str {
    match rule {
        VotingRule::Plurality => PLURALITY,
        VotingRule::Veto => VETO,
        VotingRule::Approval => APPROVAL,
    }
}

/// Rows are `id | C | S | V | U | k`.
pub(crate) fn parse_table(rule: VotingRule, text: &str) -> Result<Vec<WitnessRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| parse_row(rule, i + 1, l))
        .collect()
}

fn parse_row(rule: VotingRule, line: usize, row: &str) -> Result<WitnessRecord> {
    let cells: Vec<&str> = row.split('|').map(str::trim).collect();
    let [id, cands, spoilers, votes, extra, k] = cells[..] else {
        return Err(Error::parse(line, "expected six `|`-separated cells"));
    };
    let (id, generated) = match id.strip_suffix('†') {
        Some(id) => (id, true),
        None => (id, false),
    };
    let names = |cell: &str| -> Result<Vec<Candidate>> {
        cell.split_whitespace()
            .map(|n| n.parse().map_err(|e: Error| Error::parse(line, e.to_string())))
            .collect()
    };
    let candidates = names(cands)?;
    let spoilers = match spoilers {
        "-" => None,
        "{}" => Some(Vec::new()),
        list => Some(names(list)?),
    };
    let mut universe = candidates.clone();
    universe.extend(spoilers.iter().flatten().cloned());
    let votes = parse_profile(rule, &universe, vote_cells(line, votes))?;
    let spoiler_votes = match extra {
        "-" => None,
        "{}" => Some(parse_profile(rule, &candidates, std::iter::empty())?),
        cell => Some(parse_profile(rule, &candidates, vote_cells(line, cell))?),
    };
    let limit = match k {
        "-" => None,
        k => Some(k.parse().map_err(|_| Error::parse(line, format!("bad k `{k}`")))?),
    };
    let file = ElectionFile::new(rule, candidates, spoilers, limit, votes, spoiler_votes)
        .map_err(|e| Error::parse(line, e.to_string()))?;
    Ok(WitnessRecord {
        id: id.to_string(),
        generated,
        file,
    })
}

fn vote_cells(line: usize, cell: &str) -> impl Iterator<Item = (usize, &str)> {
    cell.split(',').map(move |v| (line, v.trim()))
}
