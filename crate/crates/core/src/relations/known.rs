//! Relations between control types that hold on every input.

use std::fmt;

use rayon::prelude::*;

use crate::candset::CandSet;
use crate::control::{all_types, compatible_pairs, focus_set, ControlType, Goal, WinnerModel};
use crate::control::{CompatibilityClass, ReducedInstance};
use crate::elections::VotingRule;
use crate::error::Result;
use crate::search::{random_instance, trial_rng, SearchConfig};

fn ty(s: &str) -> ControlType {
    s.parse().expect("well-formed type string")
}

fn types(list: &[&str]) -> Vec<ControlType> {
    list.iter().map(|s| ty(s)).collect()
}

/// A set relation between focus sets that holds on every reduced instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// All listed types have the same focus set.
    Collapse(Vec<ControlType>),
    /// `f_sub ⊆ f_sup`; `strict` when some instance separates them.
    Containment {
        sub: ControlType,
        sup: ControlType,
        strict: bool,
    },
}

impl Claim {
    pub fn class(&self) -> CompatibilityClass {
        match self {
            Claim::Collapse(list) => list[0].class(),
            Claim::Containment { sub, .. } => sub.class(),
        }
    }

    fn involved(&self) -> Vec<ControlType> {
        match self {
            Claim::Collapse(list) => list.clone(),
            Claim::Containment { sub, sup, .. } => vec![*sub, *sup],
        }
    }

    /// Whether the focus sets (in the order of the involved types) satisfy
    /// the claim.
    fn holds(&self, sets: &[CandSet]) -> bool {
        match self {
            Claim::Collapse(_) => sets.windows(2).all(|w| w[0] == w[1]),
            Claim::Containment { .. } => sets[0].is_subset(sets[1]),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Collapse(list) => {
                for (i, t) in list.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" = ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            Claim::Containment { sub, sup, strict } => {
                let op = if *strict { "⊊" } else { "⊆" };
                write!(f, "{sub} {op} {sup}")
            }
        }
    }
}

/// The relations known to hold for one rule: collapse classes and
/// containments.
#[derive(Clone, Debug)]
pub struct KnownRelations {
    rule: VotingRule,
    classes: Vec<Vec<ControlType>>,
    containments: Vec<Claim>,
}

impl KnownRelations {
    pub fn for_rule(rule: VotingRule) -> Self {
        let gray = types(&["DC-RPC-TE-NUW", "DC-RPC-TE-UW", "DC-PC-TE-UW", "DC-PC-TE-NUW"]);
        let blue = types(&["DC-RPC-TP-NUW", "DC-PC-TP-NUW"]);
        let classes = match rule {
            VotingRule::Plurality => vec![gray, blue],
            VotingRule::Veto => vec![gray, blue, types(&["DC-PV-TE-NUW", "DC-PV-TE-UW"])],
            VotingRule::Approval => {
                let mut six = gray;
                six.extend(types(&["DC-RPC-TP-UW", "DC-PC-TP-UW"]));
                vec![
                    types(&["DC-PV-TE-NUW", "DC-PV-TE-UW"]),
                    six,
                    blue,
                    types(&["CC-RPC-TP-UW", "CC-PC-TP-UW"]),
                    types(&["CC-RPC-TP-NUW", "CC-PC-TP-NUW"]),
                    types(&["CC-RPC-TE-UW", "CC-PC-TE-UW"]),
                    types(&["CC-RPC-TE-NUW", "CC-PC-TE-NUW"]),
                ]
            }
        };

        let mut containments = Vec::new();
        let mut add = |sub: &str, sup: &str, strict: bool| {
            containments.push(Claim::Containment {
                sub: ty(sub),
                sup: ty(sup),
                strict,
            })
        };
        // Unique winning implies winning; for destructive goals the
        // implication flips.
        for t in all_types() {
            if t.model() == WinnerModel::Unique && t.goal() == Goal::Constructive {
                add(&t.to_string(), &t.with_model(WinnerModel::NonUnique).to_string(), false);
            }
            if t.model() == WinnerModel::NonUnique && t.goal() == Goal::Destructive {
                add(&t.to_string(), &t.with_model(WinnerModel::Unique).to_string(), false);
            }
        }
        add("DC-RPC-TP-UW", "DC-RPC-TE-NUW", false);
        add("DC-PC-TP-UW", "DC-RPC-TE-NUW", false);
        match rule {
            VotingRule::Plurality => {}
            VotingRule::Veto => {
                for sub in [
                    "DC-PV-TP-UW",
                    "DC-PV-TP-NUW",
                    "DC-RPC-TE-NUW",
                    "DC-RPC-TP-UW",
                    "DC-RPC-TP-NUW",
                    "DC-PC-TP-UW",
                ] {
                    add(sub, "DC-PV-TE-NUW", true);
                }
            }
            VotingRule::Approval => {
                add("DC-DC-UW", "DC-DV-UW", true);
                add("DC-DC-NUW", "DC-DV-NUW", true);
                add("DC-DC-NUW", "DC-DV-UW", true);
                for sup in [
                    "CC-PC-TE-UW",
                    "CC-PC-TE-NUW",
                    "CC-RPC-TE-UW",
                    "CC-RPC-TE-NUW",
                    "CC-PV-TE-UW",
                    "CC-PV-TE-NUW",
                    "CC-PV-TP-UW",
                    "CC-PV-TP-NUW",
                ] {
                    add("CC-PC-TP-UW", sup, true);
                }
                for sup in ["CC-PC-TE-NUW", "CC-RPC-TE-NUW", "CC-PV-TP-NUW"] {
                    add("CC-PC-TP-NUW", sup, true);
                }
                add("DC-PV-TP-UW", "DC-PV-TE-NUW", true);
                add("DC-RPC-TE-NUW", "DC-PV-TP-UW", true);
                add("DC-RPC-TE-NUW", "DC-PV-TE-NUW", true);
            }
        }
        KnownRelations {
            rule,
            classes,
            containments,
        }
    }

    pub fn rule(&self) -> VotingRule {
        self.rule
    }

    /// Collapse classes, each with at least two members.
    pub fn collapse_classes(&self) -> &[Vec<ControlType>] {
        &self.classes
    }

    /// Containments, including the winner-model ones.
    pub fn containments(&self) -> &[Claim] {
        &self.containments
    }

    /// Collapse classes followed by containments.
    pub fn claims(&self) -> Vec<Claim> {
        self.classes
            .iter()
            .cloned()
            .map(Claim::Collapse)
            .chain(self.containments.iter().cloned())
            .collect()
    }

    pub fn is_collapsed(&self, a: ControlType, b: ControlType) -> bool {
        a == b || self.classes.iter().any(|c| c.contains(&a) && c.contains(&b))
    }

    /// Number of compatible pairs inside a collapse class.
    pub fn collapsed_pair_count(&self) -> usize {
        self.classes.iter().map(|c| c.len() * (c.len() - 1) / 2).sum()
    }

    /// Compatible pairs not known to collapse.
    pub fn separated_pair_count(&self) -> usize {
        compatible_pairs().len() - self.collapsed_pair_count()
    }

    /// Whether `f_a ⊆ f_b` follows from the collapses and containments by
    /// transitivity.
    pub fn implies_subset(&self, a: ControlType, b: ControlType) -> bool {
        self.closure()[a.canonical_index()][b.canonical_index()]
    }

    fn closure(&self) -> Vec<Vec<bool>> {
        let n = all_types().len();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for class in &self.classes {
            for a in class {
                for b in class {
                    reach[a.canonical_index()][b.canonical_index()] = true;
                }
            }
        }
        for claim in &self.containments {
            if let Claim::Containment { sub, sup, .. } = claim {
                reach[sub.canonical_index()][sup.canonical_index()] = true;
            }
        }
        for k in 0..n {
            let via = reach[k].clone();
            for row in reach.iter_mut().filter(|row| row[k]) {
                for (cell, &step) in row.iter_mut().zip(&via) {
                    *cell |= step;
                }
            }
        }
        reach
    }

    /// Separated compatible pairs whose containment direction follows from
    /// the encoded claims.
    pub fn derivable_strict_pairs(&self) -> Vec<(ControlType, ControlType)> {
        let reach = self.closure();
        compatible_pairs()
            .into_iter()
            .filter(|&(a, b)| !self.is_collapsed(a, b))
            .filter(|&(a, b)| {
                reach[a.canonical_index()][b.canonical_index()] || reach[b.canonical_index()][a.canonical_index()]
            })
            .collect()
    }
}

/// Checks `claim` on `trials` sampled instances of its class. Returns the
/// first violating instance in trial order.
pub fn check_claim(
    rule: VotingRule,
    claim: &Claim,
    config: &SearchConfig,
    trials: u64,
) -> Result<Option<ReducedInstance>> {
    config.validate()?;
    let class = claim.class();
    let involved = claim.involved();
    let violation = (0..trials).into_par_iter().find_map_first(|i| {
        let mut rng = trial_rng(config.seed, i);
        let inst = random_instance(&mut rng, rule, class, config);
        let sets: Result<Vec<CandSet>> = involved.iter().map(|&t| focus_set(rule, t, &inst)).collect();
        match sets {
            Ok(sets) if claim.holds(&sets) => None,
            Ok(_) => Some(Ok(inst)),
            Err(e) => Some(Err(e)),
        }
    });
    violation.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapse_counts() {
        let counts: Vec<(usize, usize)> = VotingRule::ALL
            .into_iter()
            .map(|r| {
                let k = KnownRelations::for_rule(r);
                (k.collapsed_pair_count(), k.separated_pair_count())
            })
            .collect();
        assert_eq!(counts, vec![(7, 315), (8, 314), (21, 301)]);
    }

    #[test]
    fn approval_class_sizes() {
        let k = KnownRelations::for_rule(VotingRule::Approval);
        let mut sizes: Vec<usize> = k.collapse_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 2, 2, 2, 2, 6]);
    }

    #[test]
    fn claims_are_within_one_class() {
        for rule in VotingRule::ALL {
            for claim in KnownRelations::for_rule(rule).claims() {
                let class = claim.class();
                assert!(claim.involved().iter().all(|t| t.class() == class), "{claim}");
            }
        }
    }

    #[test]
    fn plurality_strict_pairs() {
        // Plurality only has the general and winner-model containments.
        let k = KnownRelations::for_rule(VotingRule::Plurality);
        assert_eq!(k.derivable_strict_pairs().len(), 38);
    }

    #[test]
    fn closure_follows_chains() {
        let k = KnownRelations::for_rule(VotingRule::Approval);
        assert!(k.implies_subset(ty("DC-RPC-TE-NUW"), ty("DC-PV-TE-NUW")));
        assert!(k.implies_subset(ty("DC-PC-TP-UW"), ty("DC-PV-TP-UW")));
        assert!(!k.implies_subset(ty("DC-PV-TE-NUW"), ty("DC-RPC-TE-NUW")));
    }
}
