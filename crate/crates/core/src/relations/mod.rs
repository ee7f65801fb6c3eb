//! Comparing control types on concrete instances.
//!
//! Classification over a finite corpus yields evidence, not proof: a pair
//! with no difference on the corpus is only "collapse-consistent".

mod known;
mod properties;

use std::fmt;

use rayon::prelude::*;

use crate::candset::CandSet;
use crate::control::{compatible_pairs, focus_set, focus_sets, ControlType, ReducedInstance};
use crate::elections::VotingRule;
use crate::error::{Error, Result};

pub use known::{check_claim, Claim, KnownRelations};
pub use properties::{
    alpha_counterexample, immune_types, immunity_check, property_alpha, search_alpha_counterexample,
    MAX_ALPHA_CANDIDATES,
};

/// `(f_A − f_B, f_B − f_A)` on one reduced instance.
pub fn compare_on_instance(
    rule: VotingRule,
    type_a: ControlType,
    type_b: ControlType,
    reduced: &ReducedInstance,
) -> Result<(CandSet, CandSet)> {
    check_compatible(type_a, type_b)?;
    let fa = focus_set(rule, type_a, reduced)?;
    let fb = focus_set(rule, type_b, reduced)?;
    Ok((fa.difference(fb), fb.difference(fa)))
}

fn check_compatible(a: ControlType, b: ControlType) -> Result<()> {
    if a.class() == b.class() {
        Ok(())
    } else {
        Err(Error::usage(format!("{a} and {b} are not compatible")))
    }
}

/// A reduced instance with a name for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledInstance {
    pub id: String,
    pub instance: ReducedInstance,
}

/// Strongest statement the examined instances support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationVerdict {
    CollapseConsistent,
    /// Only `f_B − f_A` was ever nonempty.
    StrictSubsetEvidence,
    /// Only `f_A − f_B` was ever nonempty.
    StrictSupersetEvidence,
    /// Both differences occur, on different instances.
    IncomparableEvidence,
    /// Both differences occur on one instance.
    StronglyIncomparableEvidence,
}

impl RelationVerdict {
    pub fn name(self) -> &'static str {
        match self {
            RelationVerdict::CollapseConsistent => "collapse-consistent",
            RelationVerdict::StrictSubsetEvidence => "strict-subset",
            RelationVerdict::StrictSupersetEvidence => "strict-superset",
            RelationVerdict::IncomparableEvidence => "incomparable",
            RelationVerdict::StronglyIncomparableEvidence => "strongly-incomparable",
        }
    }
}

impl fmt::Display for RelationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A candidate set difference observed on a named instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub id: String,
    pub candidates: CandSet,
}

/// First witnesses, in corpus order, for each kind of difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationEvidence {
    pub type_a: ControlType,
    pub type_b: ControlType,
    pub a_minus_b: Option<Separation>,
    pub b_minus_a: Option<Separation>,
    /// An instance showing both differences.
    pub strong: Option<String>,
}

impl RelationEvidence {
    fn new(type_a: ControlType, type_b: ControlType) -> Self {
        RelationEvidence {
            type_a,
            type_b,
            a_minus_b: None,
            b_minus_a: None,
            strong: None,
        }
    }

    fn record(&mut self, id: &str, ab: CandSet, ba: CandSet) {
        if !ab.is_empty() && self.a_minus_b.is_none() {
            self.a_minus_b = Some(Separation {
                id: id.to_string(),
                candidates: ab,
            });
        }
        if !ba.is_empty() && self.b_minus_a.is_none() {
            self.b_minus_a = Some(Separation {
                id: id.to_string(),
                candidates: ba,
            });
        }
        if !ab.is_empty() && !ba.is_empty() && self.strong.is_none() {
            self.strong = Some(id.to_string());
        }
    }

    pub fn verdict(&self) -> RelationVerdict {
        match (&self.a_minus_b, &self.b_minus_a, &self.strong) {
            (_, _, Some(_)) => RelationVerdict::StronglyIncomparableEvidence,
            (Some(_), Some(_), None) => RelationVerdict::IncomparableEvidence,
            (Some(_), None, None) => RelationVerdict::StrictSupersetEvidence,
            (None, Some(_), None) => RelationVerdict::StrictSubsetEvidence,
            (None, None, None) => RelationVerdict::CollapseConsistent,
        }
    }
}

/// Aggregates [`compare_on_instance`] over the instances of the pair's
/// class; instances of other classes are skipped.
pub fn classify_pair(
    rule: VotingRule,
    type_a: ControlType,
    type_b: ControlType,
    corpus: &[LabeledInstance],
) -> Result<(RelationVerdict, RelationEvidence)> {
    check_compatible(type_a, type_b)?;
    let mut evidence = RelationEvidence::new(type_a, type_b);
    for item in corpus.iter().filter(|i| i.instance.class() == type_a.class()) {
        let (ab, ba) = compare_on_instance(rule, type_a, type_b, &item.instance)?;
        evidence.record(&item.id, ab, ba);
    }
    Ok((evidence.verdict(), evidence))
}

/// Every focus set of every instance, in corpus order.
fn all_focus_sets(rule: VotingRule, corpus: &[LabeledInstance]) -> Result<Vec<Vec<(ControlType, CandSet)>>> {
    corpus.par_iter().map(|item| focus_sets(rule, &item.instance)).collect()
}

/// Evidence for all 322 compatible pairs, in canonical order.
pub fn classify_all(rule: VotingRule, corpus: &[LabeledInstance]) -> Result<Vec<RelationEvidence>> {
    let sets = all_focus_sets(rule, corpus)?;
    let lookup = |i: usize, t: ControlType| {
        sets[i]
            .iter()
            .find(|(u, _)| *u == t)
            .map(|&(_, s)| s)
            .expect("focus sets cover the instance's class")
    };
    Ok(compatible_pairs()
        .into_iter()
        .map(|(a, b)| {
            let mut evidence = RelationEvidence::new(a, b);
            for (i, item) in corpus.iter().enumerate() {
                if item.instance.class() != a.class() {
                    continue;
                }
                let (fa, fb) = (lookup(i, a), lookup(i, b));
                evidence.record(&item.id, fa.difference(fb), fb.difference(fa));
            }
            evidence
        })
        .collect())
}

/// One line per pair: `<rule> <typeA> <typeB> <verdict> [witness-ids]`.
/// Witness ids are listed as `a-b=<id>`, `b-a=<id>` and `both=<id>`.
pub fn format_report(rule: VotingRule, evidence: &[RelationEvidence]) -> String {
    let mut out = String::new();
    for e in evidence {
        out.push_str(&format!("{} {} {} {}", rule.name(), e.type_a, e.type_b, e.verdict()));
        if let Some(s) = &e.a_minus_b {
            out.push_str(&format!(" a-b={}", s.id));
        }
        if let Some(s) = &e.b_minus_a {
            out.push_str(&format!(" b-a={}", s.id));
        }
        if let Some(id) = &e.strong {
            out.push_str(&format!(" both={id}"));
        }
        out.push('\n');
    }
    out
}

/// A pair and direction that one instance separates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSeparation {
    pub type_a: ControlType,
    pub type_b: ControlType,
    pub a_minus_b: CandSet,
    pub b_minus_a: CandSet,
}

/// All compatible pairs that `reduced` separates in at least one direction.
pub fn witness_profile(rule: VotingRule, reduced: &ReducedInstance) -> Result<Vec<PairSeparation>> {
    let sets = focus_sets(rule, reduced)?;
    let mut out = Vec::new();
    for (i, &(a, fa)) in sets.iter().enumerate() {
        for &(b, fb) in &sets[i + 1..] {
            let (ab, ba) = (fa.difference(fb), fb.difference(fa));
            if !ab.is_empty() || !ba.is_empty() {
                out.push(PairSeparation {
                    type_a: a,
                    type_b: b,
                    a_minus_b: ab,
                    b_minus_a: ba,
                });
            }
        }
    }
    Ok(out)
}

/// Every pair each instance separates, one line per instance and pair:
/// `<id> <typeA> <typeB> <f_A − f_B> <f_B − f_A>`.
pub fn witness_profile_report(rule: VotingRule, corpus: &[LabeledInstance]) -> Result<String> {
    let profiles: Vec<Vec<PairSeparation>> = corpus
        .par_iter()
        .map(|item| witness_profile(rule, &item.instance))
        .collect::<Result<_>>()?;
    let mut out = String::new();
    for (item, pairs) in corpus.iter().zip(profiles) {
        let e = item.instance.election();
        for p in pairs {
            out.push_str(&format!(
                "{} {} {} {} {}\n",
                item.id,
                p.type_a,
                p.type_b,
                e.format_set(p.a_minus_b),
                e.format_set(p.b_minus_a)
            ));
        }
    }
    Ok(out)
}

/// Evidence that contradicts the known relations: a separated collapse
/// pair, or an element outside an asserted containment.
pub fn contradictions(known: &KnownRelations, evidence: &[RelationEvidence]) -> Vec<String> {
    let mut out = Vec::new();
    for e in evidence {
        let (a, b) = (e.type_a, e.type_b);
        if known.is_collapsed(a, b) && e.verdict() != RelationVerdict::CollapseConsistent {
            out.push(format!("{a} and {b} collapse but differ on the corpus"));
        }
        if let Some(s) = &e.a_minus_b {
            if known.implies_subset(a, b) {
                out.push(format!("{a} ⊆ {b} fails on {}", s.id));
            }
        }
        if let Some(s) = &e.b_minus_a {
            if known.implies_subset(b, a) {
                out.push(format!("{b} ⊆ {a} fails on {}", s.id));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::linear;

    fn ty(s: &str) -> ControlType {
        s.parse().unwrap()
    }

    #[test]
    fn single_vote_incomparability() {
        let r = ReducedInstance::partition(linear("a b", "a>b"));
        let (ab, ba) = compare_on_instance(VotingRule::Plurality, ty("CC-PC-TE-NUW"), ty("DC-PC-TE-NUW"), &r).unwrap();
        assert_eq!((ab, ba), (CandSet::singleton(0), CandSet::singleton(1)));
        let corpus = [LabeledInstance {
            id: "x".into(),
            instance: r,
        }];
        let (verdict, ev) =
            classify_pair(VotingRule::Plurality, ty("CC-PC-TE-NUW"), ty("DC-PC-TE-NUW"), &corpus).unwrap();
        assert_eq!(verdict, RelationVerdict::StronglyIncomparableEvidence);
        assert_eq!(ev.strong.as_deref(), Some("x"));
    }

    #[test]
    fn self_comparison_is_empty() {
        let r = ReducedInstance::delete(linear("a b c", "a>b>c, b>c>a"), 1);
        for t in crate::control::CompatibilityClass::Delete.types() {
            let d = compare_on_instance(VotingRule::Veto, t, t, &r).unwrap();
            assert_eq!(d, (CandSet::EMPTY, CandSet::EMPTY));
        }
    }

    #[test]
    fn incompatible_pair_rejected() {
        let r = ReducedInstance::partition(linear("a b", "a>b"));
        assert!(compare_on_instance(VotingRule::Plurality, ty("CC-PV-TE-UW"), ty("CC-DV-UW"), &r).is_err());
    }

    #[test]
    fn classify_all_agrees_with_classify_pair() {
        let corpus: Vec<LabeledInstance> = [
            ReducedInstance::partition(linear("a b", "a>b")),
            ReducedInstance::partition(linear("a b c", "a>b>c, b>c>a, c>a>b, a>c>b")),
            ReducedInstance::delete(linear("a b c", "a>b>c, b>a>c"), 1),
        ]
        .into_iter()
        .enumerate()
        .map(|(i, instance)| LabeledInstance {
            id: format!("e{i}"),
            instance,
        })
        .collect();
        let all = classify_all(VotingRule::Plurality, &corpus).unwrap();
        assert_eq!(all.len(), 322);
        for e in all.iter().step_by(7) {
            let (verdict, single) = classify_pair(VotingRule::Plurality, e.type_a, e.type_b, &corpus).unwrap();
            assert_eq!(&single, e);
            assert_eq!(verdict, e.verdict());
        }
    }

    #[test]
    fn verdicts_from_evidence() {
        let mut e = RelationEvidence::new(ty("DC-DC-NUW"), ty("DC-DV-NUW"));
        assert_eq!(e.verdict(), RelationVerdict::CollapseConsistent);
        e.record("x", CandSet::EMPTY, CandSet::singleton(0));
        assert_eq!(e.verdict(), RelationVerdict::StrictSubsetEvidence);
        e.record("y", CandSet::singleton(1), CandSet::EMPTY);
        assert_eq!(e.verdict(), RelationVerdict::IncomparableEvidence);
        e.record("z", CandSet::singleton(1), CandSet::singleton(0));
        assert_eq!(e.verdict(), RelationVerdict::StronglyIncomparableEvidence);
        assert_eq!(e.a_minus_b.unwrap().id, "y");
    }
}
