//! The engine against the naive reference on random small instances.

mod common;

use common::{any_class, any_rule, naive_focus_set, naive_winners, raw_votes};
use elcontrol::search::{random_instance, trial_rng, SearchConfig};
use elcontrol::{decide, focus_set, CompatibilityClass, VotingRule};
use proptest::prelude::*;

fn config() -> SearchConfig {
    let mut cfg = SearchConfig::small(0, 1);
    cfg.candidates = 1..=4;
    cfg.votes = 0..=6;
    cfg
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn focus_sets_match_reference(seed in any::<u64>(), rule in any_rule(), class in any_class()) {
        let inst = random_instance(&mut trial_rng(seed, 0), rule, class, &config());
        for ty in class.types() {
            let fast = focus_set(rule, ty, &inst).unwrap();
            prop_assert_eq!(fast, naive_focus_set(rule, ty, &inst), "{}", ty);
        }
    }

    #[test]
    fn winners_match_recount(seed in any::<u64>(), rule in any_rule(), pattern in any::<u32>()) {
        let inst = random_instance(&mut trial_rng(seed, 1), rule, CompatibilityClass::Partition, &config());
        let e = inst.election();
        let among = e.all().select(pattern);
        let votes = raw_votes(e.profile());
        let refs: Vec<_> = votes.iter().collect();
        prop_assert_eq!(e.winners_among(rule, among).unwrap(), naive_winners(rule, &refs, among));
    }
}

#[test]
fn larger_partition_instances() {
    let mut cfg = SearchConfig::small(5, 1);
    cfg.candidates = 4..=5;
    cfg.votes = 7..=9;
    for trial in 0..6 {
        for rule in VotingRule::ALL {
            let inst = random_instance(&mut trial_rng(5, trial), rule, CompatibilityClass::Partition, &cfg);
            for ty in CompatibilityClass::Partition.types() {
                let fast = focus_set(rule, ty, &inst).unwrap();
                assert_eq!(
                    fast,
                    common::naive_focus_set(rule, ty, &inst),
                    "{rule} {ty} trial {trial}"
                );
            }
        }
    }
}

#[test]
fn decide_matches_reference_on_corpus() {
    for record in elcontrol::corpus::load_embedded_corpus() {
        let inst = record.reduced().unwrap();
        if inst.election().profile().len() > 10 {
            continue;
        }
        let rule = record.rule();
        for ty in inst.class().types() {
            for c in inst.base().iter() {
                let full = inst.inflate_index(c).unwrap();
                assert_eq!(
                    decide(rule, ty, &full).unwrap(),
                    common::naive_decide(rule, ty, &full),
                    "{} {ty} focus {}",
                    record.id,
                    full.focus_name()
                );
            }
        }
    }
}
