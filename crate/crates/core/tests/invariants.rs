mod common;

use common::{any_class, any_rule};
use elcontrol::search::{random_instance, trial_rng, SearchConfig};
use elcontrol::{
    decide, focus_set, focus_sets, two_stage_eval, Action, ApprovalVote, CandSet, CompatibilityClass, Election, Goal,
    LinearVote, Partition, Profile, ReducedInstance, TieRule, VotingRule, WinnerModel,
};
use proptest::prelude::*;

fn config() -> SearchConfig {
    SearchConfig::small(0, 1)
}

fn instance(seed: u64, rule: VotingRule, class: CompatibilityClass) -> ReducedInstance {
    random_instance(&mut trial_rng(seed, 0), rule, class, &config())
}

fn remap(profile: &Profile, perm: &[usize]) -> Profile {
    let n = perm.len();
    match profile {
        Profile::Linear(votes) => Profile::Linear(
            votes
                .iter()
                .map(|v| LinearVote::new(v.ranking().map(|c| perm[c]).collect(), n).unwrap())
                .collect(),
        ),
        Profile::Approval(votes) => Profile::Approval(
            votes
                .iter()
                .map(|v| ApprovalVote::new(v.approved().iter().map(|c| perm[c]).collect(), n).unwrap())
                .collect(),
        ),
    }
}

/// Moves old candidate `c` to position `perm[c]`, votes included.
fn relabel(inst: &ReducedInstance, perm: &[usize]) -> ReducedInstance {
    let e = inst.election();
    let mut names = e.candidates().to_vec();
    for (old, &new) in perm.iter().enumerate() {
        names[new] = e.candidates()[old].clone();
    }
    let election = Election::new(names, remap(e.profile(), perm)).unwrap();
    let k = inst.limit().unwrap_or(0);
    match inst.class() {
        CompatibilityClass::Partition => ReducedInstance::partition(election),
        CompatibilityClass::Delete => ReducedInstance::delete(election, k),
        CompatibilityClass::AddVoters => {
            ReducedInstance::add_voters(election, remap(inst.spoiler_votes().unwrap(), perm), k).unwrap()
        }
        other => unreachable!("{other} has spoiler candidates"),
    }
}

fn reversed(profile: &Profile) -> Profile {
    profile.select((0..profile.len()).rev())
}

fn named(inst: &ReducedInstance, set: CandSet) -> Vec<String> {
    let mut names: Vec<String> = inst.election().names(set).into_iter().map(String::from).collect();
    names.sort();
    names
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn renaming_candidates(
        seed in any::<u64>(),
        rule in any_rule(),
        class in prop::sample::select(vec![
            CompatibilityClass::Partition,
            CompatibilityClass::Delete,
            CompatibilityClass::AddVoters,
        ]),
        shuffle in any::<u64>(),
    ) {
        let inst = instance(seed, rule, class);
        let n = inst.election().num_candidates();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left((shuffle as usize) % n.max(1));
        if shuffle & 1 == 1 {
            perm.reverse();
        }
        let moved = relabel(&inst, &perm);
        for ty in class.types() {
            let before = focus_set(rule, ty, &inst).unwrap();
            let after = focus_set(rule, ty, &moved).unwrap();
            prop_assert_eq!(named(&inst, before), named(&moved, after), "{}", ty);
        }
    }

    #[test]
    fn vote_order_is_irrelevant(seed in any::<u64>(), rule in any_rule(), class in any_class()) {
        let inst = instance(seed, rule, class);
        let e = inst.election();
        let flipped = Election::new(e.candidates().to_vec(), reversed(e.profile())).unwrap();
        let k = inst.limit().unwrap_or(0);
        let other = match class {
            CompatibilityClass::Partition => ReducedInstance::partition(flipped),
            CompatibilityClass::Delete => ReducedInstance::delete(flipped, k),
            CompatibilityClass::AddCandidates => ReducedInstance::add_candidates(flipped, inst.spoilers(), k).unwrap(),
            CompatibilityClass::UnlimitedAddCandidates => {
                ReducedInstance::unlimited_add_candidates(flipped, inst.spoilers()).unwrap()
            }
            CompatibilityClass::AddVoters => {
                ReducedInstance::add_voters(flipped, reversed(inst.spoiler_votes().unwrap()), k).unwrap()
            }
        };
        prop_assert_eq!(focus_sets(rule, &inst).unwrap(), focus_sets(rule, &other).unwrap());
    }

    #[test]
    fn unique_winning_is_harder(seed in any::<u64>(), rule in any_rule(), class in any_class()) {
        let inst = instance(seed, rule, class);
        for ty in class.types().into_iter().filter(|t| t.model() == WinnerModel::Unique) {
            let uw = focus_set(rule, ty, &inst).unwrap();
            let nuw = focus_set(rule, ty.with_model(WinnerModel::NonUnique), &inst).unwrap();
            match ty.goal() {
                Goal::Constructive => prop_assert!(uw.is_subset(nuw), "{}", ty),
                Goal::Destructive => prop_assert!(nuw.is_subset(uw), "{}", ty),
            }
        }
    }

    #[test]
    fn larger_limit_never_hurts(
        seed in any::<u64>(),
        rule in any_rule(),
        class in prop::sample::select(vec![
            CompatibilityClass::AddCandidates,
            CompatibilityClass::Delete,
            CompatibilityClass::AddVoters,
        ]),
        k in 0u32..4,
    ) {
        let inst = instance(seed, rule, class);
        let (small, large) = (inst.with_limit(k), inst.with_limit(k + 1));
        for ty in class.types() {
            let a = focus_set(rule, ty, &small).unwrap();
            let b = focus_set(rule, ty, &large).unwrap();
            prop_assert!(a.is_subset(b), "{} k={}", ty, k);
        }
    }

    #[test]
    fn symmetric_partitions(seed in any::<u64>(), rule in any_rule(), pattern in any::<u32>()) {
        let inst = instance(seed, rule, CompatibilityClass::Partition);
        let e = inst.election();
        let votes = e.profile().len();
        let first: Vec<usize> = (0..votes).filter(|i| pattern >> i & 1 == 1).collect();
        let rest: Vec<usize> = (0..votes).filter(|i| pattern >> i & 1 == 0).collect();
        let c1 = e.all().select(pattern);
        let c2 = e.all().difference(c1);
        for tie in [TieRule::TiesEliminate, TieRule::TiesPromote] {
            let pv = |first: Vec<usize>| two_stage_eval(rule, Action::PartitionVoters, tie, e, &Partition::Voters { first }).unwrap();
            prop_assert_eq!(pv(first.clone()), pv(rest.clone()));
            let rpc = |first: CandSet| {
                two_stage_eval(rule, Action::RunoffPartitionCandidates, tie, e, &Partition::Candidates { first }).unwrap()
            };
            prop_assert_eq!(rpc(c1), rpc(c2));
        }
    }

    #[test]
    fn batch_matches_single_decisions(seed in any::<u64>(), rule in any_rule(), class in any_class()) {
        let inst = instance(seed, rule, class);
        for (ty, set) in focus_sets(rule, &inst).unwrap() {
            for c in inst.base().iter() {
                let yes = decide(rule, ty, &inst.inflate_index(c).unwrap()).unwrap();
                prop_assert_eq!(yes, set.contains(c), "{}", ty);
            }
        }
    }

    #[test]
    fn masking_composes(seed in any::<u64>(), rule in any_rule(), outer in any::<u32>(), inner in any::<u32>()) {
        let inst = instance(seed, rule, CompatibilityClass::Partition);
        let profile = inst.election().profile();
        let a = inst.election().all().select(outer);
        let b = a.select(inner);
        let b_within_a: CandSet = a.iter().enumerate().filter(|&(_, c)| b.contains(c)).map(|(i, _)| i).collect();
        prop_assert_eq!(profile.mask(a).mask(b_within_a), profile.mask(b));
    }
}
