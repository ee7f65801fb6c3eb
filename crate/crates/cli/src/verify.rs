//! The `verify` suites.

use std::fmt::Write as _;

use elcontrol::corpus::{embedded_corpus, parse_instance, serialize_instance, ElectionFile, WitnessRecord};
use elcontrol::relations::{
    alpha_counterexample, check_claim, classify_all, compare_on_instance, contradictions, immune_types, immunity_check,
    search_alpha_counterexample, witness_profile, Claim, KnownRelations, LabeledInstance, RelationEvidence,
};
use elcontrol::search::{
    find_witness, random_instance, trial_rng, Direction, SearchConfig, SearchOutcome, SearchTarget,
};
use elcontrol::{
    decide, CandSet, CompatibilityClass, ControlType, Election, Error, Goal, ReducedInstance, Result, VotingRule,
};

/// Trial budget for each strictness witness search.
pub const STRICT_SEARCH_TRIALS: u64 = 100_000;

/// A plurality election in which a winner loses once another candidate
/// is removed.
pub const PLURALITY_ALPHA_COUNTEREXAMPLE: &str = "\
system: plurality
candidates: a b c
votes:
a>b>c
a>c>b
b>c>a
b>c>a
c>a>b
";

/// Found by `search_alpha_counterexample` with seed 1 (trial 2).
pub const VETO_ALPHA_COUNTEREXAMPLE: &str = "\
system: veto
candidates: a b c
votes:
a>c>b
b>a>c
b>c>a
c>a>b
a>b>c
b>c>a
c>a>b
";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Collapses,
    Containments,
    Immunity,
    Alpha,
    Corpus,
}

/// One named check of a suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            detail: None,
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            detail: Some(detail.into()),
        }
    }

    fn from_failures(name: impl Into<String>, failures: Vec<String>) -> Self {
        if failures.is_empty() {
            Check::pass(name)
        } else {
            Check::fail(name, failures.join("\n"))
        }
    }
}

/// `PASS <name>` / `FAIL <name>` lines, details indented, then a summary.
pub fn format_checks(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let _ = writeln!(out, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
        if let Some(detail) = &c.detail {
            for line in detail.lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "{passed}/{} checks passed", checks.len());
    out
}

pub fn run_suite(suite: Suite, rule: VotingRule, trials: u64, seed: u64) -> Result<Vec<Check>> {
    if trials == 0 {
        return Err(Error::usage("--trials must be at least 1"));
    }
    let config = SearchConfig::small(seed, trials);
    match suite {
        Suite::Collapses => collapses(rule, &config),
        Suite::Containments => containments(rule, &config),
        Suite::Immunity => immunity(rule, &config),
        Suite::Alpha => alpha(rule, &config),
        Suite::Corpus => corpus(rule),
    }
}

fn render(rule: VotingRule, reduced: &ReducedInstance) -> String {
    ElectionFile::from_reduced(rule, reduced)
        .map(|f| serialize_instance(&f))
        .unwrap_or_else(|e| format!("(unprintable instance: {e})"))
}

fn claim_checks(rule: VotingRule, claims: Vec<Claim>, config: &SearchConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for claim in claims {
        let name = format!("{rule} {claim} ({} trials)", config.max_trials);
        checks.push(match check_claim(rule, &claim, config, config.max_trials)? {
            None => Check::pass(name),
            Some(bad) => Check::fail(name, render(rule, &bad)),
        });
    }
    Ok(checks)
}

fn collapses(rule: VotingRule, config: &SearchConfig) -> Result<Vec<Check>> {
    let known = KnownRelations::for_rule(rule);
    let claims = known.collapse_classes().iter().cloned().map(Claim::Collapse).collect();
    claim_checks(rule, claims, config)
}

fn containments(rule: VotingRule, config: &SearchConfig) -> Result<Vec<Check>> {
    let known = KnownRelations::for_rule(rule);
    let mut checks = claim_checks(rule, known.containments().to_vec(), config)?;
    let strict_config = SearchConfig {
        max_trials: STRICT_SEARCH_TRIALS,
        ..config.clone()
    };
    for claim in known.containments() {
        let &Claim::Containment { sub, sup, strict: true } = claim else {
            continue;
        };
        let target = SearchTarget::new(rule, sub, sup, Direction::BMinusA)?;
        let name = format!("{rule} {sup} - {sub} nonempty somewhere");
        checks.push(match find_witness(&target, &strict_config)? {
            SearchOutcome::Found(found) => Check::pass(format!("{name} (trial {})", found.trial)),
            SearchOutcome::Exhausted { trials } => Check::fail(name, format!("no witness in {trials} trials")),
        });
    }
    Ok(checks)
}

fn corpus_of_class(rule: VotingRule, class: CompatibilityClass) -> Result<Vec<ReducedInstance>> {
    let mut out = Vec::new();
    for record in embedded_corpus(rule) {
        let reduced = record.reduced()?;
        if reduced.class() == class {
            out.push(reduced);
        }
    }
    Ok(out)
}

fn random_instances(rule: VotingRule, class: CompatibilityClass, config: &SearchConfig) -> Vec<ReducedInstance> {
    (0..config.max_trials)
        .map(|i| random_instance(&mut trial_rng(config.seed, i), rule, class, config))
        .collect()
}

fn immunity(rule: VotingRule, config: &SearchConfig) -> Result<Vec<Check>> {
    let types = immune_types(rule);
    if types.is_empty() {
        return Err(Error::usage(format!("no immunities are encoded for {rule}")));
    }
    let mut checks = Vec::new();
    for ty in types {
        let from_corpus = corpus_of_class(rule, ty.class())?;
        let sampled = random_instances(rule, ty.class(), config);
        for (label, instances) in [("corpus", &from_corpus), ("random", &sampled)] {
            let name = format!("{rule} immune to {ty} on {} {label} instances", instances.len());
            checks.push(match immunity_check(rule, ty, instances)? {
                None => Check::pass(name),
                Some((i, focus)) => {
                    let inst = &instances[i];
                    let who = inst.election().candidates()[focus].as_str();
                    Check::fail(name, format!("focus {who} on\n{}", render(rule, inst)))
                }
            });
        }
    }
    Ok(checks)
}

fn alpha_name(unique: bool) -> &'static str {
    if unique {
        "Unique-α"
    } else {
        "α"
    }
}

fn alpha(rule: VotingRule, config: &SearchConfig) -> Result<Vec<Check>> {
    let corpus: Vec<(String, Election)> = embedded_corpus(rule)
        .into_iter()
        .map(|r| (r.id, r.file.election().clone()))
        .collect();
    let mut checks = Vec::new();
    if rule == VotingRule::Approval {
        let sampled: Vec<(String, Election)> = random_instances(rule, CompatibilityClass::Partition, config)
            .into_iter()
            .enumerate()
            .map(|(i, r)| (format!("trial {i}"), r.election().clone()))
            .collect();
        for unique in [false, true] {
            for (label, elections) in [("corpus", &corpus), ("random", &sampled)] {
                let mut failures = Vec::new();
                for (id, e) in elections {
                    if let Some((p, subset)) = alpha_counterexample(rule, e, unique)? {
                        failures.push(format!(
                            "{id}: {} loses in {}",
                            e.candidates()[p].as_str(),
                            e.format_set(subset)
                        ));
                    }
                }
                let name = format!(
                    "{rule} has {} on {} {label} elections",
                    alpha_name(unique),
                    elections.len()
                );
                checks.push(Check::from_failures(name, failures));
            }
        }
        return Ok(checks);
    }

    let stored = match rule {
        VotingRule::Plurality => PLURALITY_ALPHA_COUNTEREXAMPLE,
        _ => VETO_ALPHA_COUNTEREXAMPLE,
    };
    let stored = parse_instance(stored)?;
    let name = format!("stored {rule} election violates α");
    checks.push(match alpha_counterexample(rule, stored.election(), false)? {
        Some((p, subset)) => Check::pass(format!(
            "{name} ({} loses in {})",
            stored.election().candidates()[p].as_str(),
            stored.election().format_set(subset)
        )),
        None => Check::fail(name, "the stored election satisfies α"),
    });
    let violators: Vec<&str> = corpus
        .iter()
        .filter(|(_, e)| matches!(alpha_counterexample(rule, e, false), Ok(Some(_))))
        .map(|(id, _)| id.as_str())
        .collect();
    let name = format!(
        "{} of {} {rule} corpus elections violate α",
        violators.len(),
        corpus.len()
    );
    checks.push(if violators.is_empty() {
        Check::fail(name, "no corpus election violates α")
    } else {
        Check::pass(name)
    });
    let name = format!(
        "search finds a {rule} α counterexample within {} trials",
        config.max_trials
    );
    checks.push(match search_alpha_counterexample(rule, false, config)? {
        Some((trial, _)) => Check::pass(format!("{name} (trial {trial})")),
        None => Check::fail(name, "exhausted"),
    });
    Ok(checks)
}

/// The embedded corpus of `rule`, labeled by id.
pub fn labeled_corpus(records: &[WitnessRecord]) -> Result<Vec<LabeledInstance>> {
    records
        .iter()
        .map(|r| {
            Ok(LabeledInstance {
                id: r.id.clone(),
                instance: r.reduced()?,
            })
        })
        .collect()
}

/// Recomputes the candidates of each stored separation through `decide`.
fn reverify_evidence(rule: VotingRule, corpus: &[LabeledInstance], evidence: &RelationEvidence) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    let (a, b) = (evidence.type_a, evidence.type_b);
    let sides = [(a, b, &evidence.a_minus_b), (b, a, &evidence.b_minus_a)];
    for (inside, outside, separation) in sides {
        let Some(sep) = separation else { continue };
        let item = corpus
            .iter()
            .find(|i| i.id == sep.id)
            .ok_or_else(|| Error::domain(format!("unknown witness id {}", sep.id)))?;
        for c in sep.candidates.iter() {
            let full = item.instance.inflate_index(c)?;
            if !decide(rule, inside, &full)? || decide(rule, outside, &full)? {
                failures.push(format!("{} on {} for {inside} - {outside}", full.focus_name(), sep.id));
            }
        }
    }
    Ok(failures)
}

fn corpus(rule: VotingRule) -> Result<Vec<Check>> {
    let records = embedded_corpus(rule);
    let mut checks = Vec::new();

    let mut failures = Vec::new();
    for r in &records {
        let text = serialize_instance(&r.file);
        match parse_instance(&text) {
            Ok(back) if back == r.file && serialize_instance(&back) == text => {}
            Ok(_) => failures.push(format!("{} does not round-trip", r.id)),
            Err(e) => failures.push(format!("{}: {e}", r.id)),
        }
    }
    checks.push(Check::from_failures(
        format!("{} {rule} records parse and round-trip", records.len()),
        failures,
    ));

    let corpus = labeled_corpus(&records)?;
    let mut failures = Vec::new();
    for item in &corpus {
        if witness_profile(rule, &item.instance)?.is_empty() {
            failures.push(format!("{} separates no pair", item.id));
        }
    }
    checks.push(Check::from_failures(
        format!("every {rule} record separates at least one compatible pair"),
        failures,
    ));

    let evidence = classify_all(rule, &corpus)?;
    let known = KnownRelations::for_rule(rule);
    checks.push(Check::from_failures(
        format!("{rule} corpus evidence agrees with the known relations"),
        contradictions(&known, &evidence),
    ));

    let mut failures = Vec::new();
    for e in &evidence {
        failures.extend(reverify_evidence(rule, &corpus, e)?);
    }
    checks.push(Check::from_failures(
        format!("{rule} separation witnesses re-verify"),
        failures,
    ));

    match rule {
        VotingRule::Plurality => checks.push(plur3_partition_pairs(&corpus)?),
        VotingRule::Veto => {
            let ue: ControlType = "DC-PV-TE-UW".parse()?;
            let ne: ControlType = "DC-PV-TE-NUW".parse()?;
            let mut failures = Vec::new();
            for item in corpus
                .iter()
                .filter(|i| i.instance.class() == CompatibilityClass::Partition)
            {
                if compare_on_instance(rule, ue, ne, &item.instance)? != (CandSet::EMPTY, CandSet::EMPTY) {
                    failures.push(item.id.clone());
                }
            }
            checks.push(Check::from_failures(
                format!("{ue} and {ne} agree on every veto partition record"),
                failures,
            ));
        }
        VotingRule::Approval => {}
    }
    Ok(checks)
}

/// Plur.3 shows both differences for every constructive/destructive pair
/// of partition types.
fn plur3_partition_pairs(corpus: &[LabeledInstance]) -> Result<Check> {
    let plur3 = corpus
        .iter()
        .find(|i| i.id == "Plur.3")
        .ok_or_else(|| Error::domain("Plur.3 missing from the corpus"))?;
    let partition = CompatibilityClass::Partition.types();
    let (cc, dc): (Vec<ControlType>, Vec<ControlType>) =
        partition.into_iter().partition(|t| t.goal() == Goal::Constructive);
    let mut strong = 0;
    let mut failures = Vec::new();
    for &a in &cc {
        for &b in &dc {
            let (ab, ba) = compare_on_instance(VotingRule::Plurality, a, b, &plur3.instance)?;
            if !ab.is_empty() && !ba.is_empty() {
                strong += 1;
            } else {
                failures.push(format!("{a} vs {b}"));
            }
        }
    }
    Ok(Check::from_failures(
        format!(
            "Plur.3 strongly separates {strong} of {} constructive/destructive partition pairs",
            cc.len() * dc.len()
        ),
        failures,
    ))
}
