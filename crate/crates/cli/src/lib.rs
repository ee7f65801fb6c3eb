//! Command-line driver: argument parsing and the text each command prints.
//!
//! [`run`] never touches the process streams, so tests can call it
//! directly; `main` only forwards the result.

pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use elcontrol::corpus::{self, embedded_corpus, load_dir, load_file, serialize_instance, ElectionFile, WitnessRecord};
use elcontrol::relations::{classify_all, compare_on_instance, contradictions, format_report, KnownRelations};
use elcontrol::search::{find_witness, search_report, Direction, SearchConfig, SearchOutcome, SearchTarget};
use elcontrol::{decide_with_witness, focus_set, ControlType, Error, Result, VotingRule};

use verify::{format_checks, labeled_corpus, run_suite, Suite};

/// Yes answer, passing suite, found witness.
pub const EXIT_YES: i32 = 0;
/// No answer, failing suite, exhausted search.
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

const EXIT_HELP: &str = "\
Exit status:
  0  yes / pass / witness found
  1  no / fail / search exhausted
  2  usage error (bad flag, type string, system, focus or size)
  3  file error (unreadable, unwritable or malformed input)";

#[derive(Debug, Parser)]
#[command(name = "elcontrol", version, about = "Exact electoral control decisions and type comparisons", after_help = EXIT_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide one control instance and print a witness on yes.
    Decide {
        #[arg(long)]
        system: VotingRule,
        #[arg(long = "type", value_name = "TYPE")]
        ty: ControlType,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        focus: String,
    },
    /// Print the candidates for which control succeeds.
    Fset {
        #[arg(long)]
        system: VotingRule,
        #[arg(long = "type", value_name = "TYPE")]
        ty: ControlType,
        #[arg(long)]
        input: PathBuf,
    },
    /// Print both focus-set differences of two compatible types.
    Compare {
        #[arg(long)]
        system: VotingRule,
        #[arg(long)]
        type_a: ControlType,
        #[arg(long)]
        type_b: ControlType,
        #[arg(long)]
        input: PathBuf,
    },
    /// Classify all 322 compatible pairs over a corpus.
    ClassifyAll {
        #[arg(long)]
        system: VotingRule,
        /// Directory of .election files; the embedded corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        system: VotingRule,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Randomized search for an instance separating two types.
    Search {
        #[arg(long)]
        system: VotingRule,
        #[arg(long)]
        type_a: ControlType,
        #[arg(long)]
        type_b: ControlType,
        #[arg(long, default_value = "both")]
        direction: Direction,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_trials: u64,
        /// Candidate count range, `MIN..MAX` or `N`.
        #[arg(long, value_parser = range::<usize>, default_value = "1..5")]
        candidates: RangeInclusive<usize>,
        #[arg(long, value_parser = range::<usize>, default_value = "0..8")]
        votes: RangeInclusive<usize>,
        #[arg(long, value_parser = range::<u32>, default_value = "0..3")]
        limit: RangeInclusive<u32>,
        #[arg(long, value_parser = range::<usize>, default_value = "0..2")]
        spoiler_candidates: RangeInclusive<usize>,
        #[arg(long, value_parser = range::<usize>, default_value = "0..4")]
        spoiler_votes: RangeInclusive<usize>,
        /// Print a line for every trial.
        #[arg(long)]
        verbose: bool,
        /// Also write the witness to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the embedded corpus as `<out>/<system>/<id>.election`.
    ExportCorpus {
        #[arg(long)]
        out: PathBuf,
    },
}

/// `MIN..MAX` (inclusive) or a single value.
fn range<T: FromStr + PartialOrd + Copy>(s: &str) -> std::result::Result<RangeInclusive<T>, String> {
    let value = |v: &str| v.trim().parse::<T>().map_err(|_| format!("`{v}` is not a valid bound"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (value(lo)?, value(hi)?),
        None => (value(s)?, value(s)?),
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

/// What a command printed and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn new(code: i32, stdout: String) -> Self {
        Output {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Exit status for a library error.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Io { .. } | Error::Parse { .. } | Error::Domain(_) => EXIT_IO,
        Error::UnknownCandidate(_) | Error::VoteKind { .. } | Error::Usage(_) | Error::TooLarge(_) => EXIT_USAGE,
    }
}

/// Runs one command line; `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output::new(EXIT_YES, text)
            };
        }
    };
    execute(cli.command).unwrap_or_else(|e| Output {
        code: exit_code(&e),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}

fn read_input(path: &Path) -> Result<ElectionFile> {
    load_file(path).map(|record| record.file)
}

fn execute(command: Command) -> Result<Output> {
    match command {
        Command::Decide {
            system,
            ty,
            input,
            focus,
        } => {
            let file = read_input(&input)?;
            let instance = file.reduced()?.inflate(&focus)?;
            Ok(match decide_with_witness(system, ty, &instance)? {
                Some(witness) => {
                    let text = format!("yes\n{}\n", witness.describe(instance.reduced().election()));
                    Output::new(EXIT_YES, text)
                }
                None => Output::new(EXIT_NO, "no\n".to_string()),
            })
        }
        Command::Fset { system, ty, input } => {
            let file = read_input(&input)?;
            let set = focus_set(system, ty, &file.reduced()?)?;
            Ok(Output::new(EXIT_YES, format!("{}\n", file.election().format_set(set))))
        }
        Command::Compare {
            system,
            type_a,
            type_b,
            input,
        } => {
            let file = read_input(&input)?;
            let (ab, ba) = compare_on_instance(system, type_a, type_b, &file.reduced()?)?;
            let e = file.election();
            let text = format!(
                "{type_a} - {type_b}: {}\n{type_b} - {type_a}: {}\n",
                e.format_set(ab),
                e.format_set(ba)
            );
            Ok(Output::new(EXIT_YES, text))
        }
        Command::ClassifyAll { system, corpus } => {
            let records: Vec<WitnessRecord> = match corpus {
                Some(dir) => load_dir(&dir)?.into_iter().filter(|r| r.rule() == system).collect(),
                None => embedded_corpus(system),
            };
            if records.is_empty() {
                return Err(Error::usage(format!("the corpus has no {system} elections")));
            }
            let labeled = labeled_corpus(&records)?;
            let evidence = classify_all(system, &labeled)?;
            let problems = contradictions(&KnownRelations::for_rule(system), &evidence);
            let mut out = Output::new(EXIT_YES, format_report(system, &evidence));
            if !problems.is_empty() {
                out.code = EXIT_NO;
                for p in problems {
                    let _ = writeln!(out.stderr, "contradiction: {p}");
                }
            }
            Ok(out)
        }
        Command::Verify {
            suite,
            system,
            trials,
            seed,
        } => {
            let checks = run_suite(suite, system, trials, seed)?;
            let code = if checks.iter().all(|c| c.passed) {
                EXIT_YES
            } else {
                EXIT_NO
            };
            Ok(Output::new(code, format_checks(&checks)))
        }
        Command::Search {
            system,
            type_a,
            type_b,
            direction,
            seed,
            max_trials,
            candidates,
            votes,
            limit,
            spoiler_candidates,
            spoiler_votes,
            verbose,
            out,
        } => {
            let target = SearchTarget::new(system, type_a, type_b, direction)?;
            let config = SearchConfig {
                seed,
                max_trials,
                candidates,
                votes,
                limit,
                spoiler_candidates,
                spoiler_votes,
            };
            let outcome = find_witness(&target, &config)?;
            let mut text = search_report(&config, &outcome, verbose);
            let SearchOutcome::Found(found) = outcome else {
                return Ok(Output::new(EXIT_NO, text));
            };
            let file = ElectionFile::from_reduced(system, &found.instance)?;
            let e = file.election();
            let _ = writeln!(text, "{type_a} - {type_b}: {}", e.format_set(found.a_minus_b));
            let _ = writeln!(text, "{type_b} - {type_a}: {}", e.format_set(found.b_minus_a));
            let serialized = serialize_instance(&file);
            if let Some(path) = out {
                fs::write(&path, &serialized).map_err(|err| Error::io(&path, err))?;
            }
            text.push_str(&serialized);
            Ok(Output::new(EXIT_YES, text))
        }
        Command::ExportCorpus { out } => {
            let written = corpus::export(&out)?;
            Ok(Output::new(
                EXIT_YES,
                format!("wrote {} files to {}\n", written.len(), out.display()),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(range::<usize>("1..5").unwrap(), 1..=5);
        assert_eq!(range::<u32>("3").unwrap(), 3..=3);
        assert!(range::<usize>("5..1").is_err());
        assert!(range::<usize>("a..2").is_err());
    }

    #[test]
    fn unknown_flag_is_usage() {
        let out = run(["elcontrol", "fset", "--bogus"]);
        assert_eq!(out.code, EXIT_USAGE);
        let out = run(["elcontrol", "verify", "--suite", "corpus", "--system", "borda"]);
        assert_eq!(out.code, EXIT_USAGE);
    }

    #[test]
    fn help_mentions_exit_codes() {
        let out = run(["elcontrol", "--help"]);
        assert_eq!(out.code, EXIT_YES);
        assert!(out.stdout.contains("usage error"));
    }
}
