//! The `octkit` command-line tool.
//!
//! Exit codes: 0 the condition holds (or no counterexample within the
//! bound), 1 it fails and a witness is printed, 2 input error, 3 internal
//! invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use octkit::checker::classify_witness;
use octkit::random::mutate;
use octkit::{
    check_jo_bounded, check_oct, run_decentralized, synth_observers, Branch, Error, Problem,
    Verdict,
};

pub mod compare;
pub mod report;

use compare::{compare, CompareOptions};
use report::*;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "octkit",
    version,
    about = "Check the \"at least one can tell\" observability condition"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide OCT; print a witness when it fails.
    CheckOct { file: PathBuf },
    /// Search for a joint-observability counterexample up to a length bound.
    CheckJo {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Synthesize one Y/N/U observer per agent and write them to a directory.
    Synth {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one agent's observer on a local observation.
    Observe {
        file: PathBuf,
        /// Agent name or 1-based index.
        #[arg(long)]
        agent: String,
        /// Observed letters; "" is the empty observation.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
    },
    /// Run all observers on a global word of the plant.
    Run {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Check a candidate OCT counterexample (ρ, ρ₁, …, ρₙ).
    ValidateWitness {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
        /// One per agent, in declaration order.
        #[arg(long = "agent-word", allow_hyphen_values = true)]
        agent_words: Vec<String>,
        /// Require this branch (GOOD_CONFUSED or BAD_CONFUSED).
        #[arg(long)]
        branch: Option<Branch>,
    },
    /// Compare the checker against the brute-force oracle.
    OracleCompare {
        file: PathBuf,
        /// Number of seeded random mutations of the instance to compare as well.
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Longest word compared for cantell and observer verdicts.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// Limit on words the oracle may enumerate per query.
        #[arg(long, default_value_t = octkit::oracle::DEFAULT_CAP)]
        oracle_cap: usize,
    },
}

/// A finished command: exit code, report, and lines for stderr.
struct Outcome {
    code: i32,
    json: serde_json::Value,
    human: String,
    warnings: Vec<String>,
}

impl Outcome {
    fn new(code: i32, report: &impl Report) -> Self {
        Outcome {
            code,
            json: serde_json::to_value(report).expect("reports serialize"),
            human: report.human(),
            warnings: Vec::new(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_HOLDS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let _ = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).expect("JSON value prints")
                )
            } else {
                out.write_all(outcome.human.as_bytes())
            };
            outcome.code
        }
        Err(CliError::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_INPUT
            }
        }
        Err(CliError::Io(path, e)) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            EXIT_INPUT
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn load(path: &Path) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    Ok(Problem::parse(&text)?)
}

fn observer_file_name(agent: &str) -> String {
    let safe: String = agent
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    format!("observer_{safe}.txt")
}

fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::CheckOct { file } => {
            let p = load(file)?;
            let result = check_oct(&p)?;
            let g = p.alphabet();
            let report = OctReport {
                holds: result.holds(),
                a1_states: result.a1_states,
                a2_states: result.a2_states,
                witness: result.witness.as_ref().map(|w| WitnessReport {
                    branch: w.branch.to_string(),
                    failed_inclusion: w.branch.failed_inclusion().to_string(),
                    rho: g.format_word(&w.rho),
                    per_agent: p
                        .arch()
                        .agents()
                        .iter()
                        .zip(&w.per_agent)
                        .map(|(a, word)| AgentWord {
                            agent: a.name().to_string(),
                            word: g.format_word(word),
                        })
                        .collect(),
                }),
            };
            let code = if result.holds() {
                EXIT_HOLDS
            } else {
                EXIT_FAILS
            };
            Ok(Outcome::new(code, &report))
        }

        Command::CheckJo { file, max_len } => {
            let p = load(file)?;
            let result = check_jo_bounded(&p, *max_len)?;
            let g = p.alphabet();
            let report = JoReport {
                max_len: *max_len,
                counterexample: result
                    .counterexample
                    .as_ref()
                    .map(|(good, bad)| PairReport {
                        good: g.format_word(good),
                        bad: g.format_word(bad),
                    }),
            };
            let code = if report.counterexample.is_some() {
                EXIT_FAILS
            } else {
                EXIT_HOLDS
            };
            Ok(Outcome::new(code, &report))
        }

        Command::Synth { file, out } => {
            let p = load(file)?;
            let oct_holds = check_oct(&p)?.holds();
            let observers = synth_observers(&p)?;
            std::fs::create_dir_all(out).map_err(|e| CliError::Io(out.clone(), e))?;
            let mut summaries = Vec::new();
            for (agent, o) in p.arch().agents().iter().zip(&observers) {
                let path = out.join(observer_file_name(agent.name()));
                std::fs::write(&path, o.to_text(agent.name()))
                    .map_err(|e| CliError::Io(path.clone(), e))?;
                let count = |v| o.labels().iter().filter(|&&l| l == v).count();
                summaries.push(ObserverSummary {
                    agent: agent.name().to_string(),
                    states: o.machine().state_count(),
                    initial_label: o.label(o.machine().initial()).to_string(),
                    labels: Histogram {
                        y: count(Verdict::Y),
                        n: count(Verdict::N),
                        u: count(Verdict::U),
                    },
                    file: path.display().to_string(),
                });
            }
            let mut outcome = Outcome::new(
                EXIT_HOLDS,
                &SynthReport {
                    oct_holds,
                    observers: summaries,
                },
            );
            if !oct_holds {
                outcome
                    .warnings
                    .push("OCT fails: the observers are sound but not complete".into());
            }
            Ok(outcome)
        }

        Command::Observe { file, agent, input } => {
            let p = load(file)?;
            let i = p.arch().find_agent(agent)?;
            let a = p.arch().agent(i)?;
            let sigma = a.alphabet().parse_word(input)?;
            let observer = octkit::synth_observer(&p, i)?;
            let report = ObserveReport {
                agent: a.name().to_string(),
                input: a.alphabet().format_word(&sigma),
                verdict: observer.observe(&sigma)?.to_string(),
            };
            Ok(Outcome::new(EXIT_HOLDS, &report))
        }

        Command::Run { file, word } => {
            let p = load(file)?;
            let rho = p.alphabet().parse_word(word)?;
            let observers = synth_observers(&p)?;
            let result = run_decentralized(&p, &observers, &rho)?;
            let report = RunReport {
                word: p.alphabet().format_word(&rho),
                per_agent: p
                    .arch()
                    .agents()
                    .iter()
                    .zip(&result.per_agent)
                    .map(|(a, v)| AgentVerdict {
                        agent: a.name().to_string(),
                        verdict: v.to_string(),
                    })
                    .collect(),
                overall: result.overall.to_string(),
            };
            Ok(Outcome::new(EXIT_HOLDS, &report))
        }

        Command::ValidateWitness {
            file,
            rho,
            agent_words,
            branch,
        } => {
            let p = load(file)?;
            if agent_words.len() != p.agent_count() {
                return Err(CliError::Usage(format!(
                    "expected {} --agent-word values (one per agent), got {}",
                    p.agent_count(),
                    agent_words.len()
                )));
            }
            let g = p.alphabet();
            let rho = g.parse_word(rho)?;
            let per_agent = agent_words
                .iter()
                .map(|w| g.parse_word(w))
                .collect::<octkit::Result<Vec<_>>>()?;
            let found = classify_witness(&p, &rho, &per_agent);
            let report = match (found, branch) {
                (Some(b), Some(want)) if b != *want => WitnessCheckReport {
                    valid: false,
                    branch: Some(b.to_string()),
                    reason: Some(format!("valid only as {b}, not as {want}")),
                },
                (Some(b), _) => WitnessCheckReport {
                    valid: true,
                    branch: Some(b.to_string()),
                    reason: None,
                },
                (None, _) => WitnessCheckReport {
                    valid: false,
                    branch: None,
                    reason: Some(
                        "no branch fits: check the classes of the words and their projections"
                            .into(),
                    ),
                },
            };
            let code = if report.valid { EXIT_HOLDS } else { EXIT_FAILS };
            Ok(Outcome::new(code, &report))
        }

        Command::OracleCompare {
            file,
            trials,
            seed,
            max_len,
            oracle_cap,
        } => {
            let base = load(file)?;
            let opts = CompareOptions {
                max_len: *max_len,
                oracle_cap: *oracle_cap,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut instances = vec![("input".to_string(), base.clone())];
            for t in 1..=*trials {
                instances.push((format!("mutation {t}"), mutate(&base, &mut rng)));
            }
            let mut rows = Vec::new();
            for (name, p) in &instances {
                let c = compare(p, opts)?;
                rows.push(InstanceComparison {
                    instance: name.clone(),
                    oct_holds: c.oct_holds,
                    cantell_checked: c.cantell_checked,
                    verdicts_checked: c.verdicts_checked,
                    disagreements: c.disagreements,
                });
            }
            let agree = rows.iter().all(|r| r.disagreements.is_empty());
            let report = CompareReport {
                agree,
                seed: *seed,
                trials: *trials,
                max_len: *max_len,
                instances: rows,
            };
            Ok(Outcome::new(
                if agree { EXIT_HOLDS } else { EXIT_FAILS },
                &report,
            ))
        }
    }
}
