//! Command reports. Every report serializes to JSON for `--json` and renders
//! the same fields as `key: value` text otherwise.

use std::fmt::Write as _;

use serde::Serialize;

pub trait Report: Serialize {
    fn human(&self) -> String;
}

/// Words are shown as ε when empty in text output; JSON keeps "".
fn shown(word: &str) -> &str {
    if word.is_empty() {
        "ε"
    } else {
        word
    }
}

#[derive(Debug, Serialize)]
pub struct AgentWord {
    pub agent: String,
    pub word: String,
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub branch: String,
    pub failed_inclusion: String,
    pub rho: String,
    pub per_agent: Vec<AgentWord>,
}

#[derive(Debug, Serialize)]
pub struct OctReport {
    pub holds: bool,
    pub a1_states: usize,
    pub a2_states: usize,
    pub witness: Option<WitnessReport>,
}

impl Report for OctReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}",
            if self.holds { "OCT holds" } else { "OCT fails" }
        );
        let _ = writeln!(out, "holds: {}", self.holds);
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness:");
            let _ = writeln!(out, "  branch: {}", w.branch);
            let _ = writeln!(out, "  failed_inclusion: {}", w.failed_inclusion);
            let _ = writeln!(out, "  rho: {}", shown(&w.rho));
            let _ = writeln!(out, "  per_agent:");
            for aw in &w.per_agent {
                let _ = writeln!(out, "    {}: {}", aw.agent, shown(&aw.word));
            }
        }
        let _ = writeln!(out, "a1_states: {}", self.a1_states);
        let _ = writeln!(out, "a2_states: {}", self.a2_states);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct PairReport {
    pub good: String,
    pub bad: String,
}

#[derive(Debug, Serialize)]
pub struct JoReport {
    pub max_len: usize,
    pub counterexample: Option<PairReport>,
}

impl Report for JoReport {
    fn human(&self) -> String {
        let mut out = String::new();
        match &self.counterexample {
            Some(pair) => {
                let _ = writeln!(out, "JO counterexample found");
                let _ = writeln!(out, "counterexample:");
                let _ = writeln!(out, "  good: {}", shown(&pair.good));
                let _ = writeln!(out, "  bad: {}", shown(&pair.bad));
            }
            None => {
                let _ = writeln!(
                    out,
                    "no counterexample up to {} (bounded search, not a proof of JO)",
                    self.max_len
                );
            }
        }
        let _ = writeln!(out, "max_len: {}", self.max_len);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct Histogram {
    #[serde(rename = "Y")]
    pub y: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "U")]
    pub u: usize,
}

#[derive(Debug, Serialize)]
pub struct ObserverSummary {
    pub agent: String,
    pub states: usize,
    pub initial_label: String,
    pub labels: Histogram,
    pub file: String,
}

#[derive(Debug, Serialize)]
pub struct SynthReport {
    pub oct_holds: bool,
    pub observers: Vec<ObserverSummary>,
}

impl Report for SynthReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "oct_holds: {}", self.oct_holds);
        let _ = writeln!(out, "observers:");
        for o in &self.observers {
            let _ = writeln!(
                out,
                "  agent: {}  states: {}  initial_label: {}  labels: Y={} N={} U={}  file: {}",
                o.agent, o.states, o.initial_label, o.labels.y, o.labels.n, o.labels.u, o.file
            );
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ObserveReport {
    pub agent: String,
    pub input: String,
    pub verdict: String,
}

impl Report for ObserveReport {
    fn human(&self) -> String {
        format!(
            "agent: {}\ninput: {}\nverdict: {}\n",
            self.agent,
            shown(&self.input),
            self.verdict
        )
    }
}

#[derive(Debug, Serialize)]
pub struct AgentVerdict {
    pub agent: String,
    pub verdict: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub word: String,
    pub per_agent: Vec<AgentVerdict>,
    pub overall: String,
}

impl Report for RunReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "word: {}", shown(&self.word));
        let _ = writeln!(out, "per_agent:");
        for v in &self.per_agent {
            let _ = writeln!(out, "  {}: {}", v.agent, v.verdict);
        }
        let _ = writeln!(out, "overall: {}", self.overall);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessCheckReport {
    pub valid: bool,
    pub branch: Option<String>,
    pub reason: Option<String>,
}

impl Report for WitnessCheckReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "valid: {}", self.valid);
        if let Some(b) = &self.branch {
            let _ = writeln!(out, "branch: {b}");
        }
        if let Some(r) = &self.reason {
            let _ = writeln!(out, "reason: {r}");
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct InstanceComparison {
    pub instance: String,
    pub oct_holds: bool,
    pub cantell_checked: usize,
    pub verdicts_checked: usize,
    pub disagreements: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CompareReport {
    pub agree: bool,
    pub seed: u64,
    pub trials: usize,
    pub max_len: usize,
    pub instances: Vec<InstanceComparison>,
}

impl Report for CompareReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}",
            if self.agree {
                "checker and oracle agree"
            } else {
                "checker and oracle DISAGREE"
            }
        );
        let _ = writeln!(out, "agree: {}", self.agree);
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "trials: {}", self.trials);
        let _ = writeln!(out, "max_len: {}", self.max_len);
        let _ = writeln!(out, "instances:");
        for c in &self.instances {
            let _ = writeln!(
                out,
                "  instance: {}  oct_holds: {}  cantell_checked: {}  verdicts_checked: {}  disagreements: {}",
                c.instance,
                c.oct_holds,
                c.cantell_checked,
                c.verdicts_checked,
                c.disagreements.len()
            );
            for d in &c.disagreements {
                let _ = writeln!(out, "    {d}");
            }
        }
        out
    }
}
