//! Finite-state Y/N/U observers, one per agent.
//!
//! The observer of agent i is the reachable synchronous product of complete
//! DFAs for Pᵢ(K) and Pᵢ(L−K). A product state is labeled `Y` when only the
//! first factor accepts, `N` when only the second does, `U` otherwise.
//! Observers never give a wrong `Y`/`N`; they are complete (some agent
//! always answers) exactly when OCT holds.

use std::fmt;
use std::fmt::Write as _;

use crate::alphabet::{Symbol, Word};
use crate::automata::format::{content_lines, parse_lines, write_dfa};
use crate::automata::{complete, Dfa, StateId};
use crate::checker::AgentView;
use crate::error::{Error, Result};
use crate::problem::{Class, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    /// The behavior was in K.
    Y,
    /// The behavior was in L − K.
    N,
    /// Unknown.
    U,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Y => "Y",
            Verdict::N => "N",
            Verdict::U => "U",
        }
    }

    /// The verdict that is correct for a word of the given class.
    pub fn for_class(class: Class) -> Verdict {
        match class {
            Class::Good => Verdict::Y,
            Class::Bad => Verdict::N,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Y" => Ok(Verdict::Y),
            "N" => Ok(Verdict::N),
            "U" => Ok(Verdict::U),
            _ => Err(Error::InvalidProblem(format!("unknown verdict `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observer {
    agent: usize,
    machine: Dfa,
    labels: Vec<Verdict>,
}

impl Observer {
    pub fn new(agent: usize, machine: Dfa, labels: Vec<Verdict>) -> Result<Self> {
        if labels.len() != machine.state_count() {
            return Err(Error::InvalidProblem(format!(
                "{} labels for {} states",
                labels.len(),
                machine.state_count()
            )));
        }
        Ok(Observer {
            agent,
            machine,
            labels,
        })
    }

    pub fn agent(&self) -> usize {
        self.agent
    }

    /// DFA over the agent's subalphabet.
    pub fn machine(&self) -> &Dfa {
        &self.machine
    }

    pub fn labels(&self) -> &[Verdict] {
        &self.labels
    }

    pub fn label(&self, q: StateId) -> Verdict {
        self.labels[q]
    }

    /// Verdict after reading `sigma` (a word over Σᵢ).
    pub fn observe(&self, sigma: &[Symbol]) -> Result<Verdict> {
        let alphabet = self.machine.alphabet();
        if let Some(s) = sigma.iter().find(|s| !alphabet.contains(**s)) {
            return Err(Error::UnknownLetter(format!("#{}", s.0)));
        }
        Ok(self.labels[self.machine.run(sigma)])
    }

    pub fn observe_str(&self, sigma: &str) -> Result<Verdict> {
        self.observe(&self.machine.alphabet().parse_word(sigma)?)
    }

    /// Count of states per verdict, in Y, N, U order.
    pub fn histogram(&self) -> [(Verdict, usize); 3] {
        [Verdict::Y, Verdict::N, Verdict::U]
            .map(|v| (v, self.labels.iter().filter(|&&l| l == v).count()))
    }

    /// Automaton format plus an `agent:` line and one `label:` line per state.
    pub fn to_text(&self, agent_name: &str) -> String {
        let mut out = format!(
            "# observer for agent {agent_name}\nagent: {}\n",
            self.agent + 1
        );
        out.push_str(&write_dfa(&self.machine));
        for (q, v) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "label: {q} {v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines = content_lines(text);
        let mut agent = None;
        let mut labels: Vec<(usize, StateId, Verdict)> = Vec::new();
        let mut body = Vec::new();
        for &(line, content) in &lines {
            if let Some(rest) = content.strip_prefix("agent:") {
                let pos: usize = rest
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&p| p >= 1)
                    .ok_or_else(|| Error::syntax(line, "expected `agent: <1-based index>`"))?;
                agent = Some(pos - 1);
            } else if let Some(rest) = content.strip_prefix("label:") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [q, v] = parts[..] else {
                    return Err(Error::syntax(line, "expected `label: <state> <Y|N|U>`"));
                };
                let q = q
                    .parse()
                    .map_err(|_| Error::syntax(line, format!("bad state `{q}`")))?;
                let v = v
                    .parse()
                    .map_err(|e: Error| Error::syntax(line, e.to_string()))?;
                labels.push((line, q, v));
            } else {
                body.push((line, content));
            }
        }
        let agent = agent.ok_or_else(|| Error::syntax(1, "missing `agent:` line"))?;
        let machine = complete(&parse_lines(&body, false)?)?;
        let mut slots: Vec<Option<Verdict>> = vec![None; machine.state_count()];
        for (line, q, v) in labels {
            let slot = slots
                .get_mut(q)
                .ok_or_else(|| Error::syntax(line, format!("state {q} out of range")))?;
            if slot.replace(v).is_some() {
                return Err(Error::syntax(line, format!("state {q} labeled twice")));
            }
        }
        let labels = slots
            .into_iter()
            .enumerate()
            .map(|(q, v)| v.ok_or_else(|| Error::syntax(1, format!("state {q} has no label"))))
            .collect::<Result<_>>()?;
        Observer::new(agent, machine, labels)
    }
}

/// Builds the observer of agent `i`. OCT need not hold: the result is
/// always sound, and complete when OCT holds.
pub fn synth_observer(p: &Problem, i: usize) -> Result<Observer> {
    let view = AgentView::new(p, i)?;
    let (machine, pairs) = view.good.product_with_pairs(&view.bad, |a, _| a)?;
    let labels = pairs
        .iter()
        .map(
            |&(g, b)| match (view.good.is_accepting(g), view.bad.is_accepting(b)) {
                (true, false) => Verdict::Y,
                (false, true) => Verdict::N,
                _ => Verdict::U,
            },
        )
        .collect();
    Observer::new(i, machine, labels)
}

pub fn synth_observers(p: &Problem) -> Result<Vec<Observer>> {
    (0..p.agent_count()).map(|i| synth_observer(p, i)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecentralizedRun {
    pub overall: Verdict,
    pub per_agent: Vec<Verdict>,
}

/// Feeds Pᵢ(ρ) to every observer and combines the verdicts: `Y` if anyone
/// says `Y`, `N` if anyone says `N`, `U` otherwise.
pub fn run_decentralized(
    p: &Problem,
    observers: &[Observer],
    rho: &[Symbol],
) -> Result<DecentralizedRun> {
    if p.classify(rho).is_none() {
        return Err(Error::NotInPlant {
            word: p.alphabet().display_word(rho),
        });
    }
    let per_agent = observers
        .iter()
        .map(|o| o.observe(&p.arch().project_word(rho, o.agent)?))
        .collect::<Result<Vec<_>>>()?;
    let says = |v| per_agent.contains(&v);
    let overall = match (says(Verdict::Y), says(Verdict::N)) {
        (true, true) => {
            return Err(Error::SoundnessViolation(format!(
                "observers disagree (Y and N) on {}",
                p.alphabet().display_word(rho)
            )))
        }
        (true, false) => Verdict::Y,
        (false, true) => Verdict::N,
        (false, false) => Verdict::U,
    };
    Ok(DecentralizedRun { overall, per_agent })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrongVerdict {
    pub word: Word,
    pub agent: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AltOctReport {
    /// Number of words of L examined.
    pub checked: usize,
    /// An observer said `Y` on a word of L − K or `N` on a word of K.
    pub soundness: Vec<WrongVerdict>,
    /// Words of L for which no observer gave the correct verdict.
    pub completeness: Vec<Word>,
}

impl AltOctReport {
    pub fn is_clean(&self) -> bool {
        self.soundness.is_empty() && self.completeness.is_empty()
    }
}

/// Checks every ρ ∈ L with |ρ| ≤ `max_len` in shortlex order: no observer
/// may lie, and at least one must give the correct verdict.
pub fn verify_altoct(p: &Problem, observers: &[Observer], max_len: usize) -> Result<AltOctReport> {
    let plant = p.plant();
    let live = plant.live_states();
    let mut report = AltOctReport::default();
    let mut layer: Vec<(Word, StateId)> = vec![(Vec::new(), plant.initial())];
    for len in 0..=max_len {
        for (rho, q) in &layer {
            if !plant.is_accepting(*q) {
                continue;
            }
            let class = p.classify(rho).expect("accepted by the plant");
            let correct = Verdict::for_class(class);
            report.checked += 1;
            let mut told = false;
            for o in observers {
                let v = o.observe(&p.arch().project_word(rho, o.agent)?)?;
                if v == correct {
                    told = true;
                } else if v != Verdict::U {
                    report.soundness.push(WrongVerdict {
                        word: rho.clone(),
                        agent: o.agent,
                        verdict: v,
                    });
                }
            }
            if !told {
                report.completeness.push(rho.clone());
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (w, q) in &layer {
            for s in plant.alphabet().symbols() {
                let t = plant.next(*q, s);
                if live[t] {
                    let mut v = w.clone();
                    v.push(s);
                    next.push((v, t));
                }
            }
        }
        layer = next;
    }
    Ok(report)
}
