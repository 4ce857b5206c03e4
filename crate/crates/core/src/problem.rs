//! Observation problems (plant L, specification K ⊆ L, agents) and the
//! problem file format.
//!
//! ```text
//! [plant]
//! alphabet: a b
//! states: 3
//! initial: 0
//! accepting: 0 2
//! trans: 0 a 1
//! trans: 1 b 0
//! trans: 0 b 2
//! trans: 2 b 2
//! [spec]
//! alphabet: a b
//! states: 2
//! initial: 0
//! accepting: 0
//! trans: 0 a 1
//! trans: 1 b 0
//! [agent A1] a
//! [agent A2] b
//! ```
//!
//! Automata may be partial; they are completed with a sink on load.

use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Symbol};
use crate::automata::format::{content_lines, parse_lines, write_dfa};
use crate::automata::{complete, is_subset, Dfa, Inclusion};
use crate::error::{Error, Result};
use crate::projection::ObservationArchitecture;

/// Which side of the specification a word of L falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    /// In K.
    Good,
    /// In L − K.
    Bad,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    plant: Dfa,
    spec: Dfa,
    bad: Dfa,
    arch: ObservationArchitecture,
}

impl Problem {
    /// Checks that all alphabets agree and that K ⊆ L.
    pub fn new(plant: Dfa, spec: Dfa, arch: ObservationArchitecture) -> Result<Self> {
        if arch.global().is_empty() {
            return Err(Error::InvalidProblem(
                "the alphabet must not be empty".into(),
            ));
        }
        for dfa in [&plant, &spec] {
            if dfa.alphabet() != arch.global() {
                return Err(Error::AlphabetMismatch {
                    left: dfa.alphabet().to_string(),
                    right: arch.global().to_string(),
                });
            }
        }
        if let Inclusion::Counterexample(w) = is_subset(&spec.to_nfa(), &plant)? {
            return Err(Error::SpecNotSubset {
                witness: arch.global().display_word(&w),
            });
        }
        let bad = plant.difference(&spec)?;
        Ok(Problem {
            plant,
            spec,
            bad,
            arch,
        })
    }

    /// Recognizer of L.
    pub fn plant(&self) -> &Dfa {
        &self.plant
    }

    /// Recognizer of K.
    pub fn spec(&self) -> &Dfa {
        &self.spec
    }

    /// Recognizer of L − K (reachable product of the plant with the
    /// complemented specification).
    pub fn bad(&self) -> &Dfa {
        &self.bad
    }

    pub fn arch(&self) -> &ObservationArchitecture {
        &self.arch
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.arch.global()
    }

    pub fn agent_count(&self) -> usize {
        self.arch.agent_count()
    }

    /// `None` when the word is outside L.
    pub fn classify(&self, word: &[Symbol]) -> Option<Class> {
        if !self.plant.accepts(word) {
            None
        } else if self.spec.accepts(word) {
            Some(Class::Good)
        } else {
            Some(Class::Bad)
        }
    }

    /// Recognizer of K for `Class::Good`, of L − K for `Class::Bad`.
    pub fn language(&self, class: Class) -> &Dfa {
        match class {
            Class::Good => &self.spec,
            Class::Bad => &self.bad,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines = content_lines(text);
        let last_line = text.lines().count().max(1);

        let mut plant: Option<(usize, Vec<(usize, &str)>)> = None;
        let mut spec: Option<(usize, Vec<(usize, &str)>)> = None;
        let mut agents: Vec<(String, Vec<&str>)> = Vec::new();
        // index into (plant, spec) currently collecting lines
        let mut current: Option<u8> = None;

        for &(line, content) in &lines {
            if let Some(rest) = content.strip_prefix('[') {
                let (header, tail) = rest
                    .split_once(']')
                    .ok_or_else(|| Error::syntax(line, "unterminated section header"))?;
                let header = header.trim();
                let tail = tail.trim();
                match header {
                    "plant" | "spec" => {
                        if !tail.is_empty() {
                            return Err(Error::syntax(
                                line,
                                format!("unexpected `{tail}` after header"),
                            ));
                        }
                        let slot = if header == "plant" {
                            &mut plant
                        } else {
                            &mut spec
                        };
                        if slot.is_some() {
                            return Err(Error::syntax(
                                line,
                                format!("duplicate section [{header}]"),
                            ));
                        }
                        *slot = Some((line, Vec::new()));
                        current = Some(if header == "plant" { 0 } else { 1 });
                    }
                    _ => {
                        let name = header
                            .strip_prefix("agent")
                            .filter(|n| n.starts_with(char::is_whitespace))
                            .map(str::trim)
                            .filter(|n| !n.is_empty() && !n.contains(char::is_whitespace))
                            .ok_or_else(|| {
                                Error::syntax(line, format!("unknown section [{header}]"))
                            })?;
                        if agents.iter().any(|(n, _)| n == name) {
                            return Err(Error::syntax(
                                line,
                                format!("duplicate section [agent {name}]"),
                            ));
                        }
                        agents.push((name.to_string(), tail.split_whitespace().collect()));
                        current = None;
                    }
                }
                continue;
            }
            match current {
                Some(0) => plant
                    .as_mut()
                    .expect("open section")
                    .1
                    .push((line, content)),
                Some(_) => spec.as_mut().expect("open section").1.push((line, content)),
                None => {
                    return Err(Error::syntax(
                        line,
                        format!("line outside an automaton section: `{content}`"),
                    ))
                }
            }
        }

        let (plant_line, plant_lines) =
            plant.ok_or_else(|| Error::syntax(last_line, "missing [plant] section"))?;
        let (spec_line, spec_lines) =
            spec.ok_or_else(|| Error::syntax(last_line, "missing [spec] section"))?;
        if agents.is_empty() {
            return Err(Error::syntax(
                last_line,
                "at least one [agent <name>] section is required",
            ));
        }
        let section = |header: usize, body: &[(usize, &str)]| -> Result<Dfa> {
            if body.is_empty() {
                return Err(Error::syntax(header, "empty automaton section"));
            }
            let nfa = parse_lines(body, false)?;
            complete(&nfa).map_err(|e| Error::syntax(header, e.to_string()))
        };
        let plant = section(plant_line, &plant_lines)?;
        let spec = section(spec_line, &spec_lines)?;
        if spec.alphabet() != plant.alphabet() {
            return Err(Error::syntax(
                spec_line,
                format!(
                    "spec alphabet {} differs from plant alphabet {}",
                    spec.alphabet(),
                    plant.alphabet()
                ),
            ));
        }
        let arch = ObservationArchitecture::new(plant.alphabet().clone(), agents)?;
        Problem::new(plant, spec, arch)
    }

    /// Serializes the completed automata and the agents; parsing the output
    /// yields an identical problem.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("[plant]\n");
        out.push_str(&write_dfa(&self.plant));
        out.push_str("[spec]\n");
        out.push_str(&write_dfa(&self.spec));
        for agent in self.arch.agents() {
            let letters = agent.alphabet().letters().join(" ");
            if letters.is_empty() {
                let _ = writeln!(out, "[agent {}]", agent.name());
            } else {
                let _ = writeln!(out, "[agent {}] {letters}", agent.name());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PREFIX: &str = "\
# K = (ab)*, L = (ab)*b*
[plant]
alphabet: a b
states: 3
initial: 0
accepting: 0 2
trans: 0 a 1
trans: 1 b 0
trans: 0 b 2
trans: 2 b 2

[spec]
alphabet: a b
states: 2
initial: 0
accepting: 0
trans: 0 a 1
trans: 1 b 0

[agent A1] a
[agent A2] b
";

    #[test]
    fn parses_prefix_instance() {
        let p = Problem::parse(PREFIX).unwrap();
        assert_eq!(p.agent_count(), 2);
        assert_eq!(p.plant().state_count(), 4);
        assert_eq!(p.spec().state_count(), 3);
        let g = p.alphabet();
        assert_eq!(
            p.classify(&g.parse_word("abab").unwrap()),
            Some(Class::Good)
        );
        assert_eq!(p.classify(&g.parse_word("abb").unwrap()), Some(Class::Bad));
        assert_eq!(p.classify(&g.parse_word("aab").unwrap()), None);
    }

    #[test]
    fn round_trips() {
        let p = Problem::parse(PREFIX).unwrap();
        let text = p.to_text();
        let q = Problem::parse(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(text, q.to_text());
    }

    #[test]
    fn crlf_input() {
        let p = Problem::parse(&PREFIX.replace('\n', "\r\n")).unwrap();
        assert_eq!(p, Problem::parse(PREFIX).unwrap());
    }

    #[test]
    fn spec_outside_plant_is_reported() {
        let text = "\
[plant]
alphabet: a b
states: 3
initial: 0
accepting: 2
trans: 0 a 1
trans: 1 b 2
[spec]
alphabet: a b
states: 3
initial: 0
accepting: 2
trans: 0 b 1
trans: 1 a 2
[agent x] a
";
        let err = Problem::parse(text).unwrap_err();
        assert_eq!(
            err,
            Error::SpecNotSubset {
                witness: "ba".into()
            }
        );
        assert_eq!(err.to_string(), "K not a subset of L, witness: ba");
    }

    #[test]
    fn structural_errors() {
        let no_plant = PREFIX.replace("[plant]", "");
        assert!(matches!(
            Problem::parse(&no_plant),
            Err(Error::Syntax { .. })
        ));
        let dup = format!("{PREFIX}[spec]\nalphabet: a b\nstates: 1\n");
        assert!(matches!(Problem::parse(&dup), Err(Error::Syntax { .. })));
        let dup_agent = format!("{PREFIX}[agent A1] b\n");
        assert!(matches!(
            Problem::parse(&dup_agent),
            Err(Error::Syntax { .. })
        ));
        let unknown = PREFIX.replace("[agent A2] b", "[agent A2] c");
        assert!(matches!(
            Problem::parse(&unknown),
            Err(Error::UnknownLetter(_))
        ));
        let no_agents = PREFIX.replace("[agent A1] a\n[agent A2] b\n", "");
        assert!(Problem::parse(&no_agents).is_err());
        let eps = PREFIX.replace("trans: 2 b 2", "trans: 2 eps 2");
        assert!(matches!(
            Problem::parse(&eps),
            Err(Error::Syntax { line: 10, .. })
        ));
        let nondet = PREFIX.replace("trans: 2 b 2", "trans: 0 b 0");
        assert!(matches!(
            Problem::parse(&nondet),
            Err(Error::Syntax { line: 2, .. })
        ));
        let mismatch = PREFIX.replacen("alphabet: a b\nstates: 2", "alphabet: b a\nstates: 2", 1);
        assert!(Problem::parse(&mismatch).is_err());
        assert!(Problem::parse("stray line\n").is_err());
        assert!(Problem::parse("[bogus]\n").is_err());
    }

    #[test]
    fn blind_agent_round_trips() {
        let text = PREFIX.replace("[agent A2] b", "[agent blind]");
        let p = Problem::parse(&text).unwrap();
        assert!(p.arch().agent(1).unwrap().alphabet().is_empty());
        assert_eq!(Problem::parse(&p.to_text()).unwrap(), p);
    }
}
