//! Natural projections onto agent subalphabets and their inverses.
//!
//! Agent indices are 0-based throughout the library.

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automata::{Dfa, Label, Nfa};
use crate::error::{Error, Result};

/// One observation agent: a name and the subalphabet it observes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agent {
    name: String,
    alphabet: Alphabet,
    /// global symbol index -> local symbol, if observable
    to_local: Vec<Option<Symbol>>,
    /// local symbol index -> global symbol
    to_global: Vec<Symbol>,
}

impl Agent {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The subalphabet Σᵢ, ordered as in the global alphabet.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn observes(&self, global: Symbol) -> bool {
        self.to_local[global.index()].is_some()
    }

    pub fn to_local(&self, global: Symbol) -> Option<Symbol> {
        self.to_local[global.index()]
    }

    pub fn to_global(&self, local: Symbol) -> Symbol {
        self.to_global[local.index()]
    }
}

/// The global alphabet Σ and the agents' subalphabets Σ₁…Σₙ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationArchitecture {
    global: Alphabet,
    agents: Vec<Agent>,
}

impl ObservationArchitecture {
    /// `agents` lists (name, observed letters). Letters may be given in any
    /// order; each subalphabet is stored in global order. An agent may
    /// observe nothing.
    pub fn new<N, L>(
        global: Alphabet,
        agents: impl IntoIterator<Item = (N, Vec<L>)>,
    ) -> Result<Self>
    where
        N: Into<String>,
        L: AsRef<str>,
    {
        let mut built: Vec<Agent> = Vec::new();
        for (name, letters) in agents {
            let name = name.into();
            if built.iter().any(|a| a.name == name) {
                return Err(Error::InvalidProblem(format!("duplicate agent `{name}`")));
            }
            let mut observed = vec![false; global.len()];
            for letter in &letters {
                let s = global
                    .symbol(letter.as_ref())
                    .ok_or_else(|| Error::UnknownLetter(letter.as_ref().to_string()))?;
                if observed[s.index()] {
                    return Err(Error::InvalidProblem(format!(
                        "agent `{name}` lists `{}` twice",
                        letter.as_ref()
                    )));
                }
                observed[s.index()] = true;
            }
            let to_global: Vec<Symbol> = global.symbols().filter(|s| observed[s.index()]).collect();
            let mut to_local = vec![None; global.len()];
            for (i, g) in to_global.iter().enumerate() {
                to_local[g.index()] = Some(Symbol(i as u32));
            }
            let alphabet = Alphabet::new(to_global.iter().map(|&g| global.letter(g).to_string()))?;
            built.push(Agent {
                name,
                alphabet,
                to_local,
                to_global,
            });
        }
        if built.is_empty() {
            return Err(Error::InvalidProblem(
                "at least one agent is required".into(),
            ));
        }
        Ok(ObservationArchitecture {
            global,
            agents: built,
        })
    }

    pub fn global(&self) -> &Alphabet {
        &self.global
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn agent(&self, i: usize) -> Result<&Agent> {
        self.agents.get(i).ok_or(Error::AgentOutOfRange {
            index: i,
            count: self.agents.len(),
        })
    }

    /// Looks an agent up by name or by 1-based position.
    pub fn find_agent(&self, key: &str) -> Result<usize> {
        if let Some(i) = self.agents.iter().position(|a| a.name == key) {
            return Ok(i);
        }
        match key.parse::<usize>() {
            Ok(pos) if (1..=self.agents.len()).contains(&pos) => Ok(pos - 1),
            _ => Err(Error::UnknownAgent(key.to_string())),
        }
    }

    /// Pᵢ(w): deletes the letters agent `i` does not observe. The result is
    /// a word over Σᵢ.
    pub fn project_word(&self, word: &[Symbol], i: usize) -> Result<Word> {
        let agent = self.agent(i)?;
        Ok(word.iter().filter_map(|&s| agent.to_local(s)).collect())
    }

    /// Maps a word over Σᵢ back to the same letters over Σ.
    pub fn lift_word(&self, local: &[Symbol], i: usize) -> Result<Word> {
        let agent = self.agent(i)?;
        Ok(local.iter().map(|&s| agent.to_global(s)).collect())
    }

    fn expect_alphabet(&self, actual: &Alphabet, expected: &Alphabet) -> Result<()> {
        if actual == expected {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: actual.to_string(),
                right: expected.to_string(),
            })
        }
    }

    /// Automaton for Pᵢ(L(a)): labels outside Σᵢ become ε, the rest are
    /// renamed into Σᵢ. States, initial and accepting sets are unchanged.
    pub fn project_automaton(&self, a: &Nfa, i: usize) -> Result<Nfa> {
        let agent = self.agent(i)?;
        self.expect_alphabet(a.alphabet(), &self.global)?;
        Ok(a.relabeled(agent.alphabet.clone(), |label| match label {
            Label::Eps => Label::Eps,
            Label::Sym(s) => agent.to_local(s).map_or(Label::Eps, Label::Sym),
        }))
    }

    /// Automaton for Pᵢ⁻¹(L(a)): renames Σᵢ back into Σ and adds a self-loop
    /// on every unobservable letter at every state.
    pub fn inverse_project_automaton(&self, a: &Nfa, i: usize) -> Result<Nfa> {
        let agent = self.agent(i)?;
        self.expect_alphabet(a.alphabet(), &agent.alphabet)?;
        let mut out = a.relabeled(self.global.clone(), |label| match label {
            Label::Eps => Label::Eps,
            Label::Sym(s) => Label::Sym(agent.to_global(s)),
        });
        let hidden: Vec<Symbol> = self
            .global
            .symbols()
            .filter(|&s| !agent.observes(s))
            .collect();
        for q in 0..out.state_count() {
            for &s in &hidden {
                out.add_edge(q, Label::Sym(s), q);
            }
        }
        out.normalize();
        Ok(out)
    }

    /// Complete DFA over Σ accepting exactly { w : Pᵢ(w) = σ }.
    ///
    /// States `0..=|σ|` count the matched prefix of σ and loop on
    /// unobservable letters; state `|σ| + 1` is the sink.
    pub fn word_match_automaton(&self, sigma: &[Symbol], i: usize) -> Result<Dfa> {
        let agent = self.agent(i)?;
        if let Some(bad) = sigma.iter().find(|s| !agent.alphabet.contains(**s)) {
            return Err(Error::UnknownLetter(format!("#{}", bad.0)));
        }
        let len = sigma.len();
        let sink = len + 1;
        let mut table = Vec::with_capacity((len + 2) * self.global.len());
        for q in 0..=sink {
            for g in self.global.symbols() {
                let target = match (agent.to_local(g), sigma.get(q)) {
                    (None, _) => q,
                    (Some(l), Some(&next)) if next == l => q + 1,
                    (Some(_), _) => sink,
                };
                table.push(target);
            }
        }
        let accepting = (0..=sink).map(|q| q == len).collect();
        Dfa::new(self.global.clone(), 0, accepting, table)
    }
}
