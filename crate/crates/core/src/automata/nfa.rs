use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

pub type StateId = usize;

/// Transition label: a letter of the alphabet or ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Eps,
    Sym(Symbol),
}

/// Nondeterministic automaton with ε-transitions.
///
/// Edge lists are kept sorted and deduplicated, so two automata built from
/// the same transition set compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
    edges: Vec<Vec<(Label, StateId)>>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        initial: impl IntoIterator<Item = StateId>,
        accepting: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = (StateId, Label, StateId)>,
    ) -> Result<Self> {
        let check = |state: StateId| {
            if state < state_count {
                Ok(state)
            } else {
                Err(Error::StateOutOfRange {
                    state,
                    count: state_count,
                })
            }
        };
        let mut nfa = Nfa::empty(alphabet, state_count);
        for q in initial {
            nfa.initial.push(check(q)?);
        }
        for q in accepting {
            nfa.accepting[check(q)?] = true;
        }
        for (src, label, dst) in transitions {
            check(src)?;
            check(dst)?;
            if let Label::Sym(s) = label {
                if !nfa.alphabet.contains(s) {
                    return Err(Error::UnknownLetter(format!("#{}", s.0)));
                }
            }
            nfa.edges[src].push((label, dst));
        }
        nfa.normalize();
        Ok(nfa)
    }

    /// `state_count` states, no initial states, nothing accepting, no edges.
    pub(crate) fn empty(alphabet: Alphabet, state_count: usize) -> Self {
        Nfa {
            alphabet,
            initial: Vec::new(),
            accepting: vec![false; state_count],
            edges: vec![Vec::new(); state_count],
        }
    }

    pub(crate) fn add_state(&mut self, accepting: bool) -> StateId {
        self.accepting.push(accepting);
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }

    pub(crate) fn set_accepting(&mut self, q: StateId, accepting: bool) {
        self.accepting[q] = accepting;
    }

    pub(crate) fn add_initial(&mut self, q: StateId) {
        self.initial.push(q);
    }

    pub(crate) fn add_edge(&mut self, src: StateId, label: Label, dst: StateId) {
        self.edges[src].push((label, dst));
    }

    pub(crate) fn set_alphabet(&mut self, alphabet: Alphabet) {
        self.alphabet = alphabet;
    }

    pub(crate) fn normalize(&mut self) {
        self.initial.sort_unstable();
        self.initial.dedup();
        for e in &mut self.edges {
            e.sort_unstable();
            e.dedup();
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_count()).filter(|&q| self.accepting[q])
    }

    pub fn edges(&self, q: StateId) -> &[(Label, StateId)] {
        &self.edges[q]
    }

    /// All transitions in (source, label, target) order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Label, StateId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(q, es)| es.iter().map(move |&(l, t)| (q, l, t)))
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions().any(|(_, l, _)| l == Label::Eps)
    }

    /// Extends `set` with every state reachable through ε-edges.
    pub fn epsilon_closure(&self, set: &mut BTreeSet<StateId>) {
        let mut stack: Vec<StateId> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(label, t) in &self.edges[q] {
                if label == Label::Eps && set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    pub fn initial_closure(&self) -> BTreeSet<StateId> {
        let mut set: BTreeSet<StateId> = self.initial.iter().copied().collect();
        self.epsilon_closure(&mut set);
        set
    }

    /// ε-closed successor set of a (closed) state set on `symbol`.
    pub fn step(&self, set: &BTreeSet<StateId>, symbol: Symbol) -> BTreeSet<StateId> {
        let mut next = BTreeSet::new();
        for &q in set {
            for &(label, t) in &self.edges[q] {
                if label == Label::Sym(symbol) {
                    next.insert(t);
                }
            }
        }
        self.epsilon_closure(&mut next);
        next
    }

    /// Membership test. Panics if a symbol is outside the alphabet.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut current = self.initial_closure();
        for &s in word {
            assert!(self.alphabet.contains(s), "symbol outside alphabet");
            current = self.step(&current, s);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|&q| self.accepting[q])
    }

    pub fn accepts_str(&self, word: &str) -> Result<bool> {
        Ok(self.accepts(&self.alphabet.parse_word(word)?))
    }

    /// Replaces every edge label through `relabel` and installs a new alphabet.
    pub(crate) fn relabeled(&self, alphabet: Alphabet, relabel: impl Fn(Label) -> Label) -> Nfa {
        let mut out = self.clone();
        out.set_alphabet(alphabet);
        for es in &mut out.edges {
            for e in es.iter_mut() {
                e.0 = relabel(e.0);
            }
        }
        out.normalize();
        out
    }
}
