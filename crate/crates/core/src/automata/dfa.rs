use std::collections::{HashMap, VecDeque};

use super::nfa::{Label, Nfa, StateId};
use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Complete deterministic automaton.
///
/// The transition function is stored as a dense table, so totality holds by
/// construction. An empty alphabet is allowed (the table is then empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: StateId,
    accepting: Vec<bool>,
    table: Vec<StateId>,
}

impl Dfa {
    /// `table[q * |alphabet| + s]` is the successor of `q` on symbol `s`.
    pub fn new(
        alphabet: Alphabet,
        initial: StateId,
        accepting: Vec<bool>,
        table: Vec<StateId>,
    ) -> Result<Self> {
        let n = accepting.len();
        if n == 0 {
            return Err(Error::InvalidProblem(
                "a DFA needs at least one state".into(),
            ));
        }
        if initial >= n {
            return Err(Error::StateOutOfRange {
                state: initial,
                count: n,
            });
        }
        if table.len() != n * alphabet.len() {
            return Err(Error::Nondeterministic(format!(
                "transition table has {} entries, expected {}",
                table.len(),
                n * alphabet.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= n) {
            return Err(Error::StateOutOfRange {
                state: bad,
                count: n,
            });
        }
        Ok(Dfa {
            alphabet,
            initial,
            accepting,
            table,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    #[inline]
    pub fn next(&self, q: StateId, s: Symbol) -> StateId {
        self.table[q * self.alphabet.len() + s.index()]
    }

    pub fn run_from(&self, q: StateId, word: &[Symbol]) -> StateId {
        word.iter().fold(q, |q, &s| self.next(q, s))
    }

    pub fn run(&self, word: &[Symbol]) -> StateId {
        self.run_from(self.initial, word)
    }

    /// Membership test. Panics if a symbol is outside the alphabet.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.accepting[self.run(word)]
    }

    pub fn accepts_str(&self, word: &str) -> Result<bool> {
        Ok(self.accepts(&self.alphabet.parse_word(word)?))
    }

    /// Same states, accepting and rejecting swapped.
    pub fn complement(&self) -> Dfa {
        Dfa {
            accepting: self.accepting.iter().map(|a| !a).collect(),
            ..self.clone()
        }
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::empty(self.alphabet.clone(), self.state_count());
        nfa.add_initial(self.initial);
        for q in 0..self.state_count() {
            if self.accepting[q] {
                nfa.set_accepting(q, true);
            }
            for s in self.alphabet.symbols() {
                nfa.add_edge(q, Label::Sym(s), self.next(q, s));
            }
        }
        nfa.normalize();
        nfa
    }

    /// Reachable synchronous product; a pair is accepting iff
    /// `combine(accept_left, accept_right)`. States are numbered in BFS order.
    pub fn product(&self, other: &Dfa, combine: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.product_with_pairs(other, combine).map(|(dfa, _)| dfa)
    }

    /// [`Dfa::product`], also returning the factor states of every product state.
    pub fn product_with_pairs(
        &self,
        other: &Dfa,
        combine: impl Fn(bool, bool) -> bool,
    ) -> Result<(Dfa, Vec<(StateId, StateId)>)> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        let k = self.alphabet.len();
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut table = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let (x, y) = pairs[id];
            debug_assert_eq!(table.len(), id * k);
            for s in self.alphabet.symbols() {
                let succ = (self.next(x, s), other.next(y, s));
                let next_id = *index.entry(succ).or_insert_with(|| {
                    pairs.push(succ);
                    queue.push_back(pairs.len() - 1);
                    pairs.len() - 1
                });
                table.push(next_id);
            }
        }
        let accepting = pairs
            .iter()
            .map(|&(x, y)| combine(self.accepting[x], other.accepting[y]))
            .collect();
        let dfa = Dfa::new(self.alphabet.clone(), 0, accepting, table)?;
        Ok((dfa, pairs))
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    /// L(self) − L(other).
    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && !b)
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for q in 0..n {
            for s in self.alphabet.symbols() {
                rev[self.next(q, s)].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<StateId> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    pub fn is_empty(&self) -> bool {
        !self.live_states()[self.initial]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// (ab)* completed: 0 -a-> 1 -b-> 0, everything else to sink 2.
    fn ab_star() -> Dfa {
        Dfa::new(ab(), 0, vec![true, false, false], vec![1, 2, 2, 0, 2, 2]).unwrap()
    }

    #[test]
    fn validates_table() {
        assert!(Dfa::new(ab(), 0, vec![true], vec![0]).is_err());
        assert!(Dfa::new(ab(), 0, vec![true], vec![0, 1]).is_err());
        assert!(Dfa::new(ab(), 1, vec![true], vec![0, 0]).is_err());
        assert!(Dfa::new(ab(), 0, vec![], vec![]).is_err());
    }

    #[test]
    fn membership() {
        let d = ab_star();
        assert!(d.accepts_str("").unwrap());
        assert!(d.accepts_str("abab").unwrap());
        assert!(!d.accepts_str("aba").unwrap());
        assert!(!d.accepts_str("b").unwrap());
    }

    #[test]
    fn complement_flips() {
        let c = ab_star().complement();
        assert!(!c.accepts_str("ab").unwrap());
        assert!(c.accepts_str("abb").unwrap());
        assert_eq!(c.complement(), ab_star());
        let all = Dfa::new(ab(), 0, vec![true], vec![0, 0]).unwrap();
        assert!(all.complement().is_empty());
    }

    #[test]
    fn to_nfa_keeps_language() {
        let d = ab_star();
        let n = d.to_nfa();
        for w in ["", "ab", "abab", "a", "ba", "abb"] {
            assert_eq!(d.accepts_str(w).unwrap(), n.accepts_str(w).unwrap(), "{w}");
        }
    }

    #[test]
    fn difference_of_products() {
        let all = Dfa::new(ab(), 0, vec![true], vec![0, 0]).unwrap();
        let diff = all.difference(&ab_star()).unwrap();
        assert!(diff.accepts_str("b").unwrap());
        assert!(!diff.accepts_str("abab").unwrap());
        assert!(all
            .product(
                &Dfa::new(Alphabet::new(["a"]).unwrap(), 0, vec![true], vec![0]).unwrap(),
                |a, b| a && b
            )
            .is_err());
    }

    #[test]
    fn empty_alphabet_dfa() {
        let none = Alphabet::new(Vec::<String>::new()).unwrap();
        let d = Dfa::new(none, 0, vec![true], vec![]).unwrap();
        assert!(d.accepts(&[]));
        assert!(d.complement().is_empty());
    }
}
