//! Standard constructions over [`Nfa`] and [`Dfa`].

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::dfa::Dfa;
use super::nfa::{Label, Nfa, StateId};
use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};

fn same_alphabet(left: &Alphabet, right: &Alphabet) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            left: left.to_string(),
            right: right.to_string(),
        })
    }
}

/// Subset construction over reachable subsets.
///
/// Subsets are ε-closed and kept as sorted id lists; they are numbered in
/// BFS order with letters explored in alphabet order, so the output is
/// canonical. The empty subset appears as a sink when it is reachable.
pub fn determinize(nfa: &Nfa) -> Dfa {
    let alphabet = nfa.alphabet().clone();
    let start = nfa.initial_closure();
    let mut index: HashMap<BTreeSet<StateId>, StateId> = HashMap::new();
    let mut subsets = vec![start.clone()];
    index.insert(start, 0);
    let mut table = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let current = subsets[id].clone();
        for s in alphabet.symbols() {
            let next = nfa.step(&current, s);
            let next_id = match index.get(&next) {
                Some(&i) => i,
                None => {
                    subsets.push(next.clone());
                    index.insert(next, subsets.len() - 1);
                    queue.push_back(subsets.len() - 1);
                    subsets.len() - 1
                }
            };
            table.push(next_id);
        }
    }
    let accepting = subsets
        .iter()
        .map(|set| set.iter().any(|&q| nfa.is_accepting(q)))
        .collect();
    Dfa::new(alphabet, 0, accepting, table).expect("subset construction yields a complete DFA")
}

/// Turns a deterministic automaton with possibly missing transitions into a
/// complete [`Dfa`], adding one rejecting sink only when some transition is
/// missing. State ids are preserved; the sink, if any, is the last state.
pub fn complete(partial: &Nfa) -> Result<Dfa> {
    if partial.has_epsilon() {
        return Err(Error::Nondeterministic("ε-transitions present".into()));
    }
    if partial.initial().len() > 1 {
        return Err(Error::Nondeterministic(
            "more than one initial state".into(),
        ));
    }
    let alphabet = partial.alphabet().clone();
    let k = alphabet.len();
    let n = partial.state_count();
    let Some(&initial) = partial.initial().first() else {
        // no initial state: the empty language
        return Dfa::new(alphabet, 0, vec![false], vec![0; k]);
    };
    let mut table: Vec<Option<StateId>> = vec![None; n * k];
    for (src, label, dst) in partial.transitions() {
        let Label::Sym(s) = label else { unreachable!() };
        let slot = &mut table[src * k + s.index()];
        if slot.is_some_and(|t| t != dst) {
            return Err(Error::Nondeterministic(format!(
                "state {src} has two transitions on `{}`",
                alphabet.letter(s)
            )));
        }
        *slot = Some(dst);
    }
    let needs_sink = table.iter().any(Option::is_none);
    let sink = n;
    let mut accepting: Vec<bool> = (0..n).map(|q| partial.is_accepting(q)).collect();
    let mut dense: Vec<StateId> = table.into_iter().map(|t| t.unwrap_or(sink)).collect();
    if needs_sink {
        accepting.push(false);
        dense.extend(std::iter::repeat_n(sink, k));
    }
    Dfa::new(alphabet, initial, accepting, dense)
}

/// Reachable product of two ε-NFAs recognizing the intersection.
///
/// Letters synchronize both factors; an ε-edge of either factor moves that
/// factor alone. Pairs are numbered in BFS order from the initial pairs.
pub fn product_intersection(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    same_alphabet(a.alphabet(), b.alphabet())?;
    let mut out = Nfa::empty(a.alphabet().clone(), 0);
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs: Vec<(StateId, StateId)> = Vec::new();
    let mut queue = VecDeque::new();

    let mut intern = |pair: (StateId, StateId),
                      out: &mut Nfa,
                      pairs: &mut Vec<(StateId, StateId)>,
                      queue: &mut VecDeque<StateId>| {
        *index.entry(pair).or_insert_with(|| {
            let id = out.add_state(a.is_accepting(pair.0) && b.is_accepting(pair.1));
            pairs.push(pair);
            queue.push_back(id);
            id
        })
    };

    for &x in a.initial() {
        for &y in b.initial() {
            let id = intern((x, y), &mut out, &mut pairs, &mut queue);
            out.add_initial(id);
        }
    }
    while let Some(id) = queue.pop_front() {
        let (x, y) = pairs[id];
        for &(la, ta) in a.edges(x) {
            match la {
                Label::Eps => {
                    let t = intern((ta, y), &mut out, &mut pairs, &mut queue);
                    out.add_edge(id, Label::Eps, t);
                }
                Label::Sym(s) => {
                    for &(lb, tb) in b.edges(y) {
                        if lb == Label::Sym(s) {
                            let t = intern((ta, tb), &mut out, &mut pairs, &mut queue);
                            out.add_edge(id, la, t);
                        }
                    }
                }
            }
        }
        for &(lb, tb) in b.edges(y) {
            if lb == Label::Eps {
                let t = intern((x, tb), &mut out, &mut pairs, &mut queue);
                out.add_edge(id, Label::Eps, t);
            }
        }
    }
    out.normalize();
    Ok(out)
}

/// True iff no accepting state is reachable from an initial state.
pub fn is_empty(nfa: &Nfa) -> bool {
    let mut seen = vec![false; nfa.state_count()];
    let mut stack: Vec<StateId> = nfa.initial().to_vec();
    for &q in &stack {
        seen[q] = true;
    }
    while let Some(q) = stack.pop() {
        if nfa.is_accepting(q) {
            return false;
        }
        for &(_, t) in nfa.edges(q) {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    true
}

/// Shortest accepted word, ties broken by the alphabet order.
///
/// Computes for every state the least number of letters needed to accept
/// (0-1 BFS on reversed edges, ε costs nothing), then walks forward over
/// ε-closed state sets choosing the smallest letter that keeps the
/// remaining distance optimal.
pub fn shortest_accepted(nfa: &Nfa) -> Option<Word> {
    let n = nfa.state_count();
    let mut rev: Vec<Vec<(StateId, u32)>> = vec![Vec::new(); n];
    for (src, label, dst) in nfa.transitions() {
        rev[dst].push((src, u32::from(label != Label::Eps)));
    }
    let mut dist = vec![u32::MAX; n];
    let mut deque = VecDeque::new();
    for q in nfa.accepting_states() {
        dist[q] = 0;
        deque.push_back(q);
    }
    while let Some(u) = deque.pop_front() {
        for &(p, cost) in &rev[u] {
            let nd = dist[u] + cost;
            if nd < dist[p] {
                dist[p] = nd;
                if cost == 0 {
                    deque.push_front(p);
                } else {
                    deque.push_back(p);
                }
            }
        }
    }

    let best = |set: &BTreeSet<StateId>| set.iter().map(|&q| dist[q]).min().unwrap_or(u32::MAX);
    let mut current = nfa.initial_closure();
    let mut remaining = best(&current);
    if remaining == u32::MAX {
        return None;
    }
    let mut word = Vec::with_capacity(remaining as usize);
    while remaining > 0 {
        let (symbol, next) = nfa
            .alphabet()
            .symbols()
            .map(|s| (s, nfa.step(&current, s)))
            .find(|(_, next)| best(next) == remaining - 1)
            .expect("some letter realizes the distance");
        word.push(symbol);
        current = next;
        remaining -= 1;
    }
    Some(word)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inclusion {
    Holds,
    /// Shortlex-least word of L(a) − L(b).
    Counterexample(Word),
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Holds)
    }
}

/// Decides L(a) ⊆ L(b) through emptiness of a ∩ complement(b).
pub fn is_subset(a: &Nfa, b: &Dfa) -> Result<Inclusion> {
    let violations = product_intersection(a, &b.complement().to_nfa())?;
    Ok(match shortest_accepted(&violations) {
        None => Inclusion::Holds,
        Some(w) => Inclusion::Counterexample(w),
    })
}
