//! Brute-force reference semantics for `cantell`, OCT and the local
//! decision functions fᵢ, evaluated by enumerating words.
//!
//! The only thing shared with the main build is stepping the plant and
//! specification DFAs letter by letter. No projection automaton, subset
//! construction or product is used here.
//!
//! Plain enumeration up to the pumping bounds is hopeless (the bounds are
//! in the hundreds of letters even for four-state inputs), so every search
//! enumerates words in shortlex order and drops a word when a
//! shortlex-smaller word already reached the same *configuration*. For the
//! search of a confusing word ρ′ with Pᵢ(ρ′) = σ the configuration is
//! (plant state, spec state, matched prefix length of σ); there are at most
//! p·m·(|σ|+1) of them, so every confusing word that exists is found and the
//! first one found is the shortlex-least. For the search of an OCT
//! violation ρ the configuration is the plant and spec states of ρ together
//! with, for every agent, the set of state pairs reachable by words with
//! the same projection; whether ρ violates OCT, and how every extension of
//! ρ behaves, depend on that configuration only. The configuration space is
//! finite, so the search is exhaustive and the answer exact.

use std::collections::{HashSet, VecDeque};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automata::StateId;
use crate::checker::{Branch, OctWitness};
use crate::error::{Error, Result};
use crate::observer::Verdict;
use crate::problem::{Class, Problem};

/// Default limit on the number of words an oracle query may enumerate.
pub const DEFAULT_CAP: usize = 10_000_000;

/// All words of length ≤ `max_len` in shortlex order.
pub fn enumerate_words(alphabet: &Alphabet, max_len: usize) -> ShortlexWords {
    ShortlexWords {
        letters: alphabet.len() as u32,
        max_len,
        next: Some(Vec::new()),
    }
}

#[derive(Debug, Clone)]
pub struct ShortlexWords {
    letters: u32,
    max_len: usize,
    next: Option<Word>,
}

impl Iterator for ShortlexWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // increment as a base-|Σ| counter; on overflow grow by one letter
        let mut carry = true;
        for s in succ.iter_mut().rev() {
            if s.0 + 1 < self.letters {
                s.0 += 1;
                carry = false;
                break;
            }
            s.0 = 0;
        }
        if carry {
            succ = vec![Symbol(0); current.len() + 1];
        }
        if succ.len() <= self.max_len && self.letters > 0 {
            self.next = Some(succ);
        }
        Some(current)
    }
}

type Pair = (StateId, StateId);

struct Budget {
    left: usize,
    cap: usize,
    spent: usize,
}

impl Budget {
    fn spend(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::OracleTooLarge { limit: self.cap });
        }
        self.left -= 1;
        self.spent += 1;
        Ok(())
    }
}

/// Outcome of an exhaustive OCT evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub holds: bool,
    /// The shortlex-least violating word with shortlex-least confusing words.
    pub witness: Option<OctWitness>,
    /// Number of words enumerated.
    pub explored: usize,
}

pub struct Oracle<'p> {
    problem: &'p Problem,
    cap: usize,
}

impl<'p> Oracle<'p> {
    pub fn new(problem: &'p Problem) -> Self {
        Oracle::with_cap(problem, DEFAULT_CAP)
    }

    pub fn with_cap(problem: &'p Problem, cap: usize) -> Self {
        Oracle { problem, cap }
    }

    fn budget(&self) -> Budget {
        Budget {
            left: self.cap,
            cap: self.cap,
            spent: 0,
        }
    }

    fn pair_class(&self, (l, k): Pair) -> Option<Class> {
        let p = self.problem;
        match (p.plant().is_accepting(l), p.spec().is_accepting(k)) {
            (false, _) => None,
            (true, true) => Some(Class::Good),
            (true, false) => Some(Class::Bad),
        }
    }

    fn class_of(&self, rho: &[Symbol]) -> Result<Class> {
        let p = self.problem;
        if !p.plant().accepts(rho) {
            return Err(Error::NotInPlant {
                word: p.alphabet().display_word(rho),
            });
        }
        Ok(if p.spec().accepts(rho) {
            Class::Good
        } else {
            Class::Bad
        })
    }

    fn observed(&self, i: usize, rho: &[Symbol]) -> Result<Word> {
        let agent = self.problem.arch().agent(i)?;
        Ok(rho.iter().filter_map(|&g| agent.to_local(g)).collect())
    }

    /// Every state pair reached by a word ρ′ with Pᵢ(ρ′) = σ, each with the
    /// shortlex-least such word, in shortlex order of those words.
    fn matching(
        &self,
        i: usize,
        sigma: &[Symbol],
        budget: &mut Budget,
    ) -> Result<Vec<(Pair, Word)>> {
        let p = self.problem;
        let agent = p.arch().agent(i)?;
        let (plant, spec) = (p.plant(), p.spec());
        let start = (plant.initial(), spec.initial(), 0usize);
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([(Vec::new(), start)]);
        budget.spend()?;
        let mut finals = Vec::new();
        while let Some((word, (l, k, j))) = queue.pop_front() {
            for g in p.alphabet().symbols() {
                let matched = match agent.to_local(g) {
                    None => j,
                    Some(x) if j < sigma.len() && sigma[j] == x => j + 1,
                    Some(_) => continue,
                };
                let config = (plant.next(l, g), spec.next(k, g), matched);
                if seen.insert(config) {
                    budget.spend()?;
                    let mut longer = word.clone();
                    longer.push(g);
                    queue.push_back((longer, config));
                }
            }
            if j == sigma.len() {
                finals.push(((l, k), word));
            }
        }
        Ok(finals)
    }

    fn first_of_class(&self, finals: Vec<(Pair, Word)>, class: Class) -> Option<Word> {
        finals
            .into_iter()
            .find(|&(pair, _)| self.pair_class(pair) == Some(class))
            .map(|(_, w)| w)
    }

    /// Shortlex-least word of the opposite class that agent `i` cannot
    /// distinguish from `rho`, if any.
    pub fn confusing_word(&self, i: usize, rho: &[Symbol]) -> Result<Option<Word>> {
        let class = self.class_of(rho)?;
        let sigma = self.observed(i, rho)?;
        let finals = self.matching(i, &sigma, &mut self.budget())?;
        let opposite = match class {
            Class::Good => Class::Bad,
            Class::Bad => Class::Good,
        };
        Ok(self.first_of_class(finals, opposite))
    }

    pub fn cantell(&self, i: usize, rho: &[Symbol]) -> Result<bool> {
        Ok(self.confusing_word(i, rho)?.is_none())
    }

    /// fᵢ(σ) for σ over Σᵢ: `Y` if only K-words project to σ, `N` if only
    /// (L−K)-words do, `U` otherwise (both, or neither).
    pub fn f(&self, i: usize, sigma: &[Symbol]) -> Result<Verdict> {
        let local = self.problem.arch().agent(i)?.alphabet();
        if let Some(s) = sigma.iter().find(|s| !local.contains(**s)) {
            return Err(Error::UnknownLetter(format!("#{}", s.0)));
        }
        let finals = self.matching(i, sigma, &mut self.budget())?;
        let has = |c| {
            finals
                .iter()
                .any(|&(pair, _)| self.pair_class(pair) == Some(c))
        };
        Ok(match (has(Class::Good), has(Class::Bad)) {
            (true, false) => Verdict::Y,
            (false, true) => Verdict::N,
            _ => Verdict::U,
        })
    }

    /// Decides OCT by searching all of L for a word no agent can tell.
    pub fn check_oct(&self) -> Result<OracleVerdict> {
        let p = self.problem;
        let n = p.agent_count();
        let (plant, spec) = (p.plant(), p.spec());
        let mut budget = self.budget();

        let reach_sets = |rho: &[Symbol], budget: &mut Budget| -> Result<Vec<Vec<Pair>>> {
            (0..n)
                .map(|i| {
                    let sigma = self.observed(i, rho)?;
                    let mut pairs: Vec<Pair> = self
                        .matching(i, &sigma, budget)?
                        .into_iter()
                        .map(|(pair, _)| pair)
                        .collect();
                    pairs.sort_unstable();
                    Ok(pairs)
                })
                .collect()
        };

        let start_sets = reach_sets(&[], &mut budget)?;
        let start = (plant.initial(), spec.initial(), start_sets);
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([(Vec::<Symbol>::new(), start)]);
        while let Some((rho, (l, k, sets))) = queue.pop_front() {
            if let Some(class) = self.pair_class((l, k)) {
                let opposite = match class {
                    Class::Good => Class::Bad,
                    Class::Bad => Class::Good,
                };
                let confused = sets.iter().all(|pairs| {
                    pairs
                        .iter()
                        .any(|&pair| self.pair_class(pair) == Some(opposite))
                });
                if confused {
                    let per_agent = (0..n)
                        .map(|i| {
                            let sigma = self.observed(i, &rho)?;
                            let finals = self.matching(i, &sigma, &mut budget)?;
                            self.first_of_class(finals, opposite).ok_or_else(|| {
                                Error::Internal("oracle lost a confusing word".into())
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let branch = match class {
                        Class::Good => Branch::GoodConfused,
                        Class::Bad => Branch::BadConfused,
                    };
                    return Ok(OracleVerdict {
                        holds: false,
                        witness: Some(OctWitness {
                            branch,
                            rho,
                            per_agent,
                        }),
                        explored: budget.spent,
                    });
                }
            }
            for g in p.alphabet().symbols() {
                let mut longer = rho.clone();
                longer.push(g);
                let config = (
                    plant.next(l, g),
                    spec.next(k, g),
                    reach_sets(&longer, &mut budget)?,
                );
                if seen.insert(config.clone()) {
                    budget.spend()?;
                    queue.push_back((longer, config));
                }
            }
        }
        Ok(OracleVerdict {
            holds: true,
            witness: None,
            explored: budget.spent,
        })
    }
}

pub fn oracle_cantell(p: &Problem, i: usize, rho: &[Symbol]) -> Result<bool> {
    Oracle::new(p).cantell(i, rho)
}

pub fn oracle_check_oct(p: &Problem) -> Result<OracleVerdict> {
    Oracle::new(p).check_oct()
}

pub fn oracle_f(p: &Problem, i: usize, sigma: &[Symbol]) -> Result<Verdict> {
    Oracle::new(p).f(i, sigma)
}
