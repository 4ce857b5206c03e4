//! Deciding "at least one can tell" (OCT) through two language inclusions,
//! counterexample extraction, per-word `cantell`, and a bounded search for
//! joint-observability counterexamples.

use std::collections::HashMap;
use std::fmt;

use crate::alphabet::{Symbol, Word};
use crate::automata::{
    determinize, is_subset, product_intersection, shortest_accepted, Dfa, Inclusion, Nfa,
};
use crate::error::{Error, Result};
use crate::problem::{Class, Problem};

/// Which disjunct of the negated OCT condition a witness satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    /// ρ ∈ K and every ρᵢ ∈ L − K.
    GoodConfused,
    /// ρ ∈ L − K and every ρᵢ ∈ K.
    BadConfused,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::GoodConfused => "GOOD_CONFUSED",
            Branch::BadConfused => "BAD_CONFUSED",
        }
    }

    /// Class of ρ.
    pub fn word_class(self) -> Class {
        match self {
            Branch::GoodConfused => Class::Good,
            Branch::BadConfused => Class::Bad,
        }
    }

    /// Class every ρᵢ must have.
    pub fn confusing_class(self) -> Class {
        match self {
            Branch::GoodConfused => Class::Bad,
            Branch::BadConfused => Class::Good,
        }
    }

    /// The inclusion whose failure produces this branch.
    pub fn failed_inclusion(self) -> &'static str {
        match self {
            Branch::BadConfused => "A1 ⊆ K",
            Branch::GoodConfused => "A2 ⊆ L−K",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "GOOD_CONFUSED" => Ok(Branch::GoodConfused),
            "BAD_CONFUSED" => Ok(Branch::BadConfused),
            _ => Err(Error::InvalidProblem(format!("unknown branch `{s}`"))),
        }
    }
}

/// A counterexample to OCT: a word ρ and, for every agent i, a word ρᵢ of
/// the opposite class with Pᵢ(ρᵢ) = Pᵢ(ρ). All words are over Σ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OctWitness {
    pub branch: Branch,
    pub rho: Word,
    pub per_agent: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OctResult {
    pub witness: Option<OctWitness>,
    /// States of A₁ = ⋂ᵢ Pᵢ⁻¹(Pᵢ(K)) ∩ L.
    pub a1_states: usize,
    /// States of A₂ = ⋂ᵢ Pᵢ⁻¹(Pᵢ(L−K)) ∩ L.
    pub a2_states: usize,
}

impl OctResult {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// ⋂ᵢ Pᵢ⁻¹(Pᵢ(lang)) ∩ L as an ε-NFA, starting from the plant so the
/// product only explores plant-reachable combinations.
fn lifted_intersection(p: &Problem, lang: &Nfa) -> Result<Nfa> {
    let arch = p.arch();
    let mut acc = p.plant().to_nfa();
    for i in 0..arch.agent_count() {
        let lifted = arch.inverse_project_automaton(&arch.project_automaton(lang, i)?, i)?;
        acc = product_intersection(&acc, &lifted)?;
    }
    Ok(acc)
}

/// The A₁ and A₂ automata of the inclusion check.
pub fn inclusion_automata(p: &Problem) -> Result<(Nfa, Nfa)> {
    Ok((
        lifted_intersection(p, &p.spec().to_nfa())?,
        lifted_intersection(p, &p.bad().to_nfa())?,
    ))
}

/// Decides OCT: A₁ ⊆ K and A₂ ⊆ L − K.
///
/// A₁ ⊆ K is checked first; its failure yields a `BadConfused` witness, a
/// failure of A₂ ⊆ L − K a `GoodConfused` one. ρ is the shortlex-least
/// violating word and each ρᵢ the shortlex-least matching word.
pub fn check_oct(p: &Problem) -> Result<OctResult> {
    let (a1, a2) = inclusion_automata(p)?;
    let mut result = OctResult {
        witness: None,
        a1_states: a1.state_count(),
        a2_states: a2.state_count(),
    };
    let violation = match is_subset(&a1, p.spec())? {
        Inclusion::Counterexample(rho) => Some((Branch::BadConfused, rho)),
        Inclusion::Holds => match is_subset(&a2, p.bad())? {
            Inclusion::Counterexample(rho) => Some((Branch::GoodConfused, rho)),
            Inclusion::Holds => None,
        },
    };
    if let Some((branch, rho)) = violation {
        let per_agent = (0..p.agent_count())
            .map(|i| recover_agent_word(p, i, &rho, branch.confusing_class()))
            .collect::<Result<Vec<_>>>()?;
        let witness = OctWitness {
            branch,
            rho,
            per_agent,
        };
        if !validate_witness(p, &witness) {
            return Err(Error::Internal(
                "checker produced an invalid witness".into(),
            ));
        }
        result.witness = Some(witness);
    }
    Ok(result)
}

/// Shortlex-least word of `target` whose projection for agent `i` equals
/// that of `rho`.
pub fn recover_agent_word(p: &Problem, i: usize, rho: &[Symbol], target: Class) -> Result<Word> {
    let arch = p.arch();
    let sigma = arch.project_word(rho, i)?;
    let matcher = arch.word_match_automaton(&sigma, i)?;
    let candidates = product_intersection(&p.language(target).to_nfa(), &matcher.to_nfa())?;
    shortest_accepted(&candidates).ok_or_else(|| {
        Error::Internal(format!(
            "no {target:?} word matches {} for agent {}",
            arch.global().display_word(rho),
            arch.agent(i).map(|a| a.name()).unwrap_or("?"),
        ))
    })
}

/// True iff `w` satisfies the negated OCT condition for `p` with its branch.
pub fn validate_witness(p: &Problem, w: &OctWitness) -> bool {
    let arch = p.arch();
    let in_alphabet = |word: &Word| word.iter().all(|&s| arch.global().contains(s));
    if w.per_agent.len() != p.agent_count()
        || !in_alphabet(&w.rho)
        || !w.per_agent.iter().all(in_alphabet)
    {
        return false;
    }
    if p.classify(&w.rho) != Some(w.branch.word_class()) {
        return false;
    }
    w.per_agent.iter().enumerate().all(|(i, rho_i)| {
        p.classify(rho_i) == Some(w.branch.confusing_class())
            && arch.project_word(rho_i, i).ok() == arch.project_word(&w.rho, i).ok()
    })
}

/// The branch under which (ρ, ρ₁…ρₙ) is a valid witness, if any.
pub fn classify_witness(p: &Problem, rho: &[Symbol], per_agent: &[Word]) -> Option<Branch> {
    [Branch::BadConfused, Branch::GoodConfused]
        .into_iter()
        .find(|&branch| {
            validate_witness(
                p,
                &OctWitness {
                    branch,
                    rho: rho.to_vec(),
                    per_agent: per_agent.to_vec(),
                },
            )
        })
}

/// Per-agent determinized projections Pᵢ(K) and Pᵢ(L−K), over Σᵢ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentView {
    pub good: Dfa,
    pub bad: Dfa,
}

impl AgentView {
    pub fn new(p: &Problem, i: usize) -> Result<Self> {
        let arch = p.arch();
        Ok(AgentView {
            good: determinize(&arch.project_automaton(&p.spec().to_nfa(), i)?),
            bad: determinize(&arch.project_automaton(&p.bad().to_nfa(), i)?),
        })
    }
}

/// Precomputed projections for evaluating `cantell` on many words.
#[derive(Debug, Clone)]
pub struct Analysis<'p> {
    problem: &'p Problem,
    views: Vec<AgentView>,
}

impl<'p> Analysis<'p> {
    pub fn new(problem: &'p Problem) -> Result<Self> {
        let views = (0..problem.agent_count())
            .map(|i| AgentView::new(problem, i))
            .collect::<Result<_>>()?;
        Ok(Analysis { problem, views })
    }

    pub fn view(&self, i: usize) -> Result<&AgentView> {
        self.views.get(i).ok_or(Error::AgentOutOfRange {
            index: i,
            count: self.views.len(),
        })
    }

    /// Whether agent `i` can tell the class of `rho` from Pᵢ(ρ).
    pub fn cantell(&self, i: usize, rho: &[Symbol]) -> Result<bool> {
        let p = self.problem;
        let class = p.classify(rho).ok_or_else(|| Error::NotInPlant {
            word: p.alphabet().display_word(rho),
        })?;
        let view = self.view(i)?;
        let sigma = p.arch().project_word(rho, i)?;
        Ok(match class {
            Class::Good => !view.bad.accepts(&sigma),
            Class::Bad => !view.good.accepts(&sigma),
        })
    }
}

pub fn cantell(p: &Problem, i: usize, rho: &[Symbol]) -> Result<bool> {
    Analysis::new(p)?.cantell(i, rho)
}

/// Result of a bounded search for a joint-observability counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoResult {
    /// (ρ ∈ K, ρ′ ∈ L − K) with equal projections for every agent.
    pub counterexample: Option<(Word, Word)>,
    pub searched_to: usize,
}

/// Words of `dfa` up to `max_len` in shortlex order, skipping prefixes
/// that cannot reach acceptance.
fn accepted_shortlex(dfa: &Dfa, max_len: usize, mut visit: impl FnMut(&Word) -> bool) {
    let live = dfa.live_states();
    if !live[dfa.initial()] {
        return;
    }
    let mut layer: Vec<(Word, usize)> = vec![(Vec::new(), dfa.initial())];
    for len in 0..=max_len {
        for (w, q) in &layer {
            if dfa.is_accepting(*q) && !visit(w) {
                return;
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (w, q) in &layer {
            for s in dfa.alphabet().symbols() {
                let t = dfa.next(*q, s);
                if live[t] {
                    let mut v = w.clone();
                    v.push(s);
                    next.push((v, t));
                }
            }
        }
        layer = next;
    }
}

/// Searches for ρ ∈ K and ρ′ ∈ L − K, both of length at most `max_len`,
/// that every agent sees identically.
///
/// L − K words are indexed by their projection tuple (keeping the
/// shortlex-least per tuple); K words are then scanned in shortlex order,
/// so the reported pair has the shortlex-least ρ and, for it, the
/// shortlex-least ρ′. Finding nothing is not a proof of JO.
pub fn check_jo_bounded(p: &Problem, max_len: usize) -> Result<JoResult> {
    let arch = p.arch();
    let key = |w: &Word| -> Vec<Word> {
        (0..arch.agent_count())
            .map(|i| arch.project_word(w, i).expect("agent index in range"))
            .collect()
    };
    let mut bad_by_view: HashMap<Vec<Word>, Word> = HashMap::new();
    accepted_shortlex(p.bad(), max_len, |w| {
        bad_by_view.entry(key(w)).or_insert_with(|| w.clone());
        true
    });
    let mut counterexample = None;
    if !bad_by_view.is_empty() {
        accepted_shortlex(p.spec(), max_len, |w| match bad_by_view.get(&key(w)) {
            Some(other) => {
                counterexample = Some((w.clone(), other.clone()));
                false
            }
            None => true,
        });
    }
    Ok(JoResult {
        counterexample,
        searched_to: max_len,
    })
}
