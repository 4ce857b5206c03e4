//! Seeded generation of small random problems, used for differential
//! testing against the oracle.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::alphabet::{Alphabet, Symbol};
use crate::automata::{Dfa, StateId};
use crate::problem::Problem;
use crate::projection::ObservationArchitecture;

const LETTERS: [&str; 3] = ["a", "b", "c"];

#[derive(Debug, Clone, Copy)]
pub struct RandomParams {
    pub max_states: usize,
    /// At most 3.
    pub max_letters: usize,
    pub agents: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_states: 4,
            max_letters: 3,
            agents: 2,
        }
    }
}

fn random_dfa<R: Rng>(rng: &mut R, alphabet: &Alphabet, states: usize) -> Dfa {
    let accepting = (0..states).map(|_| rng.gen_bool(0.5)).collect();
    let table = (0..states * alphabet.len())
        .map(|_| rng.gen_range(0..states))
        .collect();
    Dfa::new(alphabet.clone(), 0, accepting, table).expect("well-formed random DFA")
}

fn table_of(dfa: &Dfa) -> Vec<StateId> {
    (0..dfa.state_count())
        .flat_map(|q| dfa.alphabet().symbols().map(move |s| dfa.next(q, s)))
        .collect()
}

fn accepting_of(dfa: &Dfa) -> Vec<bool> {
    (0..dfa.state_count())
        .map(|q| dfa.is_accepting(q))
        .collect()
}

fn random_agents<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    count: usize,
) -> Vec<(String, Vec<String>)> {
    (0..count)
        .map(|i| {
            let letters = alphabet
                .letters()
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .cloned()
                .collect();
            (format!("A{}", i + 1), letters)
        })
        .collect()
}

/// A random problem. The specification is either a sub-acceptance copy of
/// the plant or an independent DFA that happens to be included in it.
///
/// Uniform DFAs mostly give K = ∅ or K = L, so such draws are kept only
/// one time in ten.
pub fn random_problem<R: Rng>(rng: &mut R, params: RandomParams) -> Problem {
    let mut draw = draw_problem(rng, params);
    if rng.gen_bool(0.1) {
        return draw;
    }
    for _ in 0..200 {
        if !draw.spec().is_empty() && !draw.bad().is_empty() {
            break;
        }
        draw = draw_problem(rng, params);
    }
    draw
}

fn draw_problem<R: Rng>(rng: &mut R, params: RandomParams) -> Problem {
    let letters = rng.gen_range(1..=params.max_letters.clamp(1, LETTERS.len()));
    let alphabet = Alphabet::new(LETTERS[..letters].iter().copied()).expect("fixed letters");
    let states = rng.gen_range(1..=params.max_states);
    let plant = random_dfa(rng, &alphabet, states);
    let arch = ObservationArchitecture::new(
        alphabet.clone(),
        random_agents(rng, &alphabet, params.agents),
    )
    .expect("agents over the global alphabet");

    if rng.gen_bool(0.5) {
        for _ in 0..50 {
            let states = rng.gen_range(1..=params.max_states);
            let spec = random_dfa(rng, &alphabet, states);
            if let Ok(p) = Problem::new(plant.clone(), spec, arch.clone()) {
                return p;
            }
        }
    }
    let accepting = accepting_of(&plant)
        .into_iter()
        .map(|a| a && rng.gen_bool(0.6))
        .collect();
    let spec =
        Dfa::new(alphabet, plant.initial(), accepting, table_of(&plant)).expect("copy of plant");
    Problem::new(plant, spec, arch).expect("sub-acceptance spec is included in the plant")
}

/// A small random edit of `p`: one flipped accepting bit, one redirected
/// transition, or one letter toggled in an agent's subalphabet. Edits that
/// would break K ⊆ L are retried; after repeated failure `p` is returned.
pub fn mutate<R: Rng>(p: &Problem, rng: &mut R) -> Problem {
    let alphabet = p.alphabet().clone();
    for _ in 0..100 {
        let mut plant = (accepting_of(p.plant()), table_of(p.plant()));
        let mut spec = (accepting_of(p.spec()), table_of(p.spec()));
        let mut agents: Vec<(String, Vec<String>)> = p
            .arch()
            .agents()
            .iter()
            .map(|a| (a.name().to_string(), a.alphabet().letters().to_vec()))
            .collect();
        match rng.gen_range(0..5) {
            0 | 1 => {
                let target = if rng.gen_bool(0.5) {
                    &mut plant
                } else {
                    &mut spec
                };
                let q = rng.gen_range(0..target.0.len());
                target.0[q] = !target.0[q];
            }
            2 | 3 => {
                let target = if rng.gen_bool(0.5) {
                    &mut plant
                } else {
                    &mut spec
                };
                let states = target.0.len();
                let slot = rng.gen_range(0..target.1.len());
                target.1[slot] = rng.gen_range(0..states);
            }
            _ => {
                let (_, letters) = agents.choose_mut(rng).expect("at least one agent");
                let s = Symbol(rng.gen_range(0..alphabet.len() as u32));
                let letter = alphabet.letter(s).to_string();
                if let Some(pos) = letters.iter().position(|l| *l == letter) {
                    letters.remove(pos);
                } else {
                    letters.push(letter);
                }
            }
        }
        let build = |(acc, table): (Vec<bool>, Vec<StateId>), init| {
            Dfa::new(alphabet.clone(), init, acc, table)
        };
        let (Ok(plant), Ok(spec)) = (
            build(plant, p.plant().initial()),
            build(spec, p.spec().initial()),
        ) else {
            continue;
        };
        let Ok(arch) = ObservationArchitecture::new(alphabet.clone(), agents) else {
            continue;
        };
        if let Ok(q) = Problem::new(plant, spec, arch) {
            return q;
        }
    }
    p.clone()
}
