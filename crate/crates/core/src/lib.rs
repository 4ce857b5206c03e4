//! Decentralized observation of regular languages: deciding whether, for
//! every word of a plant language, at least one agent can tell from its
//! local view whether the word lies in the specification.

pub mod alphabet;
pub mod automata;
pub mod checker;
pub mod error;
pub mod fixtures;
pub mod observer;
pub mod oracle;
pub mod problem;
pub mod projection;
pub mod random;

pub use alphabet::{Alphabet, Symbol, Word};
pub use automata::{Dfa, Nfa, StateId};
pub use checker::{
    cantell, check_jo_bounded, check_oct, validate_witness, Analysis, Branch, JoResult, OctResult,
    OctWitness,
};
pub use error::{Error, Result};
pub use observer::{
    run_decentralized, synth_observer, synth_observers, verify_altoct, Observer, Verdict,
};
pub use oracle::{oracle_cantell, oracle_check_oct, oracle_f, Oracle};
pub use problem::{Class, Problem};
pub use projection::{Agent, ObservationArchitecture};
