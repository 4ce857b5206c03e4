//! Finite automata and the standard constructions on them.

mod dfa;
pub mod format;
mod nfa;
mod ops;

pub use dfa::Dfa;
pub use nfa::{Label, Nfa, StateId};
pub use ops::{
    complete, determinize, is_empty, is_subset, product_intersection, shortest_accepted, Inclusion,
};
