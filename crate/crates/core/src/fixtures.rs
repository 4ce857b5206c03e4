//! Reference instances shipped with the crate.

use crate::problem::Problem;

/// K = (ab)*, L = (ab)*b*, agents observing `a` and `b`. JO holds, OCT fails.
pub const PREFIX: &str = include_str!("../fixtures/prefix.oct");
/// K = {ab}, L = {ab, ba}, agents observing `a` and `b`. OCT and JO fail.
pub const SWAP: &str = include_str!("../fixtures/swap.oct");
/// K = a*, L = a* ∪ b⁺, agents observing `a` and `b`. OCT holds.
pub const SPLIT: &str = include_str!("../fixtures/split.oct");
/// K = L = (ab)*b*.
pub const PREFIX_K_EQ_L: &str = include_str!("../fixtures/prefix_k_eq_l.oct");
/// The `PREFIX` languages with one agent observing all of Σ.
pub const PREFIX_FULL: &str = include_str!("../fixtures/prefix_full.oct");

/// (name, text) of every shipped instance.
pub const ALL: [(&str, &str); 5] = [
    ("prefix", PREFIX),
    ("swap", SWAP),
    ("split", SPLIT),
    ("prefix_k_eq_l", PREFIX_K_EQ_L),
    ("prefix_full", PREFIX_FULL),
];

pub fn prefix() -> Problem {
    Problem::parse(PREFIX).expect("fixture parses")
}

pub fn swap() -> Problem {
    Problem::parse(SWAP).expect("fixture parses")
}

pub fn split() -> Problem {
    Problem::parse(SPLIT).expect("fixture parses")
}

pub fn prefix_k_eq_l() -> Problem {
    Problem::parse(PREFIX_K_EQ_L).expect("fixture parses")
}

pub fn prefix_full() -> Problem {
    Problem::parse(PREFIX_FULL).expect("fixture parses")
}
