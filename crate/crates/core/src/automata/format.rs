//! Line-oriented text format for automata.
//!
//! ```text
//! alphabet: a b
//! states: 3
//! initial: 0
//! accepting: 0 2
//! trans: 0 a 1
//! trans: 1 b 0
//! ```
//!
//! `#` starts a comment. The label `eps` denotes ε and is only accepted
//! where the caller allows it (dumps of intermediate automata).

use std::fmt::Write as _;

use super::dfa::Dfa;
use super::nfa::{Label, Nfa, StateId};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

pub const EPSILON: &str = "eps";

/// Strips a `#` comment and surrounding whitespace (including a CR).
pub fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

/// Splits the content of a file into numbered, comment-free, non-blank lines.
pub fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn label_name(alphabet: &Alphabet, label: Label) -> &str {
    match label {
        Label::Eps => EPSILON,
        Label::Sym(s) => alphabet.letter(s),
    }
}

fn write_header(out: &mut String, alphabet: &Alphabet, states: usize) {
    if alphabet.is_empty() {
        out.push_str("alphabet:\n");
    } else {
        let _ = writeln!(out, "alphabet: {}", alphabet.letters().join(" "));
    }
    let _ = writeln!(out, "states: {states}");
}

fn write_list(out: &mut String, key: &str, ids: impl Iterator<Item = StateId>) {
    let ids: Vec<String> = ids.map(|q| q.to_string()).collect();
    if ids.is_empty() {
        let _ = writeln!(out, "{key}:");
    } else {
        let _ = writeln!(out, "{key}: {}", ids.join(" "));
    }
}

pub fn write_nfa(nfa: &Nfa) -> String {
    let mut out = String::new();
    write_header(&mut out, nfa.alphabet(), nfa.state_count());
    write_list(&mut out, "initial", nfa.initial().iter().copied());
    write_list(&mut out, "accepting", nfa.accepting_states());
    for (src, label, dst) in nfa.transitions() {
        let _ = writeln!(
            out,
            "trans: {src} {} {dst}",
            label_name(nfa.alphabet(), label)
        );
    }
    out
}

pub fn write_dfa(dfa: &Dfa) -> String {
    let mut out = String::new();
    write_header(&mut out, dfa.alphabet(), dfa.state_count());
    write_list(&mut out, "initial", std::iter::once(dfa.initial()));
    write_list(
        &mut out,
        "accepting",
        (0..dfa.state_count()).filter(|&q| dfa.is_accepting(q)),
    );
    for q in 0..dfa.state_count() {
        for s in dfa.alphabet().symbols() {
            let _ = writeln!(
                out,
                "trans: {q} {} {}",
                dfa.alphabet().letter(s),
                dfa.next(q, s)
            );
        }
    }
    out
}

fn parse_state(line: usize, token: &str) -> Result<StateId> {
    token
        .parse()
        .map_err(|_| Error::syntax(line, format!("expected a state id, found `{token}`")))
}

/// Parses the lines of one automaton. Every line must be a `key: value`
/// pair of the format; `alphabet` and `states` are mandatory.
pub fn parse_lines(lines: &[(usize, &str)], allow_eps: bool) -> Result<Nfa> {
    let first_line = lines.first().map_or(0, |l| l.0);
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<Vec<StateId>> = None;
    let mut accepting: Option<Vec<StateId>> = None;
    let mut raw_trans: Vec<(usize, StateId, &str, StateId)> = Vec::new();

    for &(line, text) in lines {
        let (key, value) = text
            .split_once(':')
            .ok_or_else(|| Error::syntax(line, format!("expected `key: value`, found `{text}`")))?;
        let tokens: Vec<&str> = value.split_whitespace().collect();
        let duplicate = || Error::syntax(line, format!("duplicate `{}` line", key.trim()));
        match key.trim() {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(duplicate());
                }
                let a = Alphabet::new(tokens.iter().copied())
                    .map_err(|e| Error::syntax(line, e.to_string()))?;
                alphabet = Some(a);
            }
            "states" => {
                if states.is_some() {
                    return Err(duplicate());
                }
                let [n] = tokens[..] else {
                    return Err(Error::syntax(line, "expected `states: <count>`"));
                };
                states = Some(
                    n.parse()
                        .map_err(|_| Error::syntax(line, format!("bad state count `{n}`")))?,
                );
            }
            "initial" | "accepting" => {
                let slot = if key.trim() == "initial" {
                    &mut initial
                } else {
                    &mut accepting
                };
                if slot.is_some() {
                    return Err(duplicate());
                }
                *slot = Some(
                    tokens
                        .iter()
                        .map(|t| parse_state(line, t))
                        .collect::<Result<_>>()?,
                );
            }
            "trans" => {
                let [src, label, dst] = tokens[..] else {
                    return Err(Error::syntax(line, "expected `trans: <src> <label> <dst>`"));
                };
                raw_trans.push((
                    line,
                    parse_state(line, src)?,
                    label,
                    parse_state(line, dst)?,
                ));
            }
            other => return Err(Error::syntax(line, format!("unknown key `{other}`"))),
        }
    }

    let alphabet = alphabet.ok_or_else(|| Error::syntax(first_line, "missing `alphabet:` line"))?;
    let states = states.ok_or_else(|| Error::syntax(first_line, "missing `states:` line"))?;
    let mut transitions = Vec::with_capacity(raw_trans.len());
    for (line, src, label, dst) in raw_trans {
        let label = if label == EPSILON {
            if !allow_eps {
                return Err(Error::syntax(line, "ε-transitions are not allowed here"));
            }
            Label::Eps
        } else {
            Label::Sym(
                alphabet
                    .symbol(label)
                    .ok_or_else(|| Error::syntax(line, format!("unknown letter `{label}`")))?,
            )
        };
        for q in [src, dst] {
            if q >= states {
                return Err(Error::syntax(line, format!("state {q} out of range")));
            }
        }
        transitions.push((src, label, dst));
    }
    let initial = initial.unwrap_or_default();
    let accepting = accepting.unwrap_or_default();
    if let Some(&q) = initial.iter().chain(&accepting).find(|&&q| q >= states) {
        return Err(Error::syntax(first_line, format!("state {q} out of range")));
    }
    Nfa::new(alphabet, states, initial, accepting, transitions)
}

/// Parses a standalone automaton dump (ε allowed).
pub fn parse_nfa(text: &str) -> Result<Nfa> {
    parse_lines(&content_lines(text), true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::complete;

    const AB_STAR: &str = "\
# (ab)*, partial
alphabet: a b
states: 2
initial: 0
accepting: 0
trans: 0 a 1
trans: 1 b 0   # back
";

    #[test]
    fn parses_and_writes() {
        let nfa = parse_nfa(AB_STAR).unwrap();
        assert_eq!(nfa.state_count(), 2);
        assert!(nfa.accepts_str("abab").unwrap());
        assert_eq!(parse_nfa(&write_nfa(&nfa)).unwrap(), nfa);
        let dfa = complete(&nfa).unwrap();
        let again = complete(&parse_nfa(&write_dfa(&dfa)).unwrap()).unwrap();
        assert_eq!(again, dfa);
    }

    #[test]
    fn crlf_and_eps() {
        let text = "alphabet: a\r\nstates: 2\r\ninitial: 0\r\naccepting: 1\r\ntrans: 0 eps 1\r\n";
        let nfa = parse_nfa(text).unwrap();
        assert!(nfa.accepts(&[]));
        let err = parse_lines(&content_lines(text), false).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 5, .. }), "{err:?}");
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let bad = "alphabet: a b\nstates: 2\ntrans: 0 c 1\n";
        assert!(matches!(parse_nfa(bad), Err(Error::Syntax { line: 3, .. })));
        let bad = "alphabet: a b\nstates: x\n";
        assert!(matches!(parse_nfa(bad), Err(Error::Syntax { line: 2, .. })));
        let bad = "alphabet: a b\nalphabet: a\n";
        assert!(matches!(parse_nfa(bad), Err(Error::Syntax { line: 2, .. })));
        assert!(parse_nfa("states: 1\n").is_err());
        assert!(parse_nfa("alphabet: a\nstates: 1\ninitial: 3\n").is_err());
        assert!(parse_nfa("alphabet: a\nstates: 1\nfoo: 3\n").is_err());
    }
}
