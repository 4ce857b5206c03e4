//! Differential comparison of the automata-based checker against the
//! enumeration oracle on one problem.

use octkit::oracle::{enumerate_words, Oracle};
use octkit::{check_oct, synth_observers, validate_witness, Analysis, Problem, Result};

/// What to compare and how far.
#[derive(Debug, Clone, Copy)]
pub struct CompareOptions {
    /// Longest ρ (for `cantell`) and σ (for observer verdicts) compared.
    pub max_len: usize,
    pub oracle_cap: usize,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            max_len: 6,
            oracle_cap: octkit::oracle::DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Comparison {
    pub oct_holds: bool,
    pub cantell_checked: usize,
    pub verdicts_checked: usize,
    /// Human-readable description of every disagreement, in a fixed order.
    pub disagreements: Vec<String>,
}

pub fn compare(p: &Problem, opts: CompareOptions) -> Result<Comparison> {
    let oracle = Oracle::with_cap(p, opts.oracle_cap);
    let global = p.alphabet();
    let mut cmp = Comparison::default();

    let checked = check_oct(p)?;
    let reference = oracle.check_oct()?;
    cmp.oct_holds = checked.holds();
    if checked.holds() != reference.holds {
        cmp.disagreements.push(format!(
            "OCT: checker says {}, oracle says {}",
            checked.holds(),
            reference.holds
        ));
    }
    if let Some(w) = &reference.witness {
        if !validate_witness(p, w) {
            cmp.disagreements.push(format!(
                "oracle witness {} rejected",
                global.display_word(&w.rho)
            ));
        }
    }

    let analysis = Analysis::new(p)?;
    for rho in enumerate_words(global, opts.max_len) {
        if !p.plant().accepts(&rho) {
            continue;
        }
        for i in 0..p.agent_count() {
            cmp.cantell_checked += 1;
            let (fast, slow) = (analysis.cantell(i, &rho)?, oracle.cantell(i, &rho)?);
            if fast != slow {
                cmp.disagreements.push(format!(
                    "cantell(agent {}, {}): checker {fast}, oracle {slow}",
                    i + 1,
                    global.display_word(&rho)
                ));
            }
        }
    }

    for o in synth_observers(p)? {
        let i = o.agent();
        let local = p.arch().agent(i)?.alphabet();
        for sigma in enumerate_words(local, opts.max_len) {
            cmp.verdicts_checked += 1;
            let (fast, slow) = (o.observe(&sigma)?, oracle.f(i, &sigma)?);
            if fast != slow {
                cmp.disagreements.push(format!(
                    "verdict(agent {}, {}): observer {fast}, oracle {slow}",
                    i + 1,
                    local.display_word(&sigma)
                ));
            }
        }
    }
    Ok(cmp)
}
