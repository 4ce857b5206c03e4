//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use octkit::checker::check_oct;
use octkit::observer::{synth_observers, verify_altoct};
use octkit::random::{random_problem, RandomParams};
use octkit::{check_jo_bounded, fixtures, ObservationArchitecture, Problem};
use octkit_cli::compare::{compare, CompareOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 200;
const CORPUS_SEED: u64 = 0x0c7;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.oct"))
}

struct Output {
    code: Option<i32>,
    stdout: String,
    stderr: String,
}

fn octkit(args: &[&str]) -> Output {
    let o = Command::new(env!("CARGO_BIN_EXE_octkit"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: o.status.code(),
        stdout: String::from_utf8_lossy(&o.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&o.stderr).into_owned(),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Vec<(String, Problem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut out: Vec<(String, Problem)> = (0..CORPUS_SIZE)
        .map(|k| {
            (
                format!("random #{k}"),
                random_problem(&mut rng, RandomParams::default()),
            )
        })
        .collect();
    for (name, text) in fixtures::ALL {
        out.push((
            name.to_string(),
            Problem::parse(text).expect("fixture parses"),
        ));
    }
    out
}

fn example_reproduction() -> Outcome {
    let f = fixture_path("prefix").display().to_string();
    let start = Instant::now();
    let oct = octkit(&["check-oct", &f]);
    let witness = octkit(&[
        "validate-witness",
        &f,
        "--rho",
        "abb",
        "--agent-word",
        "ab",
        "--agent-word",
        "abab",
        "--branch",
        "BAD_CONFUSED",
    ]);
    let jo = octkit(&["check-jo", &f, "--max-len", "12"]);
    let elapsed = start.elapsed();
    ensure(oct.code == Some(1), || {
        format!("check-oct exited {:?}", oct.code)
    })?;
    ensure(
        witness.code == Some(0) && witness.stdout.contains("BAD_CONFUSED"),
        || {
            format!(
                "validate-witness exited {:?}: {}",
                witness.code, witness.stdout
            )
        },
    )?;
    ensure(jo.code == Some(0), || {
        format!("check-jo exited {:?}: {}", jo.code, jo.stdout)
    })?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{:.3} s for all three commands",
        elapsed.as_secs_f64()
    ))
}

fn projection_golden() -> Outcome {
    let arch = ObservationArchitecture::new(
        octkit::Alphabet::new(["a", "b"]).unwrap(),
        [("A1", vec!["a"]), ("A2", vec!["b"])],
    )
    .map_err(|e| e.to_string())?;
    let g = arch.global();
    let project = |w: &str| -> Result<String, String> {
        let word = g.parse_word(w).map_err(|e| e.to_string())?;
        let local = arch.project_word(&word, 0).map_err(|e| e.to_string())?;
        Ok(arch.agent(0).unwrap().alphabet().format_word(&local))
    };
    let (x, y) = (project("abbab")?, project("bb")?);
    ensure(x == "aa" && y.is_empty(), || format!("got {x:?} and {y:?}"))?;
    Ok("P1(abbab) = aa, P1(bb) = ε".into())
}

fn oracle_equivalence(corpus: &[(String, Problem)]) -> Outcome {
    let start = Instant::now();
    let (mut cantell, mut verdicts) = (0, 0);
    for (name, p) in corpus {
        let c = compare(p, CompareOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.disagreements.is_empty(), || {
            format!("{name}: {:?}", c.disagreements)
        })?;
        cantell += c.cantell_checked;
        verdicts += c.verdicts_checked;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} instances, {cantell} cantell and {verdicts} verdict comparisons, {:.1} s",
        corpus.len(),
        elapsed.as_secs_f64()
    ))
}

fn altoct() -> Outcome {
    let mut notes = Vec::new();
    for (name, text) in fixtures::ALL {
        let p = Problem::parse(text).unwrap();
        let holds = check_oct(&p).map_err(|e| e.to_string())?.holds();
        let observers = synth_observers(&p).map_err(|e| e.to_string())?;
        let r = verify_altoct(&p, &observers, 8).map_err(|e| e.to_string())?;
        ensure(r.soundness.is_empty(), || {
            format!("{name}: soundness {:?}", r.soundness)
        })?;
        if holds {
            ensure(r.completeness.is_empty(), || {
                format!("{name}: completeness {:?}", r.completeness)
            })?;
        }
        if name == "prefix" {
            let abb = p.alphabet().parse_word("abb").unwrap();
            ensure(r.completeness.contains(&abb), || {
                "prefix: abb not reported".into()
            })?;
        }
        notes.push(format!("{name} {}/{}", r.checked, r.completeness.len()));
    }
    Ok(format!("words checked/incomplete: {}", notes.join(", ")))
}

fn oct_implies_jo(corpus: &[(String, Problem)]) -> Outcome {
    let mut holding = 0;
    for (name, p) in corpus {
        if check_oct(p).map_err(|e| e.to_string())?.holds() {
            holding += 1;
            let jo = check_jo_bounded(p, 10).map_err(|e| e.to_string())?;
            ensure(jo.counterexample.is_none(), || {
                format!("{name}: {:?}", jo.counterexample)
            })?;
        }
    }
    Ok(format!(
        "{holding} instances satisfy OCT, none has a JO counterexample up to 10"
    ))
}

fn structural_bounds(corpus: &[(String, Problem)]) -> Outcome {
    for (name, p) in corpus {
        let r = check_oct(p).map_err(|e| e.to_string())?;
        let (m, pl, n) = (
            p.spec().state_count(),
            p.plant().state_count(),
            p.agent_count() as u32,
        );
        ensure(r.a1_states <= m.pow(n) * pl, || {
            format!("{name}: a1 {} > {}", r.a1_states, m.pow(n) * pl)
        })?;
        ensure(r.a2_states <= (pl * m).pow(n) * pl, || {
            format!("{name}: a2 {} > {}", r.a2_states, (pl * m).pow(n) * pl)
        })?;
    }
    Ok(format!("{} instances within bounds", corpus.len()))
}

fn snapshot(out: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(out)
        .map(|rd| {
            rd.map(|e| {
                let e = e.unwrap();
                (
                    e.file_name().to_string_lossy().into_owned(),
                    std::fs::read(e.path()).unwrap(),
                )
            })
            .collect()
        })
        .unwrap_or_default();
    files.sort();
    files
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs = 0;
    for (name, _) in fixtures::ALL {
        let f = fixture_path(name).display().to_string();
        let out = tmp.path().join(name);
        let out_s = out.display().to_string();
        let commands: Vec<Vec<&str>> = vec![
            vec!["check-oct", &f],
            vec!["check-jo", &f, "--max-len", "6"],
            vec!["synth", &f, "--out", &out_s],
            vec!["observe", &f, "--agent", "1", "--input", "a"],
            vec!["run", &f, "--word", "ab"],
            vec![
                "validate-witness",
                &f,
                "--rho",
                "abb",
                "--agent-word",
                "ab",
                "--agent-word",
                "abab",
            ],
            vec![
                "oracle-compare",
                &f,
                "--trials",
                "3",
                "--seed",
                "5",
                "--max-len",
                "4",
            ],
        ];
        for args in commands {
            for json in [false, true] {
                let mut args = args.clone();
                if json {
                    args.push("--json");
                }
                let _ = std::fs::remove_dir_all(&out);
                let first = octkit(&args);
                let files_first = snapshot(&out);
                let _ = std::fs::remove_dir_all(&out);
                let second = octkit(&args);
                let files_second = snapshot(&out);
                ensure(
                    first.code == second.code
                        && first.stdout == second.stdout
                        && first.stderr == second.stderr
                        && files_first == files_second,
                    || format!("{args:?} differs between runs"),
                )?;
                runs += 1;
            }
        }
    }
    Ok(format!(
        "{runs} command lines byte-identical across two runs"
    ))
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 example reproduction", Box::new(example_reproduction)),
        ("2 projection golden values", Box::new(projection_golden)),
        (
            "3 oracle equivalence",
            Box::new(|| oracle_equivalence(&corpus)),
        ),
        ("4 ALTOCT verification", Box::new(altoct)),
        ("5 OCT implies JO", Box::new(|| oct_implies_jo(&corpus))),
        (
            "6 structural bounds",
            Box::new(|| structural_bounds(&corpus)),
        ),
        ("7 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
