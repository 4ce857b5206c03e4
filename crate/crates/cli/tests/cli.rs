use std::path::PathBuf;

use octkit_cli::{run, EXIT_FAILS, EXIT_HOLDS, EXIT_INPUT};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.oct"))
        .display()
        .to_string()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn octkit(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("octkit").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut with = args.to_vec();
    with.push("--json");
    let r = octkit(&with);
    (
        r.code,
        serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("{e}: {}", r.out)),
    )
}

#[test]
fn check_oct_golden() {
    let r = octkit(&["check-oct", &fixture("prefix")]);
    assert_eq!(r.code, EXIT_FAILS);
    assert_eq!(
        r.out,
        "\
OCT fails
holds: false
witness:
  branch: BAD_CONFUSED
  failed_inclusion: A1 ⊆ K
  rho: b
  per_agent:
    A1: ε
    A2: ab
a1_states: 36
a2_states: 64
"
    );
    let (code, v) = json(&["check-oct", &fixture("prefix")]);
    assert_eq!(code, EXIT_FAILS);
    assert_eq!(v["witness"]["rho"], "b");
    assert_eq!(v["witness"]["per_agent"][0]["word"], "");
    assert_eq!(v["witness"]["per_agent"][1]["word"], "ab");

    assert_eq!(octkit(&["check-oct", &fixture("split")]).code, EXIT_HOLDS);
    let (_, v) = json(&["check-oct", &fixture("swap")]);
    assert_eq!(v["witness"]["rho"], "ba");
}

#[test]
fn check_jo() {
    let r = octkit(&["check-jo", &fixture("swap"), "--max-len", "3"]);
    assert_eq!(r.code, EXIT_FAILS);
    assert!(r.out.contains("good: ab\n  bad: ba"), "{}", r.out);
    let r = octkit(&["check-jo", &fixture("prefix"), "--max-len", "12"]);
    assert_eq!(r.code, EXIT_HOLDS);
    assert!(r.out.starts_with("no counterexample up to 12"));
    // ε ∈ K and ε ∉ L − K: nothing at length 0
    assert_eq!(
        octkit(&["check-jo", &fixture("prefix"), "--max-len", "0"]).code,
        EXIT_HOLDS
    );
}

#[test]
fn synth_writes_observers() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("obs");
    let out_s = out.display().to_string();
    let r = octkit(&["synth", &fixture("prefix"), "--out", &out_s]);
    assert_eq!(r.code, EXIT_HOLDS);
    assert!(r.err.contains("sound but not complete"));
    let a2 = std::fs::read_to_string(out.join("observer_A2.txt")).unwrap();
    assert_eq!(
        a2,
        "\
# observer for agent A2
agent: 2
alphabet: b
states: 2
initial: 0
accepting: 0 1
trans: 0 b 1
trans: 1 b 1
label: 0 Y
label: 1 U
"
    );

    let r = octkit(&["synth", &fixture("prefix_k_eq_l"), "--out", &out_s]);
    assert!(r.err.is_empty());
    for name in ["A1", "A2"] {
        let text = std::fs::read_to_string(out.join(format!("observer_{name}.txt"))).unwrap();
        assert!(!text.contains(" N\n"), "{text}");
    }

    let (_, v) = json(&["synth", &fixture("split"), "--out", &out_s]);
    for o in v["observers"].as_array().unwrap() {
        let l = &o["labels"];
        assert!(l["Y"].as_u64().unwrap() + l["N"].as_u64().unwrap() > 0);
    }

    // a regular file where the directory should go
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let r = octkit(&[
        "synth",
        &fixture("split"),
        "--out",
        &blocker.join("x").display().to_string(),
    ]);
    assert_eq!(r.code, EXIT_INPUT);
}

#[test]
fn observe_and_run() {
    let r = octkit(&["observe", &fixture("prefix"), "--agent", "2", "--input", ""]);
    assert_eq!(
        (r.code, r.out.as_str()),
        (0, "agent: A2\ninput: ε\nverdict: Y\n")
    );
    let r = octkit(&[
        "observe",
        &fixture("prefix"),
        "--agent",
        "A2",
        "--input",
        "b",
    ]);
    assert!(r.out.ends_with("verdict: U\n"));
    assert_eq!(
        octkit(&[
            "observe",
            &fixture("prefix"),
            "--agent",
            "A2",
            "--input",
            "a"
        ])
        .code,
        EXIT_INPUT
    );
    assert_eq!(
        octkit(&["observe", &fixture("prefix"), "--agent", "9", "--input", ""]).code,
        EXIT_INPUT
    );

    let r = octkit(&["run", &fixture("prefix"), "--word", "abb"]);
    assert_eq!(
        r.out,
        "word: abb\nper_agent:\n  A1: U\n  A2: U\noverall: U\n"
    );
    let (_, v) = json(&["run", &fixture("split"), "--word", "bb"]);
    assert_eq!(v["overall"], "N");
    let r = octkit(&["run", &fixture("prefix"), "--word", "ba"]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("not in L"));
}

#[test]
fn validate_witness() {
    let f = fixture("prefix");
    let ok = |extra: &[&str]| {
        let mut args = vec![
            "validate-witness",
            f.as_str(),
            "--rho",
            "abb",
            "--agent-word",
            "ab",
            "--agent-word",
            "abab",
        ];
        args.extend_from_slice(extra);
        octkit(&args)
    };
    let r = ok(&["--branch", "BAD_CONFUSED"]);
    assert_eq!(r.code, EXIT_HOLDS, "{}", r.out);
    assert!(r.out.contains("branch: BAD_CONFUSED"));
    assert_eq!(ok(&[]).code, EXIT_HOLDS);
    assert_eq!(ok(&["--branch", "GOOD_CONFUSED"]).code, EXIT_FAILS);
    assert_eq!(ok(&["--branch", "sideways"]).code, EXIT_INPUT);

    let r = octkit(&[
        "validate-witness",
        &f,
        "--rho",
        "abb",
        "--agent-word",
        "ab",
        "--agent-word",
        "ab",
    ]);
    assert_eq!(r.code, EXIT_FAILS);
    let r = octkit(&["validate-witness", &f, "--rho", "abb", "--agent-word", "ab"]);
    assert_eq!(r.code, EXIT_INPUT);
    let r = octkit(&[
        "validate-witness",
        &f,
        "--rho",
        "b",
        "--agent-word",
        "",
        "--agent-word",
        "ab",
    ]);
    assert_eq!(r.code, EXIT_HOLDS);
}

#[test]
fn oracle_compare() {
    for name in ["prefix", "swap", "split"] {
        let r = octkit(&[
            "oracle-compare",
            &fixture(name),
            "--trials",
            "3",
            "--seed",
            "11",
        ]);
        assert_eq!(r.code, EXIT_HOLDS, "{name}: {}", r.out);
    }
    let r = octkit(&["oracle-compare", &fixture("prefix"), "--oracle-cap", "10"]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("too large for oracle"));
}

#[test]
fn input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.oct");
    std::fs::write(&bad, "[plant]\nalphabet: a\nstates: x\n").unwrap();
    let r = octkit(&["check-oct", &bad.display().to_string()]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("line 3"), "{}", r.err);

    let missing = dir.path().join("nope.oct");
    assert_eq!(
        octkit(&["check-oct", &missing.display().to_string()]).code,
        EXIT_INPUT
    );
    assert_eq!(octkit(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(octkit(&["check-jo", &fixture("swap")]).code, EXIT_INPUT);

    let outside = dir.path().join("outside.oct");
    std::fs::write(
        &outside,
        "[plant]\nalphabet: a b\nstates: 3\ninitial: 0\naccepting: 2\ntrans: 0 a 1\ntrans: 1 b 2\n\
         [spec]\nalphabet: a b\nstates: 3\ninitial: 0\naccepting: 2\ntrans: 0 b 1\ntrans: 1 a 2\n[agent x] a\n",
    )
    .unwrap();
    let r = octkit(&["check-oct", &outside.display().to_string()]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("K not a subset of L, witness: ba"));
}

/// Every field of a JSON report shows up in the text report.
fn assert_fields_match(args: &[&str]) {
    let text = octkit(args).out;
    let (_, v) = json(args);
    fn walk(v: &Value, text: &str, top: bool, args: &[&str]) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    if top && !x.is_null() {
                        assert!(
                            text.contains(&format!("{k}:")),
                            "{args:?}: key {k} missing in\n{text}"
                        );
                    }
                    walk(x, text, false, args);
                }
            }
            Value::Array(xs) => xs.iter().for_each(|x| walk(x, text, false, args)),
            Value::String(s) if !s.is_empty() => {
                assert!(
                    text.contains(s.as_str()),
                    "{args:?}: value {s} missing in\n{text}"
                )
            }
            Value::Number(n) => assert!(text.contains(&n.to_string()), "{args:?}: {n} missing"),
            Value::Bool(b) => assert!(text.contains(&b.to_string()), "{args:?}: {b} missing"),
            _ => {}
        }
    }
    walk(&v, &text, true, args);
}

#[test]
fn json_reports_mirror_text() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    for (name, word) in [("prefix", "ab"), ("swap", "ab"), ("split", "a")] {
        let f = fixture(name);
        assert_fields_match(&["check-oct", &f]);
        assert_fields_match(&["check-jo", &f, "--max-len", "4"]);
        assert_fields_match(&["synth", &f, "--out", &out]);
        assert_fields_match(&["observe", &f, "--agent", "1", "--input", "a"]);
        assert_fields_match(&["run", &f, "--word", word]);
        assert_fields_match(&["oracle-compare", &f, "--trials", "2", "--max-len", "3"]);
    }
    assert_fields_match(&[
        "validate-witness",
        &fixture("prefix"),
        "--rho",
        "abb",
        "--agent-word",
        "ab",
        "--agent-word",
        "abab",
    ]);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_octkit");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap();
    let o = status(&["check-oct", &fixture("prefix")]);
    assert_eq!(o.status.code(), Some(EXIT_FAILS));
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        octkit(&["check-oct", &fixture("prefix")]).out
    );
    assert_eq!(
        status(&["check-oct", &fixture("split")]).status.code(),
        Some(EXIT_HOLDS)
    );
    assert_eq!(
        status(&["check-oct", "/nonexistent.oct"]).status.code(),
        Some(EXIT_INPUT)
    );
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}
