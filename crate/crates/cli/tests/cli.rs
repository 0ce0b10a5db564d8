use std::path::{Path, PathBuf};

use nl_cli::{run, ExitStatus};
use proptest::prelude::*;
use serde_json::Value;

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn proofs(rel: &str) -> String {
    repo().join("proofs").join(rel).to_string_lossy().into_owned()
}

fn nl(args: &[&str]) -> (ExitStatus, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nl").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_files(dir: &str) -> Vec<PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(proofs(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn type_of_zero() {
    let (status, out, _) = nl(&["type", "-e", "0", "--prelude", "empty"]);
    assert_eq!(status, ExitStatus::Success);
    assert_eq!(out, "i o\ni\n");
}

#[test]
fn type_positional_and_flag_agree() {
    let fol = proofs("preludes/fol.nl");
    assert_eq!(nl(&["type", "f", "--prelude", &fol]).1, "i o\n");
    assert_eq!(nl(&["type", "nor"]).1, "o o o\ni\n");
    assert_eq!(nl(&["type", "-e", "f t", "--prelude", &fol]).1, "o\n");
}

#[test]
fn exit_codes() {
    let fol = proofs("preludes/fol.nl");
    let cases: &[(&[&str], ExitStatus)] = &[
        (&["type", "-e", "\\x:i. x"], ExitStatus::Negative),
        (&["type", "-e", "p \\/", "--prelude", &fol], ExitStatus::Error),
        (&["type", "-e", "nope"], ExitStatus::Error),
        (&["parse", "-e", "~0"], ExitStatus::Negative),
        (&["reduce", "-e", "2", "--fuel", "3"], ExitStatus::Negative),
        (&["reduce", "-e", "p", "--prelude", "/no/such/prelude.nl"], ExitStatus::Error),
        (&["check", "/no/such/proof.json"], ExitStatus::Error),
        (&["frobnicate"], ExitStatus::Error),
        (&["prove", "p |- q", "--prelude", &fol, "--depth", "3"], ExitStatus::Negative),
        (&["prove", "p |- p", "--prelude", &fol, "--depth", "1"], ExitStatus::Success),
    ];
    for (args, want) in cases {
        let (got, _, err) = nl(args);
        assert_eq!(got, *want, "{args:?}: {err}");
    }
}

#[test]
fn diagnostics_carry_spans() {
    let fol = proofs("preludes/fol.nl");
    let (_, out, err) = nl(&["parse", "-e", "p /\\ zz", "--prelude", &fol]);
    assert!(out.is_empty());
    assert!(err.contains("1:6"), "{err}");
    assert!(err.contains("     ^^"), "{err}");
}

#[test]
fn parse_prints_raw_and_resugared() {
    let fol = proofs("preludes/fol.nl");
    let (_, raw, _) = nl(&["parse", "-e", "~p", "--prelude", &fol]);
    assert_eq!(raw, "((nor p) p)\n");
    let (_, sugar, _) = nl(&["parse", "-e", "~p \\/ q", "--prelude", &fol, "--resugar"]);
    assert_eq!(sugar, "p -> q\n");
}

#[test]
fn parse_reads_files() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.nl");
    std::fs::write(&file, "nex[o] (\\x:o. x)\n").unwrap();
    let (status, out, _) = nl(&["parse", file.to_str().unwrap(), "--resugar"]);
    assert_eq!(status, ExitStatus::Success);
    assert_eq!(out, "nex[o] (\\x:o. x)\n");
    let (status, _, _) = nl(&["parse", file.to_str().unwrap(), "-e", "p"]);
    assert_eq!(status, ExitStatus::Error);
}

#[test]
fn reduce_strategies() {
    let fol = proofs("preludes/fol.nl");
    for s in ["lo", "ri"] {
        let (status, out, _) = nl(&["reduce", "-e", "(\\x:o. \\y:o. x) p q", "--prelude", &fol, "--strategy", s]);
        assert_eq!(status, ExitStatus::Success);
        assert_eq!(out, "p\n");
    }
}

#[test]
fn golden_files_are_valid() {
    let files = json_files("golden");
    assert!(files.len() >= 5);
    for f in files {
        let (status, out, err) = nl(&["check", f.to_str().unwrap()]);
        assert_eq!(status, ExitStatus::Success, "{}: {out}{err}", f.display());
        assert!(out.ends_with("VALID\n") && !out.contains("INVALID"));
    }
}

#[test]
fn mutated_files_are_rejected() {
    let files = json_files("mutated");
    assert!(files.len() >= 5);
    for f in files {
        let (status, out, err) = nl(&["check", f.to_str().unwrap()]);
        assert_eq!(status, ExitStatus::Negative, "{}: {out}{err}", f.display());
        assert!(out.ends_with("INVALID\n") || err.contains("ill-typed"), "{out}{err}");
    }
}

#[test]
fn broken_right_axiom_names_the_node() {
    let (status, out, _) = nl(&["check", &proofs("mutated/p_right_axiom_broken.json")]);
    assert_eq!(status, ExitStatus::Negative);
    assert!(out.contains("root  PRightAx  FAIL NotAnAxiomInstance"), "{out}");
}

#[test]
fn mode_override() {
    let em = proofs("golden/excluded_middle.json");
    assert_eq!(nl(&["check", &em]).0, ExitStatus::Success);
    let (status, out, _) = nl(&["check", &em, "--mode", "strict"]);
    assert_eq!(status, ExitStatus::Negative);
    assert!(out.contains("ModeForbidden"));
}

#[test]
fn json_reports_match_golden() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (proof, report) in [
        ("mutated/excluded_middle_exchange_pos.json", "excluded_middle_exchange_pos.report.json"),
        ("golden/quantifier_right.json", "quantifier_right.report.json"),
    ] {
        let (_, out, _) = nl(&["check", &proofs(proof), "--report", "json"]);
        let want = std::fs::read_to_string(golden.join(report)).unwrap();
        assert_eq!(out, want, "{proof}");
        assert_eq!(out, nl(&["check", &proofs(proof), "--report", "json"]).1);
    }
}

/// Checks `v` against the subset of JSON Schema used by the report schema.
fn conforms(v: &Value, schema: &Value) -> Result<(), String> {
    let types: Vec<&str> = match &schema["type"] {
        Value::String(s) => vec![s.as_str()],
        Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
        _ => vec![],
    };
    let kind = match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    };
    if !types.is_empty() && !types.contains(&kind) {
        return Err(format!("expected {types:?}, found {kind}"));
    }
    if let Some(allowed) = schema["enum"].as_array() {
        if !allowed.contains(v) {
            return Err(format!("{v} not in enum"));
        }
    }
    match v {
        Value::Object(map) => {
            for key in schema["required"].as_array().into_iter().flatten() {
                if !map.contains_key(key.as_str().unwrap()) {
                    return Err(format!("missing {key}"));
                }
            }
            for (k, sub) in map {
                match schema["properties"].get(k) {
                    Some(s) => conforms(sub, s).map_err(|e| format!("{k}: {e}"))?,
                    None if schema["additionalProperties"] == Value::Bool(false) => {
                        return Err(format!("unexpected key {k}"))
                    }
                    None => {}
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                conforms(item, &schema["items"]).map_err(|e| format!("[{i}]: {e}"))?;
            }
        }
        _ => {}
    }
    Ok(())
}

#[test]
fn json_reports_follow_the_schema() {
    let schema: Value = serde_json::from_str(
        &std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/report.schema.json")).unwrap(),
    )
    .unwrap();
    for f in json_files("golden").into_iter().chain(json_files("mutated")) {
        let (_, out, _) = nl(&["check", f.to_str().unwrap(), "--report", "json"]);
        if out.is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(&out).unwrap();
        conforms(&v, &schema).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
    }
}

#[test]
fn emitted_prelude_path_is_relative_to_the_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sub/p.json");
    std::fs::create_dir_all(out.parent().unwrap()).unwrap();
    let fol = proofs("preludes/fol.nl");
    let (status, _, _) = nl(&["prove", "f t |- f t", "--prelude", &fol, "--emit", out.to_str().unwrap()]);
    assert_eq!(status, ExitStatus::Success);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(!Path::new(v["prelude"].as_str().unwrap()).is_absolute());
    assert_eq!(nl(&["check", out.to_str().unwrap()]).0, ExitStatus::Success);

    let empty = dir.path().join("e.json");
    nl(&["prove", "|- 0 = 0 <-> 0 .= 0", "--emit", empty.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&empty).unwrap()).unwrap();
    assert_eq!(v["prelude"], "empty");
}

const POOL: [&str; 12] = [
    "p",
    "q",
    "nor p q",
    "nor q p",
    "~p",
    "p \\/ q",
    "nex f",
    "f t",
    "nex[o] (\\x:o. x)",
    "(\\x:o. x) p",
    "0 = 0 <-> 0 .= 0",
    "nex (\\y:i. f y /\\ f t)",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn prove_emit_check_pipeline(
        left in prop::collection::vec(0..POOL.len(), 0..=2),
        right in prop::collection::vec(0..POOL.len(), 0..=3),
        paper in any::<bool>(),
    ) {
        let side = |ix: &[usize]| ix.iter().map(|&i| POOL[i]).collect::<Vec<_>>().join(", ");
        let goal = format!("{} |- {}", side(&left), side(&right));
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("proof.json");
        let fol = proofs("preludes/fol.nl");
        let mode = if paper { "paper" } else { "strict" };
        let (status, _, err) = nl(&[
            "prove", &goal, "--prelude", &fol, "--depth", "5", "--nodes", "3000", "--mode", mode,
            "--emit", out.to_str().unwrap(),
        ]);
        prop_assert!(status != ExitStatus::Error, "{goal}: {err}");
        if status == ExitStatus::Success {
            let (check, report, err) = nl(&["check", out.to_str().unwrap()]);
            prop_assert_eq!(check, ExitStatus::Success, "{}: {}{}", goal, report, err);
        } else {
            prop_assert!(!out.exists());
        }
    }
}
