//! Output schemas, golden help texts, exit codes and configuration handling.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn d(name: &str) -> String {
    root().join("data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mahler-kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = root().join("schemas").join(name);
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(schema_name: &str, doc: &Value, what: &str) {
    let v = schema(schema_name);
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{what} violates {schema_name}: {errors:#?}");
}

fn json_of(args: &[&str]) -> Value {
    let o = run(args);
    assert!(
        matches!(o.status.code(), Some(0) | Some(2)),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

/// Splits a command line on whitespace; `@name` stands for a data file.
fn args_of(line: &str) -> Vec<String> {
    line.split_whitespace()
        .map(|a| match a.strip_prefix('@') {
            Some(f) => d(f),
            None => a.to_string(),
        })
        .collect()
}

#[test]
fn outputs_match_schemas() {
    let cases = [
        ("decompose", "decompose --points @points_intro.json"),
        ("decompose", "decompose --points @points_torsion.json"),
        ("decompose", r#"decompose --points ["1/2","1/4"]"#),
        (
            "cone-member",
            r#"cone member --input {"point":[2,1],"generators":[[0,1],[1,3]]}"#,
        ),
        (
            "cone-member",
            r#"cone member --input {"point":[1,4],"generators":[[0,1],[1,3]]}"#,
        ),
        ("cone-basis", r#"cone basis --input {"generators":[[1,0],[0,1],[1,1]]}"#),
        ("cone-intersect", "cone intersect --input @line_cone.json"),
        (
            "cone-intersect",
            r#"cone intersect --input {"lambda":[0,0],"mu":[1,1],"gammas":[[0,0]],"generators":[[1,0],[0,1]]}"#,
        ),
        ("expansion", "expand --system @fredholm.json --order 16"),
        ("system", "iterate --system @thue_morse.json --times 2"),
        ("system", "twist --system @fredholm.json --root 1/3"),
        ("multi-system", "build --blocks @blocks.json"),
        ("regularity", "regular --system @fredholm.json --point 1/2"),
        ("regularity", "regular --system @pole.json --point 1/2"),
        ("eval", "eval --system @fredholm.json --point 1/2 --torsion 1/3"),
        (
            "independence",
            "independence --system @fredholm.json --system @geometric.json --order 40 --degree 2",
        ),
        ("purity", "purity --input @purity.json"),
        ("purity", "purity --input @purity_degenerate.json --no-preconditions"),
        ("relations", "relations --values @values.json"),
    ];
    for (name, line) in cases {
        let args = args_of(line);
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_valid(&format!("{name}.schema.json"), &json_of(&a), line);
    }
}

#[test]
fn certificates_match_schema() {
    let dir = tempfile::tempdir().unwrap();
    for stem in ["intro", "two_class", "dependent", "torsion"] {
        let out = dir.path().join(format!("{stem}.json"));
        let md = dir.path().join(format!("{stem}.md"));
        let o = run(&[
            "certify",
            "--input",
            &d(&format!("{stem}.json")),
            "--out",
            out.to_str().unwrap(),
            "--report",
            md.to_str().unwrap(),
        ]);
        assert!(
            matches!(o.status.code(), Some(0) | Some(2)),
            "{stem}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let cert: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_valid("certificate.schema.json", &cert, stem);
        let check = json_of(&["certify", "--check", out.to_str().unwrap()]);
        assert_valid("validation.schema.json", &check, stem);
        assert_eq!(check["valid"], true, "{stem}: {check}");
    }
}

#[test]
fn inputs_match_schemas() {
    for f in [
        "fredholm.json",
        "thue_morse.json",
        "cube_lacunary.json",
        "geometric.json",
        "pole.json",
    ] {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(d(f)).unwrap()).unwrap();
        assert_valid("system.schema.json", &v, f);
    }
    for f in ["points_intro.json", "points_radical.json", "points_torsion.json"] {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(d(f)).unwrap()).unwrap();
        assert_valid("points.schema.json", &v, f);
    }
    for f in ["intro.json", "two_class.json", "dependent.json", "torsion.json"] {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(d(f)).unwrap()).unwrap();
        assert_valid("cert-input.schema.json", &v, f);
    }
}

#[test]
fn selfcheck_report_matches_schema() {
    let o = run(&["selfcheck", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid("selfcheck.schema.json", &v, "selfcheck");
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 5);
}

const HELP: &[&[&str]] = &[
    &[],
    &["decompose"],
    &["cone"],
    &["cone", "member"],
    &["cone", "basis"],
    &["cone", "intersect"],
    &["expand"],
    &["iterate"],
    &["twist"],
    &["build"],
    &["regular"],
    &["eval"],
    &["independence"],
    &["purity"],
    &["relations"],
    &["certify"],
    &["selfcheck"],
];

fn golden_path(cmd: &[&str]) -> PathBuf {
    let name = if cmd.is_empty() {
        "main".to_string()
    } else {
        cmd.join("_")
    };
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("help_{name}.txt"))
}

/// Set `UPDATE_GOLDEN=1` to rewrite the files after an intentional change.
#[test]
fn help_matches_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for cmd in HELP {
        let mut args = cmd.to_vec();
        args.push("--help");
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = String::from_utf8(o.stdout).unwrap();
        let path = golden_path(cmd);
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &text).unwrap();
        }
        let golden = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(text, golden, "help for {cmd:?} changed");
        for line in text.lines().filter(|l| l.trim_start().starts_with('-')) {
            let flag = line.trim_start();
            let described = flag.split("  ").filter(|s| !s.trim().is_empty()).count() >= 2;
            assert!(described, "undocumented flag in {cmd:?}: {flag}");
        }
    }
}

#[test]
fn usage_errors_exit_one() {
    let o = run(&["certify", "--inptu", "x.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("--input"),
        "no suggestion offered"
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["expand", "--system", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(run(&["decompose", "--points", r#"["3/2"]"#]).status.code(), Some(1));
    assert_eq!(
        run(&["regular", "--system", &d("fredholm.json"), "--point", "2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn config_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"truncation": 9, "digits": 12}"#).unwrap();
    let e = json_of(&[
        "--config",
        cfg.to_str().unwrap(),
        "expand",
        "--system",
        &d("geometric.json"),
    ]);
    assert_eq!(e["order"], 9);
    let e = json_of(&[
        "--config",
        cfg.to_str().unwrap(),
        "expand",
        "--system",
        &d("geometric.json"),
        "--order",
        "4",
    ]);
    assert_eq!(e["order"], 4);
    let v = json_of(&[
        "--config",
        cfg.to_str().unwrap(),
        "eval",
        "--system",
        &d("fredholm.json"),
        "--point",
        "1/2",
    ]);
    assert_eq!(v["digits"], 12);

    let out = dir.path().join("c.json");
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "certify",
        "--input",
        &d("intro.json"),
        "--out",
        out.to_str().unwrap(),
        "--no-evidence",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let c: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c["options"]["truncation"], 9);
    assert_eq!(c["options"]["evidence"], false);
    assert!(dir.path().join("c.md").exists(), "report defaults next to --out");

    std::fs::write(&cfg, r#"{"truncation": 0}"#).unwrap();
    assert_eq!(
        run(&[
            "--config",
            cfg.to_str().unwrap(),
            "expand",
            "--system",
            &d("geometric.json")
        ])
        .status
        .code(),
        Some(1)
    );
    std::fs::write(&cfg, r#"{"trunc": 5}"#).unwrap();
    assert_eq!(
        run(&[
            "--config",
            cfg.to_str().unwrap(),
            "expand",
            "--system",
            &d("geometric.json")
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn conditional_certificate_exits_zero_and_says_so() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let o = run(&["certify", "--input", &d("torsion.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("conditional:"));
    let c: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c["status"], "conditional");
    assert_eq!(c["classes"][0]["blocks"][0]["torsion"]["n"], 3);
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    assert_eq!(
        run(&[
            "certify",
            "--input",
            &d("two_class.json"),
            "--out",
            out.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["crossClass"]["radii"] = serde_json::json!([2, 4]);
    v["classes"][1]["radix"] = 4.into();
    v["classes"][1]["spectralRadius"] = 4.into();
    std::fs::write(&out, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["certify", "--check", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["valid"], false);
}
