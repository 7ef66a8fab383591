use std::io::Write;
use std::path::PathBuf;

use serde_json::{json, Value};
use triangles_cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn program(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "programs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("triangles").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn invoke_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = invoke(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v)
}

#[test]
fn wp_dist_table() {
    let coin = program("coin.gc");
    let (code, out, _) = invoke(&["wp", "--mode", "dist", &coin, "--post", "[x==0]"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("x=0    1/3"), "{out}");
    let (code, v) = invoke_json(&["wp", "--mode", "dist", &coin, "--post", "[x==1]"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v, json!({"states": ["x=0", "x=1"], "wp": {"x=0": "2/3", "x=1": "2/3"}}));
}

#[test]
fn wp_demonic_angelic() {
    let choice = program("choice.gc");
    let (_, demonic) = invoke_json(&["wp", &choice]);
    let (_, angelic) = invoke_json(&["wp", &choice, "--flavor", "angelic"]);
    let states = demonic["states"].as_array().unwrap();
    assert_eq!(states.len(), 6);
    for s in states {
        let s = s.as_str().unwrap();
        assert_eq!(demonic["wp"][s], json!("0/1"));
        assert_eq!(angelic["wp"][s], json!("1/1"));
    }
}

#[test]
fn wp_check_passes() {
    for (file, mode) in [("coin.gc", "dist"), ("walk.gc", "dist"), ("choice.gc", "pow"), ("guard.gc", "pow")] {
        let (code, v) = invoke_json(&["wp", "--mode", mode, "--check", "--seed", "5", &program(file)]);
        assert_eq!(code, EXIT_OK, "{file}: {v}");
        assert_eq!(v["check"]["passed"], json!(true));
        assert_eq!(v["check"]["seed"], json!(5));
    }
}

#[test]
fn wp_usage_errors() {
    let coin = program("coin.gc");
    assert_eq!(invoke(&["wp", "--bogus", &coin]).0, EXIT_USAGE);
    assert_eq!(invoke(&["wp", "--mode", "dist", "--flavor", "demonic", &coin]).0, EXIT_USAGE);
    assert_eq!(invoke(&["wp", "--mode", "quantum", &coin]).0, EXIT_USAGE);
    assert_eq!(invoke(&["wp", "/no/such/file.gc"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["frobnicate"]).0, EXIT_USAGE);
    let (code, _, err) = invoke(&["wp", "--mode", "dist", &program("choice.gc")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("mode"), "{err}");
}

#[test]
fn syntax_error_reports_position() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "vars x in 0..1;\nbody: x := ;").unwrap();
    let (code, _, err) = invoke(&["wp", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("2:12"), "{err}");
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    for sub in ["wp", "run", "laws", "enumerate", "transpose", "certify"] {
        assert!(out.contains(sub));
    }
}

#[test]
fn run_programs() {
    let (code, v) = invoke_json(&["run", "--mode", "dist", &program("coin.gc"), "--init", "x=1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["distribution"], json!({"x=0": "1/3", "x=1": "2/3"}));
    let (_, v) = invoke_json(&["run", &program("choice.gc"), "--init", r#"["x=0,y=0","x=1,y=2"]"#]);
    assert_eq!(v["states"], json!(["x=0,y=0", "x=0,y=2", "x=1,y=0", "x=1,y=1"]));
    let (_, v) = invoke_json(&[
        "run",
        "--mode",
        "dist",
        &program("coin.gc"),
        "--init",
        r#"{"x=0": "1/2", "x=1": "1/2"}"#,
    ]);
    assert_eq!(v["init"], json!({"x=0": "1/2", "x=1": "1/2"}));
    let (_, v) = invoke_json(&["run", &program("guard.gc"), "--init", "x=0"]);
    assert_eq!(v["states"], json!(["x=2"]));
    assert_eq!(invoke(&["run", &program("coin.gc"), "--init", "x=7"]).0, EXIT_USAGE);
}

#[test]
fn laws_suites() {
    let (code, out, _) = invoke(&["laws", "--monad", "hoare", "--max-size", "3"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.trim_end().ends_with("pass"));
    let (code, v) = invoke_json(&["laws", "--monad", "F", "--max-size", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["passed"], json!(true));
    for effect in ["powerset", "unit", "mv"] {
        let (code, v) = invoke_json(&["laws", "--effect", effect]);
        assert_eq!(code, EXIT_OK, "{effect}");
        assert_eq!(v["passed"], json!(true));
    }
    let (code, v) = invoke_json(&["laws", "--effect", "truncated"]);
    assert_eq!(code, EXIT_FAILED);
    assert_eq!(v["passed"], json!(false));
    assert_eq!(invoke(&["laws"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["laws", "--monad", "nope"]).0, EXIT_USAGE);
}

#[test]
fn enumerate_objects() {
    let (code, v) = invoke_json(&["enumerate", "{1, 2}", "--monad", "M"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["cardinality"], json!(6));
    let (_, v) = invoke_json(&["enumerate", "{1, 2}", "--monad", "F"]);
    assert_eq!(v["cardinality"], json!(4));
    let (_, v) = invoke_json(&["enumerate", "poset V { elems a b c; covers a<b a<c; }"]);
    assert_eq!(v["upsets"], json!(5));
    assert_eq!(v["lattice"], json!(false));
    assert_eq!(invoke(&["enumerate", "poset C { elems a b; covers a<b b<a; }"]).0, EXIT_USAGE);
}

#[test]
fn transpose_both_ways() {
    let arrow = r#"{"a": ["a"], "b": ["a", "b"]}"#;
    let base = ["transpose", "--correspondence", "box", "--x", "{a,b}", "--y", "{a,b}"];
    let mut fwd = base.to_vec();
    fwd.extend(["--input", arrow]);
    let (code, v) = invoke_json(&fwd);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["round_trip"], json!(true));
    let transformer = v["output"].to_string();
    let mut back = base.to_vec();
    back.extend(["--direction", "backward", "--input", &transformer]);
    let (code, v) = invoke_json(&back);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["output"], serde_json::from_str::<Value>(arrow).unwrap());

    let mut bad = base.to_vec();
    bad.extend(["--direction", "backward", "--input", r#"[[[], []], [["a"], []], [["b"], []], [["a","b"], []]]"#]);
    assert_eq!(invoke(&bad).0, EXIT_USAGE);
}

#[test]
fn certify_reports() {
    let (code, v) = invoke_json(&["certify", "--correspondence", "box", "--sizes", "2,2"]);
    assert_eq!(code, EXIT_OK);
    let r = &v["reports"][0];
    assert_eq!((r["kleisli_count"].clone(), r["transformer_count"].clone()), (json!(16), json!(16)));
    for c in ["hoare", "smyth", "three"] {
        let (code, v) = invoke_json(&["certify", "--correspondence", c, "--sizes", "2,1"]);
        assert_eq!(code, EXIT_OK, "{c}");
        assert_eq!(v["passed"], json!(true));
    }
    let (code, _, _) = invoke(&[
        "certify",
        "--correspondence",
        "diamond",
        "--x",
        "poset C { elems a b; covers a<b; }",
        "--y",
        "{p}",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(invoke(&["certify", "--correspondence", "box"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["certify", "--correspondence", "box", "--sizes", "2"]).0, EXIT_USAGE);
}

#[test]
fn transformer_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"[[[], ["a"]], [["a"], ["a"]]]"#).unwrap();
    let input = format!("@{}", f.path().display());
    let args = [
        "transpose",
        "--correspondence",
        "neighbourhood",
        "--x",
        "{a}",
        "--y",
        "{a}",
        "--direction",
        "backward",
        "--input",
        &input,
    ];
    let (code, v) = invoke_json(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["round_trip"], json!(true));
    assert_eq!(v["output"], json!({"a": [[], ["a"]]}));
}
