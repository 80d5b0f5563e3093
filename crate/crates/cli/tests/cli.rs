use std::process::Command;

use radicality_cli::{run_with_env, EXIT_CAP, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    call_env(args, None)
}

fn call_env(args: &[&str], cap: Option<&str>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("radicality").chain(args.iter().copied());
    let code = run_with_env(argv, cap.map(String::from), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = call(args);
    (
        code,
        serde_json::from_str(&out).expect("report is valid JSON"),
    )
}

#[test]
fn prob_examples() {
    let (code, doc) = json(&["prob", "--group", "PSL(2,5)", "--r", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let p = &doc["results"][0]["probability"];
    assert_eq!((p["num"].as_u64(), p["den"].as_u64()), (Some(3), Some(4)));
    assert_eq!(doc["results"][0]["image_size"], 45);
    assert_eq!(doc["command"][0], "prob");
    assert!(doc["version"].is_string());

    let (_, doc) = json(&["prob", "--group", "C3", "--r", "2", "--json"]);
    assert_eq!(doc["results"][0]["probability"]["num"], 1);
    assert_eq!(doc["results"][0]["probability"]["den"], 1);

    let (_, doc) = json(&["prob", "--group", "C4 x C2", "--r", "2,3", "--json"]);
    assert_eq!(doc["results"][0]["probability"]["den"], 4);
    assert_eq!(doc["results"][1]["r"], 3);
}

#[test]
fn csv_header_and_rows() {
    let (code, out, _) = call(&["prob", "--group", "C4 x C2", "--r", "2", "--csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "group,order,r,image_size,prob_num,prob_den,prob_decimal"
    );
    assert_eq!(lines[1], "C4 x C2,8,2,2,1,4,0.25");

    let dir = std::env::temp_dir().join("radicality-cli-csv");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("two.txt");
    std::fs::write(&file, "S3\nQ8\n").unwrap();
    let (code, out, _) = call(&[
        "verify",
        "--catalog",
        file.to_str().unwrap(),
        "--r-range",
        "2..3",
        "--csv",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 5);
    assert!(out.contains("S3,6,2,3,1,2,0.5"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(call(&["prob", "--group", "C2 x", "--r", "2"]).0, EXIT_INPUT);
    assert_eq!(
        call(&["prob", "--group", "PSL(2,6)", "--r", "2"]).0,
        EXIT_INPUT
    );
    assert_eq!(call(&["prob", "--group", "C2", "--r", "1"]).0, EXIT_INPUT);
    assert_eq!(call(&["prob", "--group", "C2"]).0, EXIT_INPUT);
    assert_eq!(call(&["psl", "--q", "6"]).0, EXIT_INPUT);
    assert_eq!(call(&["psl", "--q", "64"]).0, EXIT_INPUT);
    assert_eq!(call(&["density", "--x", "2", "--r", "2"]).0, EXIT_INPUT);
    assert_eq!(call(&["density", "--x", "1/2", "--r", "4"]).0, EXIT_INPUT);
    assert_eq!(call(&["verify", "--r-range", "5..2"]).0, EXIT_INPUT);
    assert_eq!(
        call(&["verify", "--catalog", "/nonexistent/catalog"]).0,
        EXIT_INPUT
    );
    let (code, _, err) = call(&["bogus"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(!err.is_empty());
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn cap_errors_exit_three() {
    assert_eq!(call(&["prob", "--group", "S9", "--r", "2"]).0, EXIT_CAP);
    assert_eq!(
        call(&["prob", "--group", "S5", "--r", "2", "--cap", "100"]).0,
        EXIT_CAP
    );
    assert_eq!(
        call_env(&["prob", "--group", "S5", "--r", "2"], Some("100")).0,
        EXIT_CAP
    );
    assert_eq!(
        call_env(&["prob", "--group", "S5", "--r", "2"], Some("lots")).0,
        EXIT_INPUT
    );
    // the flag wins over the environment
    assert_eq!(
        call_env(
            &["prob", "--group", "S5", "--r", "2", "--cap", "200"],
            Some("100")
        )
        .0,
        EXIT_OK
    );
}

#[test]
fn verify_builtin_passes() {
    let (code, doc) = json(&["verify", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["summary"]["passed"], true);
    assert_eq!(doc["summary"]["failures"], 0);
    assert!(
        doc["summary"]["tally"]["central-product"]["degenerate"]
            .as_u64()
            .unwrap()
            > 0
    );
    let (code, out, _) = call(&["verify", "--list-catalog"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l.starts_with("PSL(2,5)")));
    assert!(out.lines().any(|l| l.starts_with("PSL(2,4)")));
}

#[test]
fn verify_file_reports_quotient() {
    let dir = std::env::temp_dir().join("radicality-cli-s3");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("s3.txt");
    std::fs::write(&file, "S3\n").unwrap();
    let (code, doc) = json(&[
        "verify",
        "--catalog",
        file.to_str().unwrap(),
        "--r-range",
        "2..2",
        "--details",
        "--json",
    ]);
    assert_eq!(code, EXIT_OK);
    let checks = doc["results"][0]["details"]["checks"].as_array().unwrap();
    let quotient: Vec<&Value> = checks
        .iter()
        .filter(|c| {
            c["statement"] == "quotient-bound"
                && c["instance"].as_str().unwrap().contains("order 3")
        })
        .collect();
    assert_eq!(quotient.len(), 1);
    assert_eq!(quotient[0]["outcome"]["status"], "holds");

    let empty = dir.join("empty.txt");
    std::fs::write(&empty, "# nothing here\n").unwrap();
    let (code, _, err) = call(&["verify", "--catalog", empty.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("warning"));
}

#[test]
fn psl_rows() {
    let (code, doc) = json(&["psl", "--q", "5", "--r", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let row = &doc["results"]["scan"][0];
    assert_eq!(row["hypothesis_ok"], true);
    assert_eq!(row["agree"], true);
    assert_eq!(row["formula"]["num"], 3);
    assert_eq!(row["enumerated"]["den"], 4);

    let (code, doc) = json(&["psl", "--q", "13", "--r", "6", "--json"]);
    assert_eq!(code, EXIT_OK);
    let row = &doc["results"]["scan"][0];
    assert_eq!(row["hypothesis_ok"], false);
    assert!(row["enumerated"].is_object() && row["formula"].is_object());

    let (code, doc) = json(&["psl", "--q", "5,9", "--classes", "--json"]);
    assert_eq!(code, EXIT_OK);
    let classes = doc["results"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    assert!(classes.iter().all(|c| c["class_equation_holds"] == true));
    assert_eq!(call(&["psl"]).0, EXIT_INPUT);
}

#[test]
fn density_trace_output() {
    let (code, doc) = json(&[
        "density", "--x", "1/2", "--r", "2", "--eps", "1/100", "--json",
    ]);
    assert_eq!(code, EXIT_OK);
    let steps = doc["results"]["trace"]["steps"].as_array().unwrap();
    let ns: Vec<u64> = steps
        .iter()
        .take(3)
        .map(|s| s["n"].as_u64().unwrap())
        .collect();
    assert_eq!(ns, [1, 1, 3]);
    assert_eq!(steps[2]["predicted"], "135/256");
    assert_eq!(doc["summary"]["converged"], true);
    let last = steps.last().unwrap()["error_decimal"].as_f64().unwrap();
    assert!(last < 0.01);

    let (code, doc) = json(&["density", "--x", "9/16", "--r", "2", "--realize", "--json"]);
    assert_eq!(code, EXIT_OK);
    let real = doc["results"]["realizations"].as_array().unwrap();
    assert_eq!(real[0]["group"], "PSL(2,5)");
    assert!(real.iter().all(|c| c["agree"] == true));

    let (code, out, _) = call(&["density", "--x", "3/4", "--r", "2", "--realize"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("PSL(2,8)"));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["verify", "--r-range", "2..4", "--json"][..],
        &["psl", "--q", "5,7,9", "--r", "2,3", "--json"],
        &["density", "--x", "7/19", "--r", "3", "--json"],
    ] {
        let a = call(args);
        let b = call(args);
        let mut seq_args = vec!["--sequential"];
        seq_args.extend_from_slice(args);
        let c = call(&seq_args);
        assert_eq!(a.1, b.1);
        // the command echo differs, the results must not
        let strip = |s: &str| {
            let mut v: Value = serde_json::from_str(s).unwrap();
            v.as_object_mut().unwrap().remove("command");
            v
        };
        assert_eq!(strip(&a.1), strip(&c.1));
    }
}

#[test]
fn binary_end_to_end() {
    let bin = env!("CARGO_BIN_EXE_radicality");
    let out = Command::new(bin)
        .args(["prob", "--group", "PSL(2,5)", "--r", "2", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["results"][0]["probability"]["num"], 3);

    let out = Command::new(bin)
        .args(["prob", "--group", "S5", "--r", "2"])
        .env("RADICALITY_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CAP));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let out = Command::new(bin)
        .args(["psl", "--q", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
}
