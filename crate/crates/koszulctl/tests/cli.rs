use std::path::PathBuf;
use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use serde_json::Value;

use koszulctl::formats::{ComoduleFile, PresentationFile, TorTableFile};
use koszulctl::reports::*;

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koszulctl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    (value, out.status.code().unwrap())
}

fn parse<T: DeserializeOwned>(v: &Value) -> T {
    serde_json::from_value(v.clone()).unwrap_or_else(|e| panic!("{e}\n{v}"))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn koszul_check_square_zero() {
    let (v, code) = json(&["koszul-check", "--max-degree", "6", &example("square_zero_d2.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["koszul_up_to"], 6);
    assert_eq!(v["diagonal_match"], true);
    let r: KoszulReport = parse(&v);
    assert_eq!(r.coalgebra_dims, [1, 2, 4, 8, 16, 32, 64]);
}

#[test]
fn milnor_q5() {
    let (v, code) = json(&["milnor", "--q", "5", "--max-degree", "4"]);
    assert_eq!(code, 0);
    let r: MilnorReport = parse(&v);
    assert_eq!(r.dims, [1, 1, 0, 0, 0]);
    assert!(r.koszul.positive);
}

#[test]
fn milnor_explicit_spec() {
    let (v, _) = json(&["milnor", &example("milnor_explicit.json"), "--max-degree", "4"]);
    let r: MilnorReport = parse(&v);
    assert_eq!(r.q, None);
    assert_eq!(r.presentation.dim, 2);
    // relations ab, ba, bb leave only a^n
    assert_eq!(r.dims, [1, 2, 1, 1, 1]);
}

#[test]
fn tate_check_bad_bs() {
    let out = run(&["tate-check", &example("bad_bs_table.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("BS (-1,1) dim=1"));
    let (v, _) = json(&["tate-check", &example("bad_bs_table.json")]);
    let r: TateCheckReport = parse(&v);
    assert!(!r.bs && r.cond1 && r.cond2 && r.cond3);
}

#[test]
fn tables_in_corpus_are_tate_type() {
    for name in [
        "point_table.json",
        "square_zero_d2_table.json",
        "exterior_n2_table.json",
    ] {
        assert_eq!(run(&["tate-check", &example(name)]).status.code(), Some(0), "{name}");
    }
}

#[test]
fn vanish_check_uses_table_d_or_flag() {
    let (v, code) = json(&["vanish-check", &example("bad_vanishing_table.json")]);
    assert_eq!(code, 1);
    let r: VanishCheckReport = parse(&v);
    assert_eq!(r.d, 1);
    assert_eq!(r.violations.len(), 2);
    assert_eq!(
        run(&["vanish-check", "--d", "3", &example("exterior_n3_table.json")])
            .status
            .code(),
        Some(0)
    );
    let out = run(&["vanish-check", &example("bad_bs_table.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[input]"));
}

#[test]
fn predict_examples() {
    for (p, t) in [
        ("square_zero_d2.json", "square_zero_d2_table.json"),
        ("exterior_n2.json", "exterior_n2_table.json"),
    ] {
        let (v, code) = json(&["predict", &example(p), &example(t)]);
        assert_eq!(code, 0, "{p}");
        assert!(parse::<PredictReport>(&v).predicted);
    }
    let (v, code) = json(&[
        "predict",
        &example("square_zero_d2.json"),
        &example("exterior_n2_table.json"),
    ]);
    assert_eq!(code, 1);
    let r: PredictReport = parse(&v);
    assert_eq!(r.hilbert_mismatch.map(|m| m.degree), Some(2));
}

#[test]
fn dual_round_trips_through_the_presentation_schema() {
    let (v, code) = json(&["dual", &example("exterior_n3.json")]);
    assert_eq!(code, 0);
    let dual: PresentationFile = parse(&v);
    let dual = dual.to_presentation().unwrap();
    assert_eq!(dual.relations().dim(), 3);
    // dualizing the emitted file again gives back the input
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dual.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let (back, _) = json(&["dual", path.to_str().unwrap()]);
    let back: PresentationFile = parse(&back);
    let original: PresentationFile =
        serde_json::from_str(&std::fs::read_to_string(example("exterior_n3.json")).unwrap()).unwrap();
    assert_eq!(back.to_presentation().unwrap(), original.to_presentation().unwrap());
}

#[test]
fn every_verb_round_trips() {
    let sz = example("square_zero_d2.json");
    let ext = example("exterior_n2.json");
    let (v, _) = json(&["tor", &sz, "--max-degree", "4"]);
    let r: TorReport = parse(&v);
    assert_eq!(parse::<TorTableFile>(&v), r.table);
    assert_eq!(r.table.entries.len(), 5);
    let (v, _) = json(&["hilbert", &ext]);
    assert!(parse::<HilbertReport>(&v).passed);
    let (v, _) = json(&["hopf-verify", "--max-degree", "4", &ext]);
    assert!(parse::<HopfReport>(&v).passed);
    let (v, _) = json(&["gmga", "--max-degree", "16"]);
    assert!(parse::<GmgaFile>(&v).passed);
    let (v, _) = json(&["comodule", &example("extension_e.json"), &example("extension_e.json")]);
    let r: ComoduleCheckReport = parse(&v);
    let product: ComoduleFile = r.tensor.unwrap();
    assert_eq!(product.basis.len(), 4);
    for v in [
        json(&["vanish-check", "--d", "1", &example("point_table.json")]).0,
        json(&["tate-check", &example("point_table.json")]).0,
    ] {
        assert_eq!(v["tool_version"], koszulctl::TOOL_VERSION);
    }
}

#[test]
fn comodule_product_file_is_a_valid_input() {
    let (v, _) = json(&["comodule", &example("extension_e.json"), &example("extension_e.json")]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ee.json");
    std::fs::write(&path, serde_json::to_string(&v["tensor"]).unwrap()).unwrap();
    let (cubed, code) = json(&["comodule", path.to_str().unwrap(), &example("extension_e.json")]);
    assert_eq!(code, 0);
    let r: ComoduleCheckReport = parse(&cubed);
    let fiber: Vec<(i64, usize)> = r.fiber.unwrap().iter().map(|e| (e.weight, e.dim)).collect();
    assert_eq!(fiber, [(0, 1), (1, 3), (2, 3), (3, 1)]);
}

#[test]
fn comodule_failures() {
    let (v, code) = json(&["comodule", &example("bad_weight_comodule.json")]);
    assert_eq!(code, 1);
    let r: ComoduleCheckReport = parse(&v);
    assert_eq!(r.validation.weight_failures, [1]);
    assert!(r.filtration.is_none());
    assert_eq!(
        run(&["comodule", &example("divided_power_comodule.json")])
            .status
            .code(),
        Some(0)
    );
    let out = run(&[
        "comodule",
        &example("extension_e.json"),
        &example("divided_power_comodule.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[input]"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["koszul-check".to_string(), example("exterior_n3.json")],
        vec!["milnor".into(), "--q".into(), "9".into()],
        vec![
            "comodule".into(),
            example("extension_e.json"),
            example("extension_e.json"),
        ],
    ] {
        let mut a: Vec<&str> = args.iter().map(String::as_str).collect();
        a.extend(["--format", "json"]);
        let first = run(&a).stdout;
        assert!(!first.is_empty());
        assert_eq!(first, run(&a).stdout);
    }
}

#[test]
fn output_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["gmga", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["max_degree"], 6);
}

#[test]
fn malformed_input_exits_2_with_distinct_prefixes() {
    let out = run(&["tor", "/nonexistent/p.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[io]"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dim": 2, "relations": [[[0, 5]]]}"#).unwrap();
    let out = run(&["tor", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[schema]"));

    std::fs::write(&bad, "{not json").unwrap();
    let out = run(&["dual", bad.to_str().unwrap()]);
    assert!(stderr(&out).starts_with("error[schema]"));

    let big = dir.path().join("big.json");
    std::fs::write(&big, r#"{"dim": 5, "relations": []}"#).unwrap();
    let out = run(&["hilbert", "--max-degree", "9", big.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[degree-cap]"));

    let out = run(&["milnor", "--q", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[input]"));

    assert_eq!(run(&["gmga", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["milnor"]).status.code(), Some(2));
}

#[test]
fn non_koszul_presentation_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nk.json");
    std::fs::write(
        &path,
        r#"{"dim": 3, "relations": [
            [[0,0],[1,0],[2,0],[2,2]],
            [[0,1],[2,0]],
            [[0,2],[1,0],[2,0],[2,1],[2,2]],
            [[1,1],[2,0],[2,2]]]}"#,
    )
    .unwrap();
    let (v, code) = json(&["koszul-check", "--max-degree", "5", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let r: KoszulReport = parse(&v);
    assert!(!r.positive);
    assert_eq!(json(&["hilbert", path.to_str().unwrap()]).1, 1);
}
