use arrperv::arrangement::{enumerate_faces, samples};
use arrperv::quiver::{validate, DoubleRep};
use arrperv_cli::format::{parse_arrangement, parse_quiver, write_arrangement, write_quiver};
use arrperv_cli::{run, Outcome};
use serde_json::Value;
use std::process::Command;
use std::sync::Arc;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("arrperv").chain(args.iter().copied()))
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "structured"]);
    let out = cli(&full);
    (out.code, serde_json::from_str(&out.stdout).expect("json output"))
}

#[test]
fn faces_of_the_line() {
    let out = cli(&["faces", &data("line.arr")]);
    assert_eq!(out.code, 0);
    let rows: Vec<&str> = out.stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].contains(" 0  0  (0)"));
    assert!(rows[1].contains(" +  1  (1)"));
    assert!(rows[2].contains(" -  1  (-1)"));
}

#[test]
fn faces_of_the_cross_in_fixed_order() {
    let (code, v) = structured(&["faces", &data("cross.arr")]);
    assert_eq!(code, 0);
    let signs: Vec<&str> =
        v["result"]["faces"].as_array().unwrap().iter().map(|f| f["signs"].as_str().unwrap()).collect();
    // Lexicographic with 0 < + < -, checked against the face enumeration.
    let p = enumerate_faces(&samples::cross());
    let expected: Vec<String> = p.faces().iter().map(|f| f.signs.to_string()).collect();
    assert_eq!(signs, expected);
    assert_eq!(signs, ["00", "0+", "0-", "+0", "++", "+-", "-0", "-+", "--"]);
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["faces", "x"], vec!["stalks", "x"], vec!["groupoid", "x"]] {
        let file = if args[0] == "stalks" { data("constant_line.quiver") } else { data("three_lines.arr") };
        let a: Vec<&str> = vec![args[0], &file];
        assert_eq!(cli(&a), cli(&a));
    }
}

#[test]
fn validate_constant_passes() {
    let out = cli(&["validate", &data("constant_line.quiver")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let (code, v) = structured(&["validate", &data("constant_line.quiver")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], true);
    for key in ["mon_violations", "tran_violations", "inv_violations"] {
        assert_eq!(v["result"][key].as_array().unwrap().len(), 0);
    }
}

#[test]
fn validate_names_the_broken_pair() {
    let out = cli(&["validate", &data("mon_broken_line.quiver")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("Mon violated on (0, +)"), "{}", out.stdout);
    let (code, v) = structured(&["validate", &data("mon_broken_line.quiver")]);
    assert_eq!(code, 1);
    let mon = v["result"]["mon_violations"].as_array().unwrap();
    assert_eq!(mon.len(), 1);
    assert_eq!((mon[0]["lower"].as_str(), mon[0]["upper"].as_str()), (Some("0"), Some("+")));
    assert_eq!(v["result"]["transition_checks_skipped"], true);
}

#[test]
fn skyscraper_cohomology() {
    let out = cli(&["cousin", &data("skyscraper_line.quiver")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("H^0: 0, H^1: 1"), "{}", out.stdout);
    let out = cli(&["cousin", &data("constant_line.quiver")]);
    assert!(out.stdout.contains("H^0: 1, H^1: 0"));
}

#[test]
fn audits_pass_on_valid_quivers() {
    for file in ["constant_line.quiver", "skyscraper_line.quiver"] {
        for cmd in ["smooth", "perversity", "stalks", "mult"] {
            let out = cli(&[cmd, &data(file)]);
            assert_eq!(out.code, 0, "{cmd} {file}: {}", out.stdout);
        }
    }
    let out = cli(&["smooth", &data("mon_broken_line.quiver")]);
    assert_eq!(out.code, 1);
}

#[test]
fn multiplicities_of_the_skyscraper() {
    let (_, v) = structured(&["mult", &data("skyscraper_line.quiver")]);
    let rows = v["result"]["multiplicities"].as_array().unwrap();
    let value = |hs: &[u64]| {
        rows.iter()
            .find(|r| {
                r["hyperplanes"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect::<Vec<_>>() == hs
            })
            .unwrap()["value"]
            .as_i64()
            .unwrap()
    };
    assert_eq!((value(&[]), value(&[0])), (0, 1));
}

#[test]
fn field_flag() {
    assert_eq!(cli(&["validate", &data("constant_line.quiver"), "--field", "fp:7"]).code, 0);
    assert_eq!(cli(&["validate", &data("constant_line.quiver"), "--field", "fp:8"]).code, 2);
}

#[test]
fn input_errors_exit_2_with_position() {
    let dir = std::env::temp_dir().join(format!("arrperv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.arr");
    std::fs::write(&bad, "dim 2\n1 0\n0 y\n").unwrap();
    let out = cli(&["faces", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("bad.arr:3:3:"), "{}", out.stderr);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["faces", "/nonexistent/file.arr"]).code, 2);
    assert_eq!(cli(&["compose", &data("cross.arr"), "0+", "0x"]).code, 2);
}

#[test]
fn compose_and_collinear() {
    let out = cli(&["compose", &data("cross.arr"), "0+", "+-"]);
    assert_eq!(out.stdout.trim(), "0+ o +- = ++");
    assert_eq!(cli(&["collinear", &data("three_lines.arr"), "++-", "0+-", "-+-"]).code, 0);
    assert_eq!(cli(&["collinear", &data("cross.arr"), "00", "0+", "++"]).code, 1);
    assert_eq!(cli(&["collinear", &data("two_points.arr"), "+-", "00", "-+"]).code, 2);
    assert_eq!(cli(&["collinear", &data("two_points.arr"), "(--)", "0-", "+-"]).code, 0);
}

#[test]
fn affine_faces() {
    let (_, v) = structured(&["faces", &data("two_points.arr")]);
    assert_eq!(v["result"]["faces"].as_array().unwrap().len(), 5);
}

#[test]
fn groupoid_and_words() {
    let out = cli(&["groupoid", &data("three_lines.arr")]);
    assert!(out.stdout.starts_with("6 objects, 12 generators, 6 relations"), "{}", out.stdout);
    let out = cli(&["groupoid", &data("cross.arr"), "--presentation", "collinearity"]);
    assert!(out.stdout.starts_with("4 objects, 12 generators"), "{}", out.stdout);
    let (code, v) = structured(&["word", &data("three_lines.arr"), "+++", "---"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["length"], 3);
    assert_eq!(v["result"]["chamber_distance"], 3);
    assert_eq!(cli(&["word", &data("three_lines.arr"), "+++", "00-"]).code, 2);
}

#[test]
fn derived_quivers_round_trip_and_validate() {
    let dir = std::env::temp_dir().join(format!("arrperv-derived-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = Arc::new(enumerate_faces(&samples::three_lines()));
    let src = dir.join("const.quiver");
    std::fs::write(&src, write_quiver(&DoubleRep::constant(p, 1))).unwrap();
    let src = src.to_str().unwrap();
    for args in [
        vec!["dual", src],
        vec!["slice", src, "0+-"],
        vec!["slice", src, "000"],
        vec!["restrict", src, "--face", "0+-"],
        vec!["restrict", src, "--flat", "0,1,2"],
    ] {
        let out = cli(&args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        let q = parse_quiver(&out.stdout, None).unwrap();
        assert!(validate(&q).verdict(), "{args:?}");
        assert_eq!(write_quiver(&q), out.stdout);
    }
    assert_eq!(cli(&["restrict", src, "--flat", "0,1"]).code, 2);
}

#[test]
fn onedim_commands() {
    let out = cli(&["onedim", "fourier", "--p-plus", "[1]", "--p-minus", "[1]"]);
    assert_eq!(out.stdout, "E0: 1\nP+: [0]\nP-: [0]\n");
    let (_, v) = structured(&["onedim", "to-b", "--u", "[1]", "--v", "[1]"]);
    assert_eq!(v["result"]["e0"], 2);
    let (_, v) = structured(&["onedim", "to-p", "--p-plus", "[0 0; 1 1]", "--p-minus", "[0 1; 0 1]"]);
    assert_eq!(v["result"]["monodromy"], "[2]");
    let out = cli(&["onedim", "to-b", "--u", "[]", "--v", "[]", "--phi", "1", "--psi", "0"]);
    assert_eq!(out.stdout, "E0: 1\nP+: [0]\nP-: [0]\n");
    let out = cli(&["onedim", "to-quiver", "--p-plus", "[1]", "--p-minus", "[1]"]);
    assert_eq!(parse_quiver(&out.stdout, None).unwrap(), DoubleRep::constant(arrperv::onedim::line_poset(), 1));
    assert_eq!(cli(&["onedim", "to-b", "--u", "[-1]", "--v", "[1]"]).code, 2);
}

#[test]
fn data_files_round_trip() {
    for f in ["line.arr", "cross.arr", "three_lines.arr", "two_points.arr"] {
        let a = parse_arrangement(&std::fs::read_to_string(data(f)).unwrap(), None).unwrap();
        let text = write_arrangement(&a);
        assert_eq!(parse_arrangement(&text, None).unwrap(), a);
    }
    for f in ["constant_line.quiver", "mon_broken_line.quiver", "skyscraper_line.quiver"] {
        let q = parse_quiver(&std::fs::read_to_string(data(f)).unwrap(), None).unwrap();
        let text = write_quiver(&q);
        assert_eq!(parse_quiver(&text, None).unwrap(), q);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_arrperv");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["validate", &data("constant_line.quiver")]), Some(0));
    assert_eq!(code(&["validate", &data("mon_broken_line.quiver")]), Some(1));
    assert_eq!(code(&["validate", "/nonexistent"]), Some(2));
}
