use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cluster-presents"));
    c.env_remove("CLUSTER_PRESENTS_CAP");
    c
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cluster-presents-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(name)
}

fn run(c: &mut Command) -> (Output, String) {
    let out = c.output().unwrap();
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    (out, stdout)
}

fn report(c: &mut Command) -> (i32, Value) {
    let (out, stdout) = run(c);
    (out.status.code().unwrap(), serde_json::from_str(&stdout).unwrap())
}

const D4_SEED: &str = "4\n0 1 0 0\n-1 0 1 1\n0 -1 0 0\n0 -1 0 0\n";
const A3_SEED: &str = "3\n0 1 0\n-1 0 1\n0 -1 0\n";

#[test]
fn theorem_a_small_types() {
    let (code, r) = report(bin().args(["theorem-a", "D4"]));
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["type"], "D4");
    let members = r["members"].as_array().unwrap();
    assert_eq!(members.len(), 6);
    assert!(members.iter().all(|m| m["order"] == 192));

    let (_, r) = report(bin().args(["theorem-a", "A2"]));
    assert_eq!(r["members"].as_array().unwrap().len(), 1);
    assert_eq!(r["expected"], 6);
    let (_, r) = report(bin().args(["theorem-a", "G2"]));
    assert_eq!(r["members"][0]["order"], 12);
}

#[test]
fn theorem_a_sampling_is_seeded() {
    let a = report(bin().args(["theorem-a", "A5", "--sample", "5", "--seed", "3"])).1;
    let b = report(bin().args(["theorem-a", "A5", "--sample", "5", "--seed", "3"])).1;
    assert_eq!(a["members"], b["members"]);
    assert_eq!(a["sampled"], 5);
    assert_eq!(a["class_size"], 19);
    let m = scratch("a3.txt", A3_SEED);
    let (code, r) = report(bin().arg("theorem-a").arg(&m));
    assert_eq!((code, r["type"].as_str()), (0, Some("A3")));
}

#[test]
fn pipelines() {
    let d4 = scratch("d4.txt", D4_SEED);
    let (code, r) = report(bin().arg("pipeline").arg(&d4).arg("1,1").args(["--type", "D4"]));
    assert_eq!(code, 0);
    assert_eq!(r["final_equals_initial"], true);

    let (code, r) = report(bin().arg("pipeline").arg(&d4).arg("2").args(["--type", "D4"]));
    assert_eq!(code, 0);
    let edges = r["final_diagram"]["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 5);
    assert_eq!(r["steps"][0]["companion"]["passed"], true);

    let a3 = scratch("a3p.txt", A3_SEED);
    let (code, r) = report(bin().arg("pipeline").arg(&a3).arg("2,1,3,2").args(["--type", "A3"]));
    assert_eq!(code, 0);
    for step in r["steps"].as_array().unwrap() {
        assert_eq!(step["two_finite"], true);
        assert_eq!(step["companion"]["passed"], true);
    }
}

#[test]
fn exports() {
    let (_, native) = run(bin().arg("export").arg(golden("d4_square.diagram")).args(["--from-diagram", "full"]));
    assert_eq!(native, std::fs::read_to_string(golden("d4_square_full.txt")).unwrap());
    assert_eq!(native.lines().filter(|l| l.ends_with("# R2")).count(), 6);
    assert_eq!(native.lines().filter(|l| l.ends_with("# R3a")).count(), 4);

    let tree = scratch("tree.diagram", "5\n1 2 1\n2 3 1\n3 4 1\n3 5 1\n");
    let (_, t) = run(bin().arg("present").arg("full").arg(&tree));
    assert_eq!(t.lines().filter(|l| l.starts_with('(')).count(), 5 + 10);

    let (_, red) = run(bin().arg("present").arg("reduced").arg(golden("d4_square.diagram")));
    assert_eq!(red.lines().filter(|l| l.contains("# R3")).count(), 1);

    let p = scratch("square.pres", &native);
    let (_, fp) = run(bin().arg("export").arg(&p).args(["--format", "generic-fp"]));
    assert!(fp.starts_with("# generic-fp 1\nF := FreeGroup(4);\n"));
    assert!(fp.contains("  (s1*s2*s3*s4*s3*s2)^2,\n"));
    assert!(fp.ends_with("];\n"));
}

#[test]
fn orders_and_overflow() {
    let p = scratch("square-order.pres", &std::fs::read_to_string(golden("d4_square_full.txt")).unwrap());
    for strategy in ["direct", "tower"] {
        let (code, r) = report(bin().arg("order").arg(&p).args(["--strategy", strategy]));
        assert_eq!(code, 0);
        assert_eq!(r["order"], 192);
        assert_eq!(r["strategy"], strategy);
        assert!(r["cosets_defined"].as_u64().unwrap() > 0);
    }
    let (code, r) = report(bin().arg("order").arg(&p).args(["--cap", "10"]));
    assert_eq!((code, r["verdict"].as_str()), (3, Some("overflow")));
    let (code, _) = report(bin().arg("order").arg(&p).env("CLUSTER_PRESENTS_CAP", "10"));
    assert_eq!(code, 3);
}

#[test]
fn verification_commands() {
    let (code, r) = report(bin().arg("verify-mutation").arg(golden("d4_square.diagram")).arg("1"));
    assert_eq!(code, 0);
    assert_eq!((r["order"].as_u64(), r["mutated_order"].as_u64()), (Some(192), Some(192)));
    let (code, r) = report(bin().arg("verify-type").arg(golden("d4_square.diagram")));
    assert_eq!(code, 0);
    assert_eq!(r["type"], "D4");
    assert_eq!(r["order"], r["expected"]);
}

#[test]
fn companion_commands() {
    let partial_sums = scratch("partial-sum.basis", "1 0 0 0\n0 1 0 0\n0 1 1 0\n0 1 1 1\n");
    let a4 = scratch("a4.txt", "4\n0 1 0 0\n-1 0 1 0\n0 -1 0 1\n0 0 -1 0\n");
    let (code, r) = report(bin().args(["companion", "check", "A4"]).arg(&partial_sums).arg(&a4));
    assert_eq!(code, 1);
    assert_eq!(r["reason"]["reason"], "not_companion");

    let simple = scratch("simple.basis", "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    let (code, r) = report(bin().args(["companion", "check", "A4"]).arg(&simple).arg(&a4));
    assert_eq!(code, 0);
    assert_eq!(r["positive"], true);

    let (_, mutated) = run(bin().args(["companion", "mutate", "A4"]).arg(&simple).arg(&a4).arg("2"));
    assert_eq!(mutated, "1 1 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");

    let (_, g) = run(bin().args(["signed-graph", "A4"]).arg(&simple));
    assert_eq!(g, "4\n1 2 -\n2 3 -\n3 4 -\n");
    let sg = scratch("a4.sg", &g);
    let (_, s) = run(bin().arg("switch").arg(&sg).arg("2").args(["--in-set", "1"]));
    assert_eq!(s, "4\n1 2 +\n1 3 -\n2 3 -\n3 4 -\n");
}

#[test]
fn diagram_commands() {
    let m = scratch("square.matrix", "4\n0 1 0 -1\n-1 0 1 0\n0 -1 0 1\n1 0 -1 0\n");
    let (_, d) = run(bin().args(["diagram", "of"]).arg(&m));
    assert_eq!(d, std::fs::read_to_string(golden("d4_square.diagram")).unwrap());
    let (_, t) = run(bin().args(["diagram", "type"]).arg(golden("d4_square.diagram")));
    assert_eq!(t, "D4\n");
    let (_, c) = run(bin().args(["diagram", "cycles"]).arg(golden("d4_square.diagram")));
    assert_eq!(c, "1 2 3 4 weights 1 1 1 1\n");
    let bad = scratch("bad.diagram", "3\n1 2 1\n2 3 1\n1 3 1\n");
    let (_, v) = run(bin().args(["diagram", "validate"]).arg(&bad));
    assert!(v.starts_with("fail"));
    let (_, j) = run(bin().args(["diagram", "class", "--json"]).arg(golden("d4_square.diagram")));
    let j: Value = serde_json::from_str(&j).unwrap();
    assert_eq!(j["size"], 6);
    let (out, _) = run(bin().args(["diagram", "mutate"]).arg(golden("d4_square.diagram")).arg("9"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matrix_commands() {
    let m = scratch("b3.matrix", "3\n0 1 0\n-1 0 2\n0 -1 0\n");
    let (_, out) = run(bin().args(["matrix", "mutate"]).arg(&m).arg("2"));
    assert_eq!(out, "3\n0 -1 2\n1 0 -2\n-1 1 0\n");
    let (code, r) = report(bin().args(["matrix", "info"]).arg(&m));
    assert_eq!(code, 0);
    assert_eq!(r["two_finite"], true);
    assert_eq!(r["symmetriser"], serde_json::json!([1, 1, 2]));
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timings");
        v
    };
    let a = strip(report(bin().args(["theorem-a", "B3"])).1);
    let b = strip(report(bin().args(["theorem-a", "B3"])).1);
    assert_eq!(a, b);
    assert_eq!(a["tool"], "cluster-presents");
    assert_eq!(a["format_version"], 1);
    assert_eq!(a["inputs_digest"].as_str().unwrap().len(), 64);
}
