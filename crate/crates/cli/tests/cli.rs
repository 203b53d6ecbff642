use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sumset(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumset")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Self { dir: tempfile::tempdir().unwrap() };
        f.write("square.json", r#"{"moduli": [0], "A": [[0], [1]], "B": [[[0], [1]], [[0], [1]]]}"#);
        f.write("ap.json", r#"{"moduli": [0], "A": [[0], [1], [2], [3], [4]], "B": [[[0], [1]]]}"#);
        f.write("blocks.json", r#"{"moduli": [0], "A": [[0], [1], [10], [11]], "B": [[[0], [1]]]}"#);
        f.write("nine.json", r#"{"moduli": [0], "A": [[0]], "B": [[[0], [1]], [[0], [2]]]}"#);
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn read(&self, name: &str) -> String {
        fs::read_to_string(self.dir.path().join(name)).unwrap()
    }

    fn run(&self, args: &[&str]) -> Output {
        sumset(args, self.dir.path())
    }
}

fn record<'a>(report: &'a Value, check: &str, name: &str) -> &'a Value {
    report["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == check && r["name"] == name)
        .unwrap_or_else(|| panic!("no record {check}/{name}"))
}

#[test]
fn verify_top_sumset_on_unit_square() {
    let f = Fixture::new();
    let o = f.run(&["verify", "square.json", "--checks", "thm11", "--out", "r.json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: Value = serde_json::from_str(&f.read("r.json")).unwrap();
    let rec = record(&r, "thm11", "top-sumset");
    assert_eq!(rec["lhs"], "4/1");
    assert_eq!(rec["lhs_cleared"], "16/1");
    assert_eq!(rec["rhs_cleared"], "81/2");
    assert_eq!(rec["holds"], true);
    assert_eq!(r["all_hold"], true);
}

#[test]
fn verify_ruzsa_subset_has_witness() {
    let f = Fixture::new();
    let o = f.run(&["verify", "square.json", "--checks", "thm22", "--out", "r.json"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(&f.read("r.json")).unwrap();
    let rec = record(&r, "thm22", "subset");
    assert_eq!(rec["witness"], serde_json::json!([[0], [1]]));
    assert_eq!(rec["lhs"], "4/1");
    assert_eq!(rec["rhs"], "9/2");
}

#[test]
fn verify_all_checks_hold_on_small_instances() {
    let f = Fixture::new();
    for inst in ["square.json", "ap.json", "blocks.json", "nine.json"] {
        let o = f.run(&["verify", inst]);
        assert_eq!(code(&o), 0, "{inst}: {}{}", stdout(&o), stderr(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn reports_are_reproducible() {
    let f = Fixture::new();
    for (json, csv) in [("a.json", "a.csv"), ("b.json", "b.csv")] {
        assert_eq!(code(&f.run(&["verify", "ap.json", "--out", json, "--csv", csv])), 0);
    }
    assert_eq!(f.read("a.json"), f.read("b.json"));
    assert_eq!(f.read("a.csv"), f.read("b.csv"));
    let csv = f.read("a.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("check,name,lhs,rhs,holds,witness,seed,ms"));
    assert!(lines.all(|l| l.ends_with(',')), "ms column stays empty without --timing");
    assert!(!f.read("a.json").contains("\"ms\""));

    assert_eq!(code(&f.run(&["verify", "ap.json", "--checks", "thm11", "--timing", "--csv", "t.csv"])), 0);
    let timed = f.read("t.csv");
    let row = timed.lines().nth(1).unwrap();
    assert!(!row.ends_with(','), "{row}");
}

#[test]
fn malformed_instance_is_a_parse_error() {
    let f = Fixture::new();
    f.write("bad.json", "{\"moduli\": [0],\n \"A\": [[0],\n");
    let o = f.run(&["verify", "bad.json"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bad.json:3:"), "{}", stderr(&o));

    f.write("dims.json", r#"{"moduli": [0, 3], "A": [[0]], "B": [[[0, 1]]]}"#);
    let o = f.run(&["verify", "dims.json"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("A[0]"), "{}", stderr(&o));
}

#[test]
fn cap_exceeded_exits_with_three() {
    let f = Fixture::new();
    let a: Vec<String> = (0..24).map(|i| format!("[{}]", i * i)).collect();
    f.write("big.json", &format!(r#"{{"moduli": [0], "A": [{}], "B": [[[0], [1]]]}}"#, a.join(", ")));
    let o = f.run(&["verify", "big.json", "--checks", "thm22"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("--cap"));
    assert_eq!(code(&f.run(&["verify", "big.json", "--checks", "thm22", "--cap", "24"])), 0);
}

#[test]
fn alpha_below_the_tight_value_is_rejected() {
    let f = Fixture::new();
    let o = f.run(&["verify", "ap.json", "--checks", "prop31", "--alpha", "1/2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn extremal_smallest_member() {
    let f = Fixture::new();
    let o = f.run(&["extremal", "--h", "2", "--a", "2", "--l", "2", "--out", "ex.json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("|A|            predicted 6/1"));
    assert!(out.contains("|A+B_1|        predicted 16/1"));
    assert!(out.contains("enumerated 48"));
    let inst: Value = serde_json::from_str(&f.read("ex.json")).unwrap();
    assert_eq!(inst["moduli"], serde_json::json!([4, 4, 4, 4]));
    assert_eq!(inst["A"].as_array().unwrap().len(), 6);
    assert_eq!(inst["meta"]["construction"], "extremal");
    // the written instance verifies
    assert_eq!(code(&f.run(&["verify", "ex.json", "--checks", "thm11,thm22"])), 0);
}

fn interval_on_line(out: &str, marker: &str) -> (f64, f64) {
    let line = out.lines().find(|l| l.contains(marker)).unwrap();
    let inner = &line[line.find('[').unwrap() + 1..line.find(']').unwrap()];
    let (lo, hi) = inner.split_once(", ").unwrap();
    (lo.parse().unwrap(), hi.parse().unwrap())
}

#[test]
fn extremal_sharpness_at_a16() {
    let f = Fixture::new();
    let o = f.run(&["extremal", "--h", "2", "--a", "16", "--l", "2"]);
    assert_eq!(code(&o), 0);
    let (lo, hi) = interval_on_line(&stdout(&o), "(alpha = 4/1)");
    assert!(0.22 <= lo && hi <= 0.26, "{lo} {hi}");
    let (lo, _) = interval_on_line(&stdout(&o), "(alpha_i =");
    assert!((lo - 0.2738).abs() < 1e-4);
}

#[test]
fn extremal_errors() {
    let f = Fixture::new();
    assert_eq!(code(&f.run(&["extremal", "--h", "3", "--a", "1"])), 2);
    assert_eq!(code(&f.run(&["extremal", "--h", "3", "--a", "40", "--l", "2"])), 3);
    assert_eq!(code(&f.run(&["extremal", "--h", "2", "--a", "2", "--lift", "1,2,3"])), 2);
}

#[test]
fn extremal_lift_equalizes_alphas() {
    let f = Fixture::new();
    let o = f.run(&["extremal", "--h", "2", "--a", "2", "--l", "2", "--equalize", "--out", "lift.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("alphas [64/1, 64/1]"), "{}", stdout(&o));
    let inst: Value = serde_json::from_str(&f.read("lift.json")).unwrap();
    assert_eq!(inst["meta"]["lift"], serde_json::json!([24, 24]));
}

#[test]
fn partition_traces() {
    let f = Fixture::new();
    let o = f.run(&["partition", "blocks.json", "--trace", "t.json"]);
    assert_eq!(code(&o), 0);
    let t: Value = serde_json::from_str(&f.read("t.json")).unwrap();
    assert_eq!(t["k"], 2);
    let mus: Vec<&str> = t["steps"].as_array().unwrap().iter().map(|s| s["mu"].as_str().unwrap()).collect();
    assert_eq!(mus, ["3/2", "3/2"]);
    assert_eq!(t["monotone"], true);
    assert_eq!(t["weighted_sum"], "6/1");
    assert_eq!(t["weighted_target"], "6/1");

    let o = f.run(&["partition", "ap.json", "--trace", "ap.json.trace"]);
    assert_eq!(code(&o), 0);
    let t: Value = serde_json::from_str(&f.read("ap.json.trace")).unwrap();
    assert_eq!(t["k"], 1);
    assert_eq!(t["steps"][0]["mu"], "6/5");
    assert!(stdout(&o).contains("weights         6/1 = 6/1 ok"));
}

#[test]
fn mu_examples() {
    let f = Fixture::new();
    let o = f.run(&["mu", "nine.json", "--level", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("brute    mu_2 = 4/1  achiever {0}"), "{}", stdout(&o));
    let o = f.run(&["mu", "ap.json", "--level", "1", "--method", "both"]);
    let out = stdout(&o);
    assert_eq!(out.matches("= 6/5").count(), 2);
    assert!(out.contains("methods agree"));
    let o = f.run(&["mu", "ap.json", "--level", "0"]);
    assert_eq!(stdout(&o).matches("mu_0 = 1/1").count(), 2);
    assert_eq!(code(&f.run(&["mu", "ap.json", "--level", "3"])), 2);
    assert_eq!(code(&f.run(&["mu"])), 2);
}

const FAILING_GRAPH: &str = r#"{"h": 2, "vertices": [[1, 2], [], [1], [2], [1, 2]],
  "edges": [[1, 2], [1, 3], [2, 4], [2, 0], [3, 4]]}"#;

#[test]
fn sqcomm_on_constructions() {
    let f = Fixture::new();
    for args in [
        vec!["sqcomm", "nine.json"],
        vec!["sqcomm", "ap.json", "--removed", "[[0], [2]]"],
        vec!["sqcomm", "nine.json", "--product", "square.json"],
        vec!["sqcomm", "nine.json", "--channel", "|0|1,2|0,2"],
        vec!["sqcomm", "nine.json", "--method", "exhaustive"],
    ] {
        let o = f.run(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}{}", stdout(&o), stderr(&o));
        assert!(stdout(&o).contains("square commutative: yes"));
    }
}

#[test]
fn sqcomm_reports_hall_violator_in_file_numbering() {
    let f = Fixture::new();
    f.write("bad.json", FAILING_GRAPH);
    for method in ["matching", "exhaustive"] {
        let o = f.run(&["sqcomm", "--graph", "bad.json", "--method", method]);
        assert_eq!(code(&o), 1);
        let out = stdout(&o);
        assert!(out.contains("square commutative: no"));
        assert!(out.contains("violator      [0]"), "{out}");
        assert!(out.contains("neighbourhood []"));
    }
}

#[test]
fn sqcomm_input_errors() {
    let f = Fixture::new();
    assert_eq!(code(&f.run(&["sqcomm", "nine.json", "--channel", "1|0"])), 2);
    assert_eq!(code(&f.run(&["sqcomm", "nine.json", "--channel", "|9|1|0"])), 2);
    assert_eq!(code(&f.run(&["sqcomm", "ap.json", "--removed", "[[7]]"])), 2);
    f.write("edge.json", r#"{"h": 1, "vertices": [[1], []], "edges": [[0, 1]]}"#);
    assert_eq!(code(&f.run(&["sqcomm", "--graph", "edge.json"])), 2);
}

#[test]
fn corpus_is_seeded_and_canonical() {
    let f = Fixture::new();
    let a = f.run(&["corpus", "--count", "5"]);
    let b = f.run(&["corpus", "--count", "5"]);
    assert_eq!(stdout(&a), stdout(&b));
    let c = f.run(&["corpus", "--count", "5", "--seed", "9"]);
    assert_ne!(stdout(&a), stdout(&c));

    assert_eq!(code(&f.run(&["corpus", "--count", "4", "--out", "corpus"])), 0);
    let mut names: Vec<String> = fs::read_dir(f.dir.path().join("corpus"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["instance-000.json", "instance-001.json", "instance-002.json", "instance-003.json"]);
    let text = f.read("corpus/instance-002.json");
    assert!(stdout(&a).contains(&text), "stdout carries the same canonical text");
    assert_eq!(code(&f.run(&["verify", "corpus/instance-002.json", "--checks", "thm11,thm22,thm21"])), 0);
    assert_eq!(code(&f.run(&["corpus", "--h-min", "0"])), 2);
}
