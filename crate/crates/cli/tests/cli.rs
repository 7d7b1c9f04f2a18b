use std::process::{Command, Output};

use jmx_cli::registry::{registry, Payload, COROLLARIES};
use jmx_cli::verify::{verify_corollary, verify_theorem, Options, Status, Verdict};
use jmx_core::actions::{SMAction, SMActionJson};
use jmx_core::homology::HomologyGroup;

fn jmx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jmx")).args(args).env_remove("JMX_BUDGET").output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn reports_are_deterministic_apart_from_the_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for sub in ["a", "b"] {
        let out_dir = dir.path().join(sub);
        let out = jmx(&["--out", out_dir.to_str().unwrap(), "verify", "theorem", "wu_s0_z2"]);
        assert_eq!(out.status.code(), Some(0));
        let text = std::fs::read_to_string(out_dir.join("wu_s0_z2.json")).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v["timestamp"] = serde_json::Value::Null;
        runs.push(serde_json::to_string(&v).unwrap());
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(std::fs::read_dir(dir.path().join("a")).unwrap().count(), 1, "no temporary files left behind");
}

#[test]
fn theorem_report_marks_sides_exact_and_empirical() {
    let out = jmx(&["verify", "theorem", "wu_s0_z2", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["overall"], "match");
    assert!(v["lhs"].as_array().unwrap().iter().all(|g| g["status"] == "exact" && g["cutoff"].is_null()));
    assert!(v["rhs"].as_array().unwrap().iter().all(|g| g["status"] == "empirical" && g["cutoff"].is_u64()));
    assert_eq!(v["rhs"][3]["group"], "Z/2");
}

#[test]
fn tsv_has_one_row_per_side_and_degree() {
    let out = jmx(&["--format", "tsv", "verify", "corollary", "bn_circle"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("instance\tcheck\tside\tdegree\tgroup"));
    assert_eq!(lines.len(), 1 + 2 * 3);
    assert!(lines.iter().any(|l| l.contains("\trhs\t1\tZ\t")));
}

#[test]
fn small_budget_is_inconclusive() {
    let out = Command::new(env!("CARGO_BIN_EXE_jmx"))
        .args(["verify", "corollary", "james"])
        .env("JMX_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["overall"], "inconclusive");
    assert!(v["note"].as_str().unwrap().contains("budget"));
}

#[test]
fn input_errors_exit_4() {
    assert_eq!(jmx(&["verify", "theorem", "no_such_instance"]).status.code(), Some(4));
    assert_eq!(jmx(&["verify", "theorem", "james_s1"]).status.code(), Some(4));
    assert_eq!(jmx(&["verify", "corollary", "wu_s0_z2"]).status.code(), Some(4));
    let out = jmx(&["verify", "theorem", "bad_idempotent"]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!(v["witness"]["x"], "a");
    assert_eq!(v["witness"]["m"], "e");
}

#[test]
fn dumped_actions_load_back() {
    let out = jmx(&["dump", "instance", "mxg_e_z2_wedge", "--top", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "action");
    let j: SMActionJson = serde_json::from_value(v["payload"].clone()).unwrap();
    let a = SMAction::from_json(&j).unwrap();
    assert_eq!(a.top(), 2);
    assert_eq!(a.monoid(0).size(), 4);
    for key in ["wu_s1_z2", "cat_z2_groupoid3"] {
        assert_eq!(jmx(&["dump", "instance", key]).status.code(), Some(0));
    }
}

#[test]
fn props_scope_reports_corpus_size() {
    let out = jmx(&["props", "--scope", "actions"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["failures"].as_array().unwrap().len(), 0);
    assert!(v[0]["notes"][0].as_str().unwrap().starts_with("corpus: 93 actions"));
}

fn opts(d: usize) -> Options {
    Options { max_degree: d, budget: jmx_core::homology::DEFAULT_BUDGET, k0: None }
}

/// The registry's expected groups come from closed-form spaces; both sides of
/// every report must equal them.
#[test]
fn reports_match_registry_expectations() {
    for inst in registry() {
        if inst.expected.is_empty() {
            continue;
        }
        let d = inst.degree;
        let report = match inst.payload {
            Payload::Action(_) => verify_theorem(inst.key, &opts(d)).unwrap(),
            Payload::Tensor { .. } => {
                let name = COROLLARIES.iter().find(|(_, k)| *k == inst.key).unwrap().0;
                verify_corollary(name, &opts(d)).unwrap()
            }
            Payload::Category(_) => continue,
        };
        assert_eq!(report.overall, Verdict::Match, "{}", inst.key);
        for side in [&report.lhs, &report.rhs] {
            for g in side.iter() {
                let want = &inst.expected[g.degree].group;
                assert_eq!(&HomologyGroup { betti: g.betti, torsion: g.torsion.clone() }, want, "{} H_{}", inst.key, g.degree);
            }
        }
        assert!(report.rhs.iter().all(|g| g.status == Status::Empirical));
    }
}

#[test]
fn custom_k0_is_respected() {
    let r = verify_corollary("james", &Options { k0: Some(1), ..opts(3) }).unwrap();
    assert_eq!(r.rhs_history[0].0, 1);
    assert_eq!(r.overall, Verdict::Match);
}
