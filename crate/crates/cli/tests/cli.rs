use std::process::{Command, Output};

fn heckeforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckeforge")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_b2_passes() {
    let out = heckeforge(&["verify", "--m", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["command"], "verify");
    assert!(doc["hopf"].is_object());
    let cat = heckeforge::relcat::catalog(4).unwrap();
    let jobs: usize = cat.relations.iter().map(|r| r.backends.len()).sum();
    assert_eq!(doc["relations"].as_array().unwrap().len(), jobs);
    assert_eq!(doc["catalog_hash"], cat.hash);
}

#[test]
fn out_of_range_order_is_a_usage_error() {
    assert_eq!(heckeforge(&["verify", "--m", "7"]).status.code(), Some(1));
    assert_eq!(heckeforge(&["verify", "--m", "1"]).status.code(), Some(1));
}

#[test]
fn skew_only_for_g2_and_not_for_order_five() {
    let out = heckeforge(&["verify", "--m", "6", "--backend", "skew"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["relations"].as_array().unwrap().iter().all(|r| r["backend"] == "SKEW"));
    assert!(doc.get("hopf").is_none());
    assert_eq!(heckeforge(&["verify", "--m", "5", "--backend", "skew"]).status.code(), Some(1));
}

#[test]
fn kernel_b2() {
    let out = heckeforge(&["kernel", "--m", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["kernel"]["basis"].as_array().unwrap().len(), 42);
    assert_eq!(doc["entries"].as_array().unwrap().len(), 15);
}

#[test]
fn gaha_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = ["a.json", "b.json", "c.json"].iter().map(|n| dir.path().join(n)).collect();
    for (p, seed) in paths.iter().zip(["3", "3", "4"]) {
        let out = heckeforge(&["--seed", seed, "--out", p.to_str().unwrap(), "gaha", "--datum", "A1xA1", "--trials", "50"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
    let read = |i: usize| std::fs::read(&paths[i]).unwrap();
    assert_eq!(read(0), read(1));
    assert_ne!(read(0), read(2));
}

#[test]
fn unknown_datum_is_an_error() {
    assert_eq!(heckeforge(&["gaha", "--datum", "F4"]).status.code(), Some(1));
}

#[test]
fn eval_both_models() {
    let out = heckeforge(&["eval", "D1 s1 + s1 D1", "--m", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["smash"].is_string());
    assert!(doc["skew"].is_array());
    let out = heckeforge(&["eval", "X[1,0] D1", "--datum", "A2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(&out)["pbw"].is_array());
    assert_eq!(heckeforge(&["eval", "D1 +", "--m", "4"]).status.code(), Some(1));
}

#[test]
fn data_override_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let builtin = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data");
    for f in ["rank1.tsv", "relations_m2.tsv", "kernel_m2.tsv"] {
        std::fs::copy(format!("{builtin}/{f}"), dir.path().join(f)).unwrap();
    }
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_heckeforge"))
            .args(["verify", "--m", "2", "--backend", "skew"])
            .env("HECKEFORGE_DATA", dir.path())
            .output()
            .unwrap()
    };
    let good = run();
    assert_eq!(good.status.code(), Some(0));
    // corrupt the first relation's right-hand side
    let path = dir.path().join("relations_m2.tsv");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
    let i = lines.iter().position(|l| !l.starts_with('#') && !l.trim().is_empty()).unwrap();
    let mut cols: Vec<&str> = lines[i].split('\t').collect();
    let bumped = format!("{} + 1", cols[2]);
    cols[2] = &bumped;
    lines[i] = cols.join("\t");
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    assert_eq!(run().status.code(), Some(2));
    std::fs::remove_file(&path).unwrap();
    assert_eq!(run().status.code(), Some(1));
}

#[test]
fn counterexample_reports_both_halves() {
    let out = heckeforge(&["counterexample", "--maxdeg", "6"]);
    let doc = json(&out);
    assert_eq!(doc["g2"]["none_found"], true);
    assert_eq!(doc["g2"]["searches"].as_array().unwrap().len(), 1);
    // four vectors of the computed order-4 kernel are outside the truncated
    // conjectured ideal, so the run reports a verification failure
    assert_eq!(doc["b2"]["all_found"], false);
    assert_eq!(out.status.code(), Some(2));
}
