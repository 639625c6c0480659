use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn randmono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_randmono"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn exact_prob_of_zero_ideal() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = write(dir.path(), "zero.txt", "# randmono ideal v1\n2 2\n");
    let out = randmono(&["exact-prob", "--ideal", &ideal, "--p", "1/2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1/32\n");
}

#[test]
fn exit_codes() {
    assert_eq!(randmono(&["bogus"]).status.code(), Some(2));
    assert_eq!(randmono(&["dim-dist", "--n", "2", "--D", "2", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(randmono(&["oracle", "--n", "5", "--D", "3", "--p", "1/2"]).status.code(), Some(3));
    assert_eq!(randmono(&["exact-prob", "--ideal", "/nonexistent/ideal.txt", "--p", "1/2"]).status.code(), Some(2));
    let v = randmono(&["--version"]);
    assert!(v.status.success());
    assert!(stdout(&v).starts_with("randmono "));
}

#[test]
fn samples_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for path in [&a, &b] {
        let out = randmono(&[
            "sample", "--n", "3", "--D", "5", "--p", "0.1", "--count", "50", "--seed", "42", "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    let text = String::from_utf8(bytes).unwrap();
    assert_eq!(text.lines().count(), 51);
    let header: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(header["format"], "randmono-samples");

    let jobs1 = randmono(&["--jobs", "1", "sample", "--n", "2", "--D", "4", "--p", "1/4", "--count", "20", "--format", "text"]);
    let jobs4 = randmono(&["--jobs", "4", "sample", "--n", "2", "--D", "4", "--p", "1/4", "--count", "20", "--format", "text"]);
    assert_eq!(jobs1.stdout, jobs4.stdout);
}

#[test]
fn general_model_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = write(dir.path(), "p.txt", "# randmono ptable v1\n2 2\n1 0 1\n0 1 0\n1 1 0\n");
    let out = randmono(&["sample", "--model", "general", "--ptable", &table, "--format", "text"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("2 2\n1 0\n"), "{}", stdout(&out));
}

#[test]
fn oracle_json() {
    let out = randmono(&["oracle", "--n", "2", "--D", "2", "--p", "1/2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["format"], "randmono-oracle");
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["distribution"]["0"], "1/32");
}

#[test]
fn homology_and_cf_check() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = write(dir.path(), "tri.txt", "3 3\n1 1 1\n");
    assert_eq!(stdout(&randmono(&["homology", "--ideal", &ideal])), "0,1,0\n");
    let squared = write(dir.path(), "sq.txt", "2 2\n2 0\n");
    assert_eq!(randmono(&["homology", "--ideal", &squared]).status.code(), Some(2));
    assert!(randmono(&["homology", "--ideal", &squared, "--radical"]).status.success());
    let cf = randmono(&["cf-check", "--n", "2", "--ptilde", "3/10,3/5"]);
    assert!(cf.status.success());
    assert!(stdout(&cf).contains("# total 1"));
}

#[test]
fn counting_commands() {
    assert_eq!(stdout(&randmono(&["nmon", "--n", "2", "--D", "2", "--h", "2,3", "--beta", "0,0"])), "1\n");
    let dist = stdout(&randmono(&["hilbert-dist", "--n", "2", "--D", "2", "--p", "1/2"]));
    assert!(dist.starts_with("# randmono hilbert-dist v1\n"));
    let dim = stdout(&randmono(&["dim-dist", "--n", "2", "--D", "2", "--p", "1/2"]));
    assert!(dim.contains("0 9/16"));
    let gens = stdout(&randmono(&["expected-gens", "--n", "2", "--p", "0.1"]));
    assert!(gens.contains("+/-"));
}

#[test]
fn census_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.json");
    assert!(randmono(&["census", "--n", "2", "--D", "2", "--out", out.to_str().unwrap()]).status.success());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(doc["format"], "randmono-census");
    assert_eq!(doc["count"].as_u64().unwrap() as usize, doc["ideals"].as_array().unwrap().len());
}

#[test]
fn sweep_outputs_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.toml",
        "n = 2\nD = 4\np = [0.01, 0.1, 0.5]\nproperties = [\"zero-ideal\", \"dim=0\"]\nsamples = 400\nseed = 3\n[check]\n\"zero-ideal\" = \"decreasing\"\n",
    );
    let out_dir = dir.path().join("out");
    let out = randmono(&["sweep", "--config", &good, "--out-dir", out_dir.to_str().unwrap(), "--check", "--svg"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(out_dir.join("sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# randmono sweep v1"));
    assert!(lines.next().unwrap().starts_with("n,D,p,property,freq,lo,hi,N,seed"));
    assert_eq!(lines.count(), 6);
    assert!(out_dir.join("sweep.json").exists());
    assert!(out_dir.join("sweep.svg").exists());

    let bad = write(
        dir.path(),
        "bad.toml",
        "n = 2\nD = 4\np = [0.01, 0.1, 0.5]\nproperties = [\"zero-ideal\"]\nsamples = 400\n[check]\n\"zero-ideal\" = \"increasing\"\n",
    );
    let out = randmono(&["sweep", "--config", &bad, "--out-dir", out_dir.to_str().unwrap(), "--check"]);
    assert_eq!(out.status.code(), Some(1));
}
