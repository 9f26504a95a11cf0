use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pg(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pg"))
        .args(args)
        .env("PG_CACHE_DIR", cache)
        .output()
        .expect("pg runs")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn grass_degree_prints_value() {
    let d = tempfile::tempdir().unwrap();
    let o = pg(&["grass", "degree", "3", "7"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "462");

    let out = d.path().join("r.json");
    let o = pg(&["grass", "degree", "3", "5", "--check", "--json", out.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["results"]["degree"], "5");
    assert_eq!(r["results"]["hilbert"]["degree"], "5");
    assert_eq!(r["status"], "pass");
}

#[test]
fn unknown_command_is_usage_error() {
    let d = tempfile::tempdir().unwrap();
    let o = pg(&["frobnicate"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
    assert_eq!(pg(&[], d.path()).status.code(), Some(2));
    assert_eq!(pg(&["--help"], d.path()).status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    let d = tempfile::tempdir().unwrap();
    for args in [
        &["grass", "degree", "4", "3"][..],
        &["amp", "genus", "--k", "3", "--m", "3"],
        &["example5", "verify", "--primes", "32002"],
        &["amp", "curve", "--m", "4", "--k", "2", "--n", "8", "--labels", "1,2,4,5"],
        &["amp", "matroid", "--k", "3", "--n", "10", "--indices", "1,2,5,7,9"],
        &["gb", "/nonexistent/ideal.json"],
        &["delpezzo", "verify", "--lambda", "1/0"],
    ] {
        let o = pg(args, d.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn matroid_example() {
    let d = tempfile::tempdir().unwrap();
    let o = pg(&["amp", "matroid", "--k", "3", "--n", "10", "--indices", "1,3,5,7,9"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["results"]["e"], -2);
    assert_eq!(r["results"]["c"], 5);
    assert_eq!(r["results"]["in_P"], false);
}

#[test]
fn genus_and_boundary_counts() {
    let d = tempfile::tempdir().unwrap();
    let r = report(&pg(&["amp", "genus", "--k", "3", "--m", "4"], d.path()));
    assert_eq!(r["results"]["genus_bound"], "925");
    assert_eq!(r["results"]["grassmannian_degree"], "462");
    let r = report(&pg(&["amp", "genus", "--k", "3", "--m", "2"], d.path()));
    assert_eq!(r["results"]["expected_genus"], "1");

    let o = pg(&["amp", "boundary", "--m", "4", "--k", "2", "--n", "8"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["results"]["count"], 20);
    assert_eq!(r["results"]["positive"], true);
}

#[test]
fn boundary_reads_z_file() {
    let d = tempfile::tempdir().unwrap();
    let z = d.path().join("z.json");
    std::fs::write(&z, r#"{"m":2,"rows":[["1","0","0"],["1","1","1"],["1","2","4"],["1","3","9"]]}"#).unwrap();
    let r = report(&pg(&["amp", "boundary", "--m", "2", "--k", "1", "--n", "4", "--z", z.to_str().unwrap()], d.path()));
    assert_eq!(r["results"]["count"], 4);
    let o = pg(&["amp", "boundary", "--m", "2", "--k", "1", "--n", "5", "--z", z.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn example5_reproduces() {
    let d = tempfile::tempdir().unwrap();
    let o = pg(&["example5", "verify"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = report(&o);
    let res = &r["results"];
    assert_eq!(res["dim"], 1);
    assert_eq!(res["degree"], "5");
    assert_eq!(res["genus"], "1");
    assert_eq!(res["smooth_mod"], serde_json::json!([32003, 65537]));

    // same inputs, same payload
    let again = report(&pg(&["example5", "verify"], d.path()));
    assert_eq!(again["results"], r["results"]);
    assert_eq!(again["inputs_digest"], r["inputs_digest"]);

    let other = report(&pg(&["example5", "verify", "--nodes", "1,2,3,4,5,6,7,8,9,10"], d.path()));
    assert_ne!(other["inputs_digest"], r["inputs_digest"]);
}

#[test]
fn amp_curve_k2_is_rational() {
    let d = tempfile::tempdir().unwrap();
    let o = pg(&["amp", "curve", "--m", "2", "--k", "2", "--n", "6", "--indices", "1,3,5"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = report(&o);
    assert_eq!(r["results"]["dim"], 1);
    assert_eq!(r["results"]["genus"], "0");
}

#[test]
fn delpezzo_verify_and_cube() {
    let d = tempfile::tempdir().unwrap();
    let out = d.path().join("dp.json");
    let o = pg(&["delpezzo", "verify", "--lambda", "1,-1,1/2", "--json", out.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["status"], "partial");
    let checks = r["results"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    assert!(r["meta"]["timings_ms"]["adjoint"].is_number());
    let terms = r["results"]["adjoint"]["terms"].as_array().unwrap();
    assert!(terms.iter().all(|t| !t["c"].as_str().unwrap().contains('/')));

    let o = pg(&["cube", "demo"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["status"], "pass");
}

#[test]
fn region_file_round_trip_and_mutation() {
    let d = tempfile::tempdir().unwrap();
    let o = pg(&["delpezzo", "region"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let mut region: Value = serde_json::from_slice(&o.stdout).unwrap();
    let path = d.path().join("region.json");

    std::fs::write(&path, serde_json::to_string(&region).unwrap()).unwrap();
    let o = pg(&["delpezzo", "verify", "--region", path.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(0));

    let facets = region["facets"].as_array_mut().unwrap();
    let l3 = facets.iter_mut().find(|f| f["name"] == "L3").unwrap();
    let c = l3["poly"]["terms"][0]["c"].as_str().unwrap().parse::<i64>().unwrap();
    l3["poly"]["terms"][0]["c"] = Value::String((c + 1).to_string());
    std::fs::write(&path, serde_json::to_string(&region).unwrap()).unwrap();
    let o = pg(&["delpezzo", "verify", "--region", path.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(1));
    let r = report(&o);
    assert_eq!(r["status"], "fail");
    assert!(!r["witness"].as_array().unwrap().is_empty());
    assert!(stderr(&o).contains("failed:"));

    std::fs::write(&path, "{\"name\": 3}").unwrap();
    let o = pg(&["delpezzo", "verify", "--region", path.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(2));
}

const IDEAL: &str = r#"{"vars":["x","y","z"],"gens":[
  {"vars":["x","y","z"],"terms":[{"c":"1","e":[2,0,0]},{"c":"-1","e":[0,1,1]}]},
  {"vars":["x","y","z"],"terms":[{"c":"1","e":[0,2,0]},{"c":"-1","e":[1,0,1]}]}]}"#;

#[test]
fn gb_uses_cache() {
    let d = tempfile::tempdir().unwrap();
    let cache = d.path().join("cache");
    let f = d.path().join("ideal.json");
    std::fs::write(&f, IDEAL).unwrap();
    let f = f.to_str().unwrap();

    let a = report(&pg(&["gb", f], &cache));
    assert_eq!(a["meta"]["cache"], "miss");
    let b = report(&pg(&["gb", f], &cache));
    assert_eq!(b["meta"]["cache"], "hit");
    assert_eq!(a["results"], b["results"]);
    assert!(a["results"]["hilbert"]["degree"].is_string());

    let lex = report(&pg(&["gb", f, "--order", "lex"], &cache));
    assert_eq!(lex["meta"]["cache"], "miss");
    assert_ne!(lex["inputs_digest"], a["inputs_digest"]);

    let entries: Vec<_> = std::fs::read_dir(&cache)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    assert_eq!(entries.len(), 2);
    for e in &entries {
        std::fs::write(e, "garbage").unwrap();
    }
    let c = report(&pg(&["gb", f], &cache));
    assert_eq!(c["meta"]["cache"], "repaired");
    assert_eq!(c["results"], a["results"]);

    let explicit = d.path().join("elsewhere");
    let o = pg(&["gb", f, "--cache-dir", explicit.to_str().unwrap()], &cache);
    assert_eq!(report(&o)["meta"]["cache"], "miss");
    assert!(explicit.is_dir());
}
