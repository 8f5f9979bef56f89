use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn corpus(file: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(file).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matschur")).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_matschur"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_e1() {
    let o = run(&["analyze", &corpus("e1.json")]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    assert_eq!(r["poset"]["cyclic_flats"], json!([[], [3, 4], [1, 2, 3, 4]]));
    assert_eq!(r["b_dim"], 12);
    assert_eq!(r["fields"]["q"]["u_dims"].as_array().unwrap().len(), 6);
}

#[test]
fn analyze_k4_graph() {
    let r = json_of(&run(&["analyze", &corpus("k4.json")]));
    assert_eq!(r["instance"]["rank"], 3);
    assert_eq!(r["instance"]["elements"], 6);
}

#[test]
fn non_unimodular_input_exits_2() {
    let o = run_stdin(&["analyze", "-"], r#"{"name": "bad", "matrix": [[1, 0, 1], [0, 1, 2]]}"#);
    assert_eq!(o.status.code(), Some(2));
    let r = json_of(&o);
    assert!(r["error"]["message"].as_str().unwrap().contains("not unimodular"));
}

#[test]
fn malformed_input_exits_2() {
    for text in [
        "{",
        r#"{"name": "x"}"#,
        r#"{"name": "x", "matrix": [[1, 0], [1]]}"#,
        r#"{"name": "x", "matrix": [[1]], "extra": 1}"#,
        r#"{"name": "x", "matrix": [[1, 1]], "fields": ["fp:4"]}"#,
    ] {
        let o = run_stdin(&["analyze", "-"], text);
        assert_eq!(o.status.code(), Some(2), "{text}");
        assert!(json_of(&o)["error"]["kind"].is_string());
    }
    assert_eq!(run(&["analyze", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["verify", &corpus("e1.json"), "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_cellular_over_f2() {
    let o = run(&["verify", &corpus("e1.json"), "cellular", "--field", "fp:2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    let c = &r["fields"]["fp:2"]["cellular"]["r_blocks"];
    assert_eq!(c["status"], "pass");
    assert_eq!(c["dim"], 21);
    let total: u64 = c["table"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|row| row.as_array().unwrap())
        .map(|x| x.as_u64().unwrap())
        .sum();
    assert_eq!(total, 21);
}

#[test]
fn verify_quiver_and_gale_on_e1() {
    let r = json_of(&run(&["verify", &corpus("e1.json"), "quiver,gale", "--field", "q", "--field", "fp:3"]));
    for f in ["q", "fp:3"] {
        assert_eq!(r["fields"][f]["quiver"]["relations"]["status"], "pass");
        assert_eq!(r["fields"][f]["gale"]["r_to_dual_rc"]["status"], "pass");
    }
    assert_eq!(r["status"], "pass");
}

#[test]
fn quiver_skips_elsewhere() {
    let o = run(&["verify", &corpus("k3.json"), "quiver"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["fields"]["q"]["quiver"]["relations"]["status"], "skip");
}

#[test]
fn semisimple_e1() {
    let o = run(&["semisimple", &corpus("e1.json"), "--primes", "2,3,5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["verdicts"], json!({ "2": false, "3": true, "5": true, "Q": true }));
}

#[test]
fn semisimple_k4_large_primes() {
    let o = run(&["semisimple", &corpus("k4.json"), "--primes", "7,11"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["verdicts"], json!({ "7": true, "11": true, "Q": true }));
}

#[test]
fn composite_prime_rejected() {
    let o = run(&["semisimple", &corpus("e1.json"), "--primes", "2,4"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_of(&o)["error"]["kind"], "field");
}

#[test]
fn facering_with_given_parameters() {
    let o = run(&["facering", &corpus("e1.json"), "--flat", "3,4", "--alpha", "0,1,2,3", "--xi", "0,0,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    let sets: Vec<Value> = r["facering"]["tilde"].as_array().unwrap().iter().map(|t| t["set"].clone()).collect();
    assert_eq!(sets, vec![json!([4]), json!([3]), json!([1, 2])]);
    assert_eq!(r["facering"]["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn facering_rejects_non_generic_alpha() {
    let o = run(&["facering", &corpus("e1.json"), "--flat", "3,4", "--alpha", "0,1,2,2", "--xi", "0,0,1,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["facering", &corpus("e1.json"), "--flat", "3,4", "--alpha", "0,1,2,3", "--xi", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["facering", &corpus("e1.json"), "--flat", "1,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["verify", &corpus("diamond.json"), "--field", "fp:3", "--seed", "7"]);
    let b = run(&["verify", &corpus("diamond.json"), "--field", "fp:3", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bundled_corpus_and_demo_pass() {
    let o = run(&["corpus"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = json_of(&o)["instances"].as_object().unwrap().keys().cloned().collect();
    assert!(names.contains(&"K4".to_string()));
    assert_eq!(run(&["demo"]).status.code(), Some(0));
    assert_eq!(
        run(&["corpus", &PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").to_string_lossy()]).status.code(),
        Some(0)
    );
}
