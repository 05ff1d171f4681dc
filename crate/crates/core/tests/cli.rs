use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
}

fn btc(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_btc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run { code: out.status.code().unwrap(), stdout: String::from_utf8(out.stdout).unwrap() }
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

const FAMILY: &str = r#"{"schema":"btc/1","m":[1,1,1],
    "first":{"l":"7","p":[1,1,0],"q":[1,0,0]},
    "second":{"l":"4","p":[2,2,4],"q":[2,0,2]}}"#;

fn family_with_k(k: &str) -> String {
    FAMILY.replace(r#""l":"4""#, &format!(r#""l":"{k}""#))
}

#[test]
fn commute_verdicts_and_exit_codes() {
    let yes = btc(&["decide-commute"], FAMILY);
    assert_eq!(yes.code, 0);
    let v = json(&yes.stdout);
    assert_eq!(v["answer"], "Yes");
    assert_eq!(v["schema"], "btc/1");

    let no = family_with_k("5");
    assert_eq!(btc(&["decide-commute"], &no).code, 0);
    let strict = btc(&["decide-commute", "--exit-verdict"], &no);
    assert_eq!(strict.code, 1);
    assert_eq!(json(&strict.stdout)["answer"], "No");
}

#[test]
fn float_radial_exponent_goes_numeric() {
    let input = FAMILY.replace(r#""l":"7""#, r#""l":{"float":7.0}"#);
    let v = json(&btc(&["decide-commute"], &input).stdout);
    assert_eq!(v["answer"], "Yes");
    assert_eq!(v["mode"], "Numeric");
}

#[test]
fn semicommute_fixture() {
    let input = r#"{"schema":"btc/1","m":[1,1],
        "first":{"l":"1","p":[1,0],"q":[1,1]},
        "second":{"l":"3","p":[2,0],"q":[0,0]}}"#;
    let v = json(&btc(&["decide-semicommute"], input).stdout);
    assert_eq!(v["answer"], "Yes");
}

#[test]
fn invalid_input_exits_2_with_diagnostic() {
    for bad in [
        "{not json",
        r#"{"m":[1,1],"first":{"l":"0","p":[0,0],"q":[0,0]},"second":{"l":"0","p":[0,0],"q":[0,0]}}"#,
        r#"{"schema":"btc/9","m":[1,1],"first":{"l":"0","p":[0,0],"q":[0,0]},"second":{"l":"0","p":[0,0],"q":[0,0]}}"#,
        r#"{"schema":"btc/1","m":[1,1],"bogus":1,"first":{"l":"0","p":[0,0],"q":[0,0]},"second":{"l":"0","p":[0,0],"q":[0,0]}}"#,
        r#"{"schema":"btc/1","m":[1,1],"first":{"l":"0","p":[0,0,0],"q":[0,0]},"second":{"l":"0","p":[0,0],"q":[0,0]}}"#,
        r#"{"schema":"btc/1","m":[1,1],"first":{"l":"-1","p":[0,0],"q":[0,0]},"second":{"l":"0","p":[0,0],"q":[0,0]}}"#,
    ] {
        let r = btc(&["decide-commute"], bad);
        assert_eq!(r.code, 2, "{bad}");
        let v = json(&r.stdout);
        assert!(v["error"]["kind"].is_string(), "{}", r.stdout);
        assert!(v["error"]["message"].is_string());
    }
    assert_eq!(btc(&["no-such-command"], "").code, 2);
}

#[test]
fn matrix_is_identical_across_thread_counts() {
    let input = r#"{"schema":"btc/1","m":[1,2,1],"kind":"commutator",
        "first":{"l":"7","p":[1,1,0],"q":[1,0,0]},
        "second":{"l":"5","p":[2,2,4],"q":[2,0,2]}}"#;
    let one = btc(&["matrix", "--truncation", "D=6", "--threads", "1"], input);
    let eight = btc(&["matrix", "--truncation", "D=6", "--threads", "8"], input);
    assert_eq!(one.code, 0, "{}", one.stdout);
    assert_eq!(one.stdout, eight.stdout);
    let v = json(&one.stdout);
    assert_eq!(v["kind"], "commutator");
    assert_eq!(v["ordering"], "graded-lex");
    let entries = v["entries"].as_array().unwrap().len();
    assert!(entries > 0 && entries as u64 <= v["basis_size"].as_u64().unwrap());
}

#[test]
fn oracle_needs_a_seed_and_is_reproducible() {
    let input = r#"{"schema":"btc/1","m":[1,1],"query":"action_coefficient",
        "symbol":{"l":"1","p":[1,0],"q":[0,1]},"beta":[0,1],"samples":200000}"#;
    assert_eq!(btc(&["oracle"], input).code, 2);
    let a = btc(&["oracle", "--seed", "0x5eed", "--threads", "1"], input);
    let b = btc(&["oracle", "--seed", "5EED", "--threads", "4"], input);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a.stdout);
    assert_eq!(v["seed"], "0x5eed");
}

#[test]
fn search_streams_header_then_pairs() {
    let input = r#"{"schema":"btc/1","m":[1,1],"relation":"commute","max_entry":1,
        "radial_cap":"3","filter":"non_trivial"}"#;
    let a = btc(&["search", "--threads", "1"], input);
    let b = btc(&["search", "--threads", "8"], input);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    let mut lines = a.stdout.lines();
    let header = json(lines.next().unwrap());
    assert_eq!(header["relation"], "commute");
    assert!(header["cardinality"].is_string() || header["cardinality"].is_number());
    for line in lines {
        assert_eq!(json(line)["non_trivial"], true);
    }
}

#[test]
fn verify_examples_all_pass() {
    let r = btc(&["verify-examples"], "");
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = json(&r.stdout);
    let fixtures = v["fixtures"].as_array().unwrap();
    assert!(!fixtures.is_empty());
    assert!(fixtures.iter().all(|f| f["pass"] == true), "{}", r.stdout);
}

#[test]
fn run_dispatches_a_job_document() {
    let job = format!(r#"{{"schema":"btc/1","command":"decide-commute","payload":{}}}"#, FAMILY);
    let direct = btc(&["decide-commute"], FAMILY);
    let via_job = btc(&["run"], &job);
    assert_eq!(via_job.code, 0);
    assert_eq!(via_job.stdout, direct.stdout);
}

#[test]
fn input_and_output_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.json");
    let output = dir.path().join("out.json");
    std::fs::write(&input, FAMILY).unwrap();
    let r = btc(
        &["decide-commute", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()],
        "",
    );
    assert_eq!(r.code, 0);
    assert_eq!(json(&std::fs::read_to_string(&output).unwrap())["answer"], "Yes");
}
