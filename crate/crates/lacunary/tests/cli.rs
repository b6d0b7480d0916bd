//! The command-line contract: exit codes 0/1/2, one JSON document on
//! stdout, no partial JSON on error paths, and replayability. Every
//! report's params block, turned back into an argument list, must
//! reproduce the identical result block.

use lacunary::cli::dispatch;
use serde_json::Value;

fn run(args: &[&str]) -> lacunary::cli::Dispatch {
    let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    dispatch(&owned)
}

fn report(args: &[&str]) -> (Value, u8) {
    let out = run(args);
    let doc: Value = serde_json::from_str(
        out.stdout.as_deref().unwrap_or_else(|| panic!("no JSON from {args:?}")),
    )
    .expect("stdout is one JSON document");
    (doc, out.code)
}

/// camelCase param key to its kebab-case flag.
fn kebab(key: &str) -> String {
    let mut out = String::new();
    for c in key.chars() {
        if c.is_ascii_uppercase() {
            out.push('-');
            out.push(c.to_ascii_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

/// Rebuild the argument list a report's params block describes.
fn argv_from_report(doc: &Value) -> Vec<String> {
    let mut argv = vec![doc["command"].as_str().expect("command name").to_string()];
    for (key, value) in doc["params"].as_object().expect("params object") {
        let flag = format!("--{}", kebab(key));
        match value {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => argv.push(flag),
            Value::String(s) => {
                argv.push(flag);
                argv.push(s.clone());
            }
            other => {
                argv.push(flag);
                argv.push(other.to_string());
            }
        }
    }
    argv
}

fn assert_replays(args: &[&str]) {
    let (mut first, first_code) = report(args);
    let replay_args = argv_from_report(&first);
    let replay_refs: Vec<&str> = replay_args.iter().map(String::as_str).collect();
    let (mut second, second_code) = report(&replay_refs);
    assert_eq!(first_code, second_code, "exit codes differ for {args:?}");
    assert_eq!(
        serde_json::to_string(&first["result"]).unwrap(),
        serde_json::to_string(&second["result"]).unwrap(),
        "result blocks differ for {args:?}"
    );
    first.as_object_mut().unwrap().remove("elapsedMs");
    second.as_object_mut().unwrap().remove("elapsedMs");
    assert_eq!(first, second, "reports differ beyond elapsed for {args:?}");
}

// ---------------------------------------------------------------------------
// The documented examples.

#[test]
fn sieve_find_locates_the_offset_sixty_nine() {
    let (doc, code) = report(&[
        "sieve-find", "--p", "2", "--n", "2", "--d", "4", "--nx", "300", "--ny", "300", "--deg",
        "6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["verified"], Value::Bool(true));
    assert_eq!(doc["result"]["certificate"]["m"], 69);
}

#[test]
fn rank_of_the_explicit_series_mod_two() {
    let (doc, code) =
        report(&["rank", "--mod", "2", "--source", "explicit-F", "--nx", "250", "--ny", "250"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["rank"], 2);
    assert_eq!(doc["result"]["stabilized"], Value::Bool(true));
}

// ---------------------------------------------------------------------------
// Exit codes: 0 success, 1 failed property, 2 usage.

#[test]
fn missing_flag_value_is_a_usage_error() {
    let out = run(&["sieve-find", "--d"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_none(), "no JSON on usage errors");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = run(&["transmogrify"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_none());
}

#[test]
fn composite_modulus_is_a_usage_error() {
    let out = run(&["rank", "--mod", "4", "--nx", "40", "--ny", "40"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_none());
}

#[test]
fn proportional_powers_input_is_rejected_before_the_scan() {
    let out = run(&["powers-indep", "--u", "2", "--v", "1", "--p", "3", "--n", "4"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_none());
    assert!(out.log.iter().any(|l| l.contains("constant")), "log: {:?}", out.log);
}

#[test]
fn dependent_powers_fail_with_a_full_report() {
    let (doc, code) =
        report(&["powers-indep", "--u", "1,1", "--v", "2,2", "--p", "5", "--n", "3", "--raw"]);
    assert_eq!(code, 1);
    assert_eq!(doc["verified"], Value::Bool(false));
    assert!(doc["result"]["relation"].is_array());
}

#[test]
fn sieve_absence_fails_with_a_full_report() {
    let (doc, code) =
        report(&["sieve-find", "--p", "2", "--n", "2", "--d", "4", "--nx", "60", "--ny", "60"]);
    assert_eq!(code, 1);
    assert_eq!(doc["verified"], Value::Bool(false));
    assert!(doc["result"]["certificate"].is_null());
}

#[test]
fn impossible_rank_request_is_a_failed_property() {
    let out =
        run(&["decompose", "--mod", "2", "--nx", "60", "--ny", "60", "--rank", "5"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.is_none(), "rank mismatch aborts before any JSON");
}

#[test]
fn out_of_range_criterion_is_a_usage_error() {
    let out = run(&["acceptance", "--criterion", "14"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_none());
}

#[test]
fn help_prints_without_a_report() {
    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.unwrap().contains("sieve-find"));
}

// ---------------------------------------------------------------------------
// Logging.

#[test]
fn quiet_suppresses_progress_but_keeps_the_report() {
    let loud = run(&["build-f", "--nx", "30", "--ny", "30"]);
    assert!(!loud.log.is_empty());
    let quiet = run(&["build-f", "--nx", "30", "--ny", "30", "--quiet"]);
    assert!(quiet.log.is_empty());
    assert_eq!(loud.stdout, quiet.stdout);
}

#[test]
fn quiet_keeps_error_lines() {
    let out = run(&["specker", "--p", "2", "--k-cut", "9", "--n", "8", "--quiet"]);
    assert_eq!(out.code, 2);
    assert_eq!(out.log.len(), 1);
    assert!(out.log[0].starts_with("error:"));
}

// ---------------------------------------------------------------------------
// The verify loop.

#[test]
fn saved_certificates_verify_against_a_rebuilt_source() {
    let (doc, code) = report(&[
        "sieve-find", "--p", "3", "--n", "3", "--d", "4", "--nx", "300", "--ny", "300",
    ]);
    assert_eq!(code, 0);
    let path = std::env::temp_dir().join("lacunary-cli-test-sieve3.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let (verdict, code) = report(&["sieve-verify", "--cert", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(verdict["result"]["holds"], Value::Bool(true));
    assert_eq!(verdict["result"]["certificate"]["m"], 65);
    std::fs::remove_file(&path).ok();
}

// ---------------------------------------------------------------------------
// Replay: params blocks reproduce their result blocks byte for byte.

#[test]
fn every_subcommand_replays_from_its_own_params() {
    assert_replays(&[
        "series-eval", "--ring", "F3", "--n", "9", "--a", "1 - x", "--op", "mul", "--b",
        "-1 - x^2",
    ]);
    assert_replays(&["rank", "--mod", "2", "--nx", "120", "--ny", "120"]);
    assert_replays(&["rank", "--source", "specker", "--p", "3", "--nx", "8", "--ny", "8"]);
    assert_replays(&["decompose", "--mod", "3", "--nx", "120", "--ny", "120"]);
    assert_replays(&["sieve-find", "--p", "2", "--n", "2", "--d", "4", "--nx", "300", "--ny", "300"]);
    assert_replays(&["sieve-find", "--p", "2", "--n", "2", "--d", "4", "--nx", "60", "--ny", "60"]);
    assert_replays(&["sieve-experiment", "--seed", "3"]);
    assert_replays(&["powers-indep", "--u", "0,1", "--v", "-1,-1", "--p", "7", "--n", "10"]);
    assert_replays(&["build-f", "--nx", "40", "--ny", "40", "--audit"]);
    assert_replays(&["divisibility", "--p", "3", "--nx", "120", "--ny", "120"]);
    assert_replays(&["specker", "--p", "2", "--k-cut", "3", "--n", "8"]);
    assert_replays(&["continuum", "--rationals", "-1,0,1/2,1", "--n", "512", "--mod", "2"]);
    assert_replays(&["coinvariants", "--window", "group", "--width", "6"]);
    assert_replays(&["coinvariants", "--window", "completion", "--truncation", "3"]);
    assert_replays(&["h2hat-quotient", "--n", "3"]);
    assert_replays(&["ce-h2", "--n", "5"]);
    assert_replays(&["acceptance", "--criterion", "6", "--scale", "small"]);
}

#[test]
fn experiment_outcomes_are_seed_deterministic() {
    let (a, _) = report(&["sieve-experiment", "--seed", "11"]);
    let (b, _) = report(&["sieve-experiment", "--seed", "11"]);
    assert_eq!(a["result"], b["result"]);
    let (c, _) = report(&["sieve-experiment", "--seed", "12"]);
    assert_eq!(c["result"]["outcome"], "no-sieve-confirmed");
}
