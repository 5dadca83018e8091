use std::path::PathBuf;
use std::process::{Command, Output};

use orbibracket::cyclic_words::{parse_word, OrbifoldSignature};
use orbibracket::loop_module::LoopCombination;
use serde_json::Value;

fn orbibracket(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbibracket")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

#[test]
fn first_worked_example_prints_zero() {
    let o = orbibracket(&["bracket", "--orders", "2,4", "--alpha", "aab", "--beta", "abb"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0");
}

#[test]
fn second_worked_example_prints_two_terms() {
    let o = orbibracket(&["bracket", "--orders", "3,4", "--alpha", "aab", "--beta", "abb"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text, "\u{2212}1\u{00b7}abaabb +1\u{00b7}abbaab");
    // The printed words are the classes of b a b^2 a^2 and b^2 a b a^2.
    let sig: OrbifoldSignature = "3,4".parse().unwrap();
    assert_eq!(parse_word("abbaab", &sig).unwrap(), parse_word("babbaa", &sig).unwrap());
    assert_eq!(parse_word("abaabb", &sig).unwrap(), parse_word("bbabaa", &sig).unwrap());
}

#[test]
fn generator_syntax_is_accepted() {
    let o = orbibracket(&["bracket", "--orders", "3,4", "--alpha", "g1^2g2", "--beta", "g1g2^2"]);
    assert_eq!(stdout(&o), "\u{2212}1\u{00b7}abaabb +1\u{00b7}abbaab");
}

#[test]
fn printed_words_reparse() {
    let o = orbibracket(&["bracket", "--orders", "3,4", "--alpha", "aab", "--beta", "abb"]);
    let sig: OrbifoldSignature = "3,4".parse().unwrap();
    for term in stdout(&o).split(' ') {
        let word = term.split('\u{00b7}').nth(1).unwrap();
        let w = parse_word(word, &sig).unwrap();
        assert_eq!(w.display_for_rank(2), word);
    }
}

#[test]
fn json_bracket_reloads() {
    let o = orbibracket(&["--json", "bracket", "--orders", "3,4", "--alpha", "aab", "--beta", "abb"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    let back = LoopCombination::<i64>::from_json(&v).unwrap();
    assert_eq!(back.to_string(), "\u{2212}1\u{00b7}abaabb +1\u{00b7}abbaab");
}

#[test]
fn normalize_example() {
    let o = orbibracket(&["normalize", "--orders", "2,4", "--word", "aab"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "b");
    let o = orbibracket(&["normalize", "--orders", "2,4", "--word", "abab"]);
    assert_eq!(stdout(&o), "abab");
    let o = orbibracket(&["--json", "normalize", "--orders", "2,4", "--word", "aa"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["word"], "1");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let o = orbibracket(&["normalize", "--orders", "2,4", "--word", "ab#"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("position 2"), "{err}");
    assert!(err.contains("    ^"), "{err}");
    let o = orbibracket(&["bracket", "--orders", "2,0", "--alpha", "a", "--beta", "b"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn signature_mismatch_is_reported() {
    let o = orbibracket(&["bracket", "--orders", "2,4", "--alpha", "abc", "--beta", "b"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("generator 3 is out of range"), "{err}");
}

#[test]
fn sphere_check_passes() {
    let o = orbibracket(&["sphere-check", "--n", "1", "--bound", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn bv_check_on_fixtures() {
    let o = orbibracket(&["bv-check", &data("exterior.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = orbibracket(&["bv-check", &data("gysin.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("T is a Lie morphism"));
    let o = orbibracket(&["--json", "bv-check", &data("not_bv.json")]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
    assert!(v["reports"][0]["witness"].is_string());
}

#[test]
fn bv_check_input_errors() {
    let o = orbibracket(&["bv-check", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("orbibracket-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"schema": 1, "kind": "bv", "degrees": [0], "product": [[0, 0, 5, 1]]}"#).unwrap();
    let o = orbibracket(&["bv-check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn hochschild_check_exit_codes() {
    let o = orbibracket(&["hochschild-check", "--algebra", "ground", "--truncation", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // B fails to be a chain-level derivation of the shuffle product here.
    let o = orbibracket(&["--json", "hochschild-check", "--algebra", "dual", "--truncation", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failing: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["passed"] == false)
        .map(|r| r["identity"].as_str().unwrap())
        .collect();
    assert_eq!(failing, vec!["dual numbers: B derivation of shuffle"]);
    assert_eq!(v["notes"][0]["passed"], true);
    let o = orbibracket(&["hochschild-check", "--algebra", "quaternions"]);
    assert_eq!(o.status.code(), Some(2));
}
