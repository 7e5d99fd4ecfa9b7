use assert_cmd::Command;
use klq_cli::output::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn klq() -> Command {
    let mut cmd = Command::cargo_bin("klq").unwrap();
    cmd.env_remove("KLQ_CACHE_DIR");
    cmd
}

fn stdout(args: &[&str]) -> String {
    let out = klq().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Parses the output into its schema, re-emits it and parses again.
fn fixpoint<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let text = stdout(args);
    let raw: Value = serde_json::from_str(&text).unwrap();
    let typed: T = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&typed).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&again).unwrap(), raw, "{args:?}");
    assert_eq!(serde_json::from_str::<T>(&again).unwrap(), typed);
    assert_eq!(stdout(args), text, "{args:?} is not stable under re-run");
    typed
}

fn fixture() -> String {
    format!("{}/../core/fixtures/f4.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn kl_expansion_of_s2_s1() {
    let out: KlOut = fixpoint(&["kl", "--type", "A", "--rank", "2", "--w", "2 1", "--basis", "Cprime", "--json"]);
    let coeffs: Vec<String> = out.terms.iter().map(|t| t.coeff.to_string()).collect();
    assert_eq!(out.terms.len(), 4);
    assert_eq!(coeffs, ["v^2", "v", "v", "1"]);
}

#[test]
fn every_subcommand_round_trips() {
    let g: GroupOut = fixpoint(&["group", "--type", "B", "--rank", "3", "--w", "w0(1,2)", "--json"]);
    assert_eq!(g.order, 48);
    let g: GroupOut = fixpoint(&["group", "--type", "A", "--rank", "2", "--all", "--json"]);
    assert_eq!(g.elements.unwrap().len(), 6);
    fixpoint::<KlOut>(&["kl", "--type", "G", "--rank", "2", "--w", "w0", "--basis", "C", "--x", "1", "--json"]);
    let c: CellsOut = fixpoint(&["cells", "--type", "A", "--rank", "3", "--kind", "left", "--json"]);
    assert_eq!(c.blocks.len(), 10);
    fixpoint::<QwOut>(&["qw", "--form", "GL", "--n", "3", "--w", "1", "--graded", "--shift", "auto", "--json"]);
    fixpoint::<PositivityOut>(&["check", "positivity", "--form", "SU", "--n", "4", "--all", "--json"]);
    fixpoint::<SubregOut>(&["check", "subreg", "--n", "5", "--json"]);
    fixpoint::<TriangularOut>(&["check", "triangular", "--n", "3", "--json"]);
    fixpoint::<LemmaOut>(&["check", "lemma", "--n", "4", "--json"]);
    fixpoint::<DeduceOut>(&["deduce", "--scenario", &fixture(), "--json"]);
}

#[test]
fn subreg_passes() {
    let r: SubregOut = fixpoint(&["check", "subreg", "--n", "4", "--json"]);
    assert!(r.pass);
}

#[test]
fn su6_row() {
    let r: QwOut = fixpoint(&["qw", "--form", "SU", "--n", "6", "--w", "1 3 4 3", "--json"]);
    let nonzero: Vec<(String, String)> = r
        .unipotent
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (l.to_string(), c.to_string()))
        .collect();
    assert_eq!(nonzero.len(), 6);
    assert!(nonzero.contains(&("3,2,1".into(), "2".into())));
    assert!(nonzero.contains(&("1,1,1,1,1,1".into(), "12".into())));
}

#[test]
fn deduce_f4() {
    let r: DeduceOut = fixpoint(&["deduce", "--scenario", &fixture(), "--json"]);
    assert_eq!(r.solutions.len(), 1);
    let m: Vec<String> = r.solutions[0].multiplicities.iter().map(|m| m.0.to_string()).collect();
    assert_eq!(m, ["32", "40", "40", "8", "0"]);
}

fn expect_exit(args: &[&str], code: i32) -> String {
    let out = klq().args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error["), "{err}");
    err
}

#[test]
fn exit_codes() {
    expect_exit(&["qw", "--type", "B", "--rank", "2", "--form", "GL", "--w", "1"], 2);
    expect_exit(&["qw", "--form", "SU", "--n", "3", "--w", "1", "--graded"], 2);
    expect_exit(&["kl", "--type", "A", "--rank", "2", "--w", "3"], 2);
    expect_exit(&["kl", "--type", "A", "--rank", "2"], 2);
    expect_exit(&["frobnicate"], 2);
    expect_exit(&["check", "subreg", "--n", "2"], 2);
    let err = expect_exit(&["group", "--type", "A", "--rank", "7", "--max-order", "1000"], 3);
    assert!(err.contains("limit"));
    expect_exit(&["cells", "--type", "A", "--rank", "4", "--max-cell-group", "100"], 3);
    klq().args(["--help"]).assert().success();
}

#[test]
fn text_output() {
    let text = stdout(&["check", "positivity", "--form", "GL", "--n", "3", "--all"]);
    assert!(text.lines().last() == Some("PASS"), "{text}");
    let text = stdout(&["deduce", "--scenario", &fixture()]);
    assert!(text.contains("72 - 32*f"), "{text}");
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let saved: CacheOut = fixpoint(&["cache", "save", "--type", "A", "--rank", "3", "--cache-dir", d, "--json"]);
    assert_eq!(saved.entries, 24);
    let loaded: CacheOut = fixpoint(&["cache", "load", "--type", "A", "--rank", "3", "--cache-dir", d, "--json"]);
    assert_eq!(loaded.entries, 24);

    let plain = stdout(&["kl", "--type", "A", "--rank", "3", "--w", "w0", "--json"]);
    let out = klq()
        .env("KLQ_CACHE_DIR", d)
        .args(["kl", "--type", "A", "--rank", "3", "--w", "w0", "--json"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), plain);

    expect_exit(&["cache", "load", "--type", "A", "--rank", "2", "--path", &saved.path], 2);
    let text = std::fs::read_to_string(&saved.path).unwrap();
    let tampered = text.replacen("[[1,1]]", "[[1,2]]", 1);
    assert_ne!(tampered, text);
    std::fs::write(&saved.path, tampered).unwrap();
    let err = expect_exit(&["cache", "load", "--type", "A", "--rank", "3", "--path", &saved.path], 2);
    assert!(err.contains("line"), "{err}");
}
