use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn deckwright(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deckwright"))
        .args(args)
        .env_remove("DECKWRIGHT_MAX_N")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn tutte_of_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.g6", "Bw\n");
    let out = deckwright(&["poly", "--invariant", "tutte", "--graph", &k3, "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "x^2 + y + x");
    let out = deckwright(&["poly", "--invariant", "tutte", "--graph", &k3]);
    let v = json(&out);
    assert_eq!(v["invariant"], "tutte");
    assert_eq!(v["poly"].as_array().unwrap().len(), 3);
}

#[test]
fn deck_then_reconstruct_matches_direct() {
    let dir = tempfile::tempdir().unwrap();
    // The 5-cycle.
    let c5 = write(dir.path(), "c5.g6", "Dhc\n");
    let deck = dir.path().join("c5.deck");
    let out = deckwright(&["deck", "--graph", &c5, "--out", deck.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for inv in ["u", "xi", "interlace"] {
        let direct = json(&deckwright(&["poly", "--invariant", inv, "--graph", &c5]));
        let rebuilt = json(&deckwright(&["reconstruct", "--deck", deck.to_str().unwrap(), "--invariant", inv]));
        assert_eq!(direct["poly"], rebuilt["result"], "{inv}");
    }
}

#[test]
fn inconsistent_deck_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // One triangle card and three edgeless ones: the card edge counts sum to 3,
    // but every edge of a graph on four vertices survives on exactly two cards.
    let deck = write(dir.path(), "bad.deck", "n=4\nBw\nB?\nB?\nB?\n");
    let out = deckwright(&["reconstruct", "--deck", &deck, "--invariant", "u"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inconsistent deck"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let junk = write(dir.path(), "junk.g6", "not a graph\n");
    let out = deckwright(&["poly", "--invariant", "u", "--graph", &junk]);
    assert_eq!(out.status.code(), Some(2));
    let out = deckwright(&["poly", "--invariant", "u", "--graph", "/nonexistent/file"]);
    assert_eq!(out.status.code(), Some(2));
    let out = deckwright(&["verify", "--invariant", "u", "--max-n", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_orders() {
    let out = deckwright(&["verify", "--invariant", "u", "--max-n", "6"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
    let out = deckwright(&["verify", "--invariant", "ulab", "--max-n", "5", "--colors", "2", "--colorings", "3", "--seed", "7"]);
    assert!(out.status.success());
}

#[test]
fn neighborhoods_of_a_cycle() {
    let dir = tempfile::tempdir().unwrap();
    // The 7-cycle: every 1-ball is a path on three vertices rooted at its middle.
    let c7 = write(dir.path(), "c7.g6", "FhCKG\n");
    let deck = dir.path().join("c7.deck");
    assert!(deckwright(&["deck", "--graph", &c7, "--out", deck.to_str().unwrap()]).status.success());
    let out = deckwright(&["nbd", "--deck", deck.to_str().unwrap(), "--radius", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let nbd = v["neighborhoods"].as_array().unwrap();
    assert_eq!(nbd.len(), 1);
    assert_eq!(nbd[0]["count"], 7);
}

#[test]
fn fol_commands() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.g6", "C~\n");
    let clique = "forall x, y. (x != y <-> E(x,y))";
    let v = json(&deckwright(&["fol", "eval", "--formula", clique, "--graph", &k4]));
    assert_eq!(v["holds"], true);
    assert_eq!(v["rank"], 2);

    let c12 = write(dir.path(), "c12.g6", "KhCGGC@?G?o@\n");
    let v = json(&deckwright(&["fol", "hanf", "--graph", &c12, "--d", "1"]));
    assert_eq!(v["type"].as_array().unwrap().len(), 1);

    let out = deckwright(&["fol", "recognize", "--family", "ladder", "--max-n", "7"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["threshold"], 1);
    let out = deckwright(&["fol", "recognize", "--family", "gear", "--source", "literal", "--max-n", "7"]);
    assert_eq!(out.status.code(), Some(1));

    let out = deckwright(&["fol", "transfer", "--k", "1", "--max-n", "5"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["disagreements"].as_array().unwrap().len(), 0);
}

#[test]
fn enumerate_counts() {
    let out = deckwright(&["enumerate", "--n", "5"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 34);
    let out = deckwright(&["enumerate", "--n", "5", "--connected", "--format", "json"]);
    assert_eq!(json(&out)["count"], 21);
}
