//! Every record-format command emits its full key set.

use std::collections::BTreeMap;

use char3_isogeny_cli::*;

fn iso3(args: &[&str]) -> Outcome {
    run(std::iter::once("iso3").chain(args.iter().copied()))
}

type Record = BTreeMap<String, String>;

/// Top-level keys, plus one map per `[name] ... [end]` block.
fn parse(text: &str) -> (Record, Vec<(String, Record)>) {
    let mut top = BTreeMap::new();
    let mut blocks = Vec::new();
    let mut current: Option<(String, Record)> = None;
    for line in text.lines() {
        if line == "[end]" {
            blocks.push(current.take().expect("block open"));
        } else if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            assert!(current.is_none(), "nested block");
            current = Some((name.to_string(), BTreeMap::new()));
        } else {
            let (k, v) = line.split_once('=').unwrap_or_else(|| panic!("not a record: {line}"));
            let map = match &mut current {
                Some((_, m)) => m,
                None => &mut top,
            };
            assert!(map.insert(k.to_string(), v.to_string()).is_none(), "duplicate key {k}");
        }
    }
    assert!(current.is_none(), "unterminated block");
    (top, blocks)
}

fn assert_keys(map: &Record, keys: &[&str]) {
    for k in keys {
        assert!(map.contains_key(*k), "missing key {k} in {map:?}");
    }
    assert_eq!(map.len(), keys.len(), "unexpected keys in {map:?}");
}

const CONSTRUCT_KEYS: [&str; 13] = [
    "command", "field", "modulus", "A", "B", "c", "seed_kind", "seed", "prec", "psi0",
    "principal_part_ok", "gamma0_roots", "solutions",
];
const SOLUTION_KEYS: [&str; 6] = ["index", "gamma0", "eta_coeffs", "rational", "y_multiplier", "certified_prec"];

#[test]
fn construct_schema() {
    let out = iso3(&[
        "construct", "--field", "3^2", "--A", "1", "--B", "2", "--seed-beta", "x^2/(x^9+x^3-1)",
        "--prec", "64", "--format", "records",
    ]);
    assert_eq!(out.code, 0);
    let (top, blocks) = parse(&out.stdout);
    assert_keys(&top, &CONSTRUCT_KEYS);
    assert_eq!(top["solutions"], "3");
    assert_eq!(blocks.len(), 3);
    for (name, b) in &blocks {
        assert_eq!(name, "solution");
        assert_keys(b, &SOLUTION_KEYS);
    }
    assert_eq!(blocks[0].1["rational"], "(x^4+x^2+2*x+1)/(x^3+x+2)");
    assert_eq!(blocks[0].1["certified_prec"], "64");
}

#[test]
fn eta_coeffs_round_trip() {
    let out = iso3(&[
        "construct", "--A", "1", "--B", "1", "--seed-coeffs", "1:1,4:2", "--prec", "32", "--format", "records",
    ]);
    let (_, blocks) = parse(&out.stdout);
    let b = &blocks[0].1;
    assert_eq!(b["rational"], "none");
    assert_eq!(b["certified_prec"], "none");
    let back = iso3(&["verify", "--A", "1", "--B", "1", "--eta", &b["eta_coeffs"], "--prec", "32", "--format", "records"]);
    let (top, _) = parse(&back.stdout);
    assert_eq!(top["eta_coeffs"], b["eta_coeffs"]);
}

#[test]
fn verify_schema() {
    let keys = ["command", "field", "eta_coeffs", "holds", "checked_to", "first_failure_exponent", "first_failure_value"];
    let ok = iso3(&["verify", "--A", "1", "--B", "1", "--eta", "x", "--format", "records"]);
    let (top, blocks) = parse(&ok.stdout);
    assert_keys(&top, &keys);
    assert!(blocks.is_empty());
    assert_eq!(top["holds"], "true");
    let bad = iso3(&["verify", "--A", "1", "--B", "1", "--eta", "x+1", "--format", "records"]);
    let (top, _) = parse(&bad.stdout);
    assert_keys(&top, &keys);
    assert_eq!(top["first_failure_exponent"], "0");
}

#[test]
fn identify_schema() {
    let out = iso3(&["identify", "--A", "-1", "--B", "0", "--fx", "x+1", "--fy", "1", "--format", "records"]);
    let (top, _) = parse(&out.stdout);
    assert_keys(
        &top,
        &["command", "field", "fx", "fy", "points", "on_curve", "homomorphism", "homomorphism_exhaustive", "scalar", "label"],
    );
    assert_eq!(top["scalar"], "none");
}

#[test]
fn example_schema() {
    for n in 1..=4u8 {
        let out = cmd_example(n, Format::Records);
        let (top, blocks) = parse(&out.stdout);
        assert_keys(&top, &CONSTRUCT_KEYS);
        for (name, b) in &blocks {
            match name.as_str() {
                "solution" => assert_keys(b, &SOLUTION_KEYS),
                "check" => {
                    assert_keys(b, &["description", "ok"]);
                    assert_eq!(b["ok"], "true");
                }
                other => panic!("unknown block {other}"),
            }
        }
    }
}
