//! Golden corpus in `corpus/`: every stored ideal must be fixed, the counts
//! must match, and the cheap cases are re-enumerated.

use std::collections::HashSet;
use std::path::PathBuf;

use fpure::cartier::CartierMap;
use fpure::enumerate::{enumerate_fixed, Limits};
use fpure::ffield::GaloisField;
use fpure::ideal::{Ideal, IdealKey};
use fpure::poly::Ring;
use serde::Deserialize;

#[derive(Deserialize)]
struct Expect {
    count: usize,
    proper_nonzero: usize,
    unit_fixed: bool,
}

#[derive(Deserialize)]
struct Entry {
    field: String,
    vars: Vec<String>,
    u: String,
    e: u32,
    expect: Expect,
    ideals: Vec<Vec<String>>,
}

const RERUN: &[&str] = &["two_variables", "determinantal"];

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load(name: &str) -> Entry {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn check(name: &str) {
    let entry = load(name);
    let r = Ring::from_var_list(GaloisField::parse(&entry.field).unwrap(), &entry.vars.join(",")).unwrap();
    let phi = CartierMap::new(r.parse(&entry.u).unwrap(), entry.e).unwrap();
    let ideals: Vec<Ideal> = entry
        .ideals
        .iter()
        .map(|g| Ideal::parse(&r, &g.iter().map(String::as_str).collect::<Vec<_>>()).unwrap())
        .collect();
    assert_eq!(ideals.len(), entry.expect.count, "{name}");
    let keys: HashSet<IdealKey> = ideals.iter().map(|i| i.key()).collect();
    assert_eq!(keys.len(), ideals.len(), "{name}: duplicate ideals");
    assert!(ideals.iter().any(|i| i.is_zero()), "{name}: <0> missing");
    assert_eq!(ideals.iter().any(|i| i.is_unit()), entry.expect.unit_fixed, "{name}");
    assert_eq!(phi.is_fixed(&Ideal::unit(&r)).unwrap(), entry.expect.unit_fixed, "{name}");
    let proper = ideals.iter().filter(|i| !i.is_zero() && !i.is_unit()).count();
    assert_eq!(proper, entry.expect.proper_nonzero, "{name}");
    for i in &ideals {
        assert!(phi.is_fixed(i).unwrap(), "{name}: {i} is not fixed");
    }
    if RERUN.contains(&name) {
        assert_eq!(enumerate_fixed(&phi, Limits::default()).unwrap().keys(), keys, "{name}");
    }
}

#[test]
fn two_variables() {
    check("two_variables");
}

#[test]
fn determinantal() {
    check("determinantal");
}

#[test]
fn quartic() {
    check("quartic");
}

#[test]
fn five_variables() {
    check("five_variables");
}
