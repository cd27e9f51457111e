//! End-to-end tests of the `twistor` binary: output shape and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn ideal_cyclic_6() {
    let doc = json(&["ideal", "--group", "cyclic:6"]);
    assert_eq!(doc["twist_ideal"]["rank"], 2);
    assert_eq!(doc["twist_ideal"]["saturated"], true);
    assert_eq!(doc["twist_ideal"]["right_ideal"], true);
    assert_eq!(doc["annihilator_principal"], true);
    assert_eq!(doc["annihilator"]["rank"], 4);
    assert_eq!(doc["twist_ideal"]["basis"][0][0], "1");
    // the subgroup lattice of Z/6 yields one isotypic ideal per divisor
    assert_eq!(doc["isotypic"].as_array().unwrap().len(), 4);
}

#[test]
fn ideal_dihedral() {
    let doc = json(&["ideal", "--group", "dihedral:3"]);
    assert_eq!(doc["group_order"], 6);
    assert_eq!(doc["twist_ideal"]["rank"], 2);
    assert!(doc["annihilator_principal"].is_null());
    assert!(doc["isotypic"].is_null()); // non-abelian: no isotypic list
}

#[test]
fn order_gm() {
    let doc = json(&["order", "--model", "gm:p=5", "--r", "6"]);
    assert_eq!(doc["twisted_order"], "21");
    assert_eq!(doc["base_order"], "4");
    assert_eq!(doc["top_point_count"], "15624");
    assert_eq!(doc["product_check"], true);
}

#[test]
fn order_elliptic() {
    let doc = json(&["order", "--model", "ec:p=5,a=1,b=1", "--r", "2"]);
    assert_eq!(doc["frobenius_charpoly"][1], "3"); // X^2 + 3X + 5
    assert_eq!(doc["twisted_order"], "3");
}

#[test]
fn bruteforce_matches() {
    let doc = json(&["bruteforce", "--model", "gm:p=2", "--r", "6"]);
    assert_eq!(doc["count"], 3);
    assert_eq!(doc["matches_charpoly"], true);
    assert_eq!(doc["is_subgroup"], true);
}

#[test]
fn charpoly_dual_route() {
    let doc = json(&["charpoly", "--f", "-5,1", "--r", "6", "--d", "6"]);
    assert_eq!(doc["routes_agree"], true);
    assert_eq!(doc["order_at_one"], "21");
}

#[test]
fn perms_scan() {
    let doc = json(&["perms", "--group", "cyclic:4"]);
    assert_eq!(doc["coset_condition_count"], doc["ideal_stabilizer_count"]);
    assert_eq!(doc["conditions_coincide"], true);
}

#[test]
fn verify_single_criterion() {
    let doc = json(&["verify", "--criterion", "4"]);
    assert_eq!(doc["all_passed"], true);
    assert_eq!(doc["criteria"][0]["number"], 4);
}

#[test]
fn pretty_flag_is_not_json() {
    let out = run(&["ideal", "--group", "cyclic:4", "--pretty"]);
    assert!(out.status.success());
    assert!(serde_json::from_slice::<serde_json::Value>(&out.stdout).is_err());
}

#[test]
fn exit_codes() {
    // 2: unparseable spec
    assert_eq!(run(&["ideal", "--group", "wat"]).status.code(), Some(2));
    // 2: bad polynomial
    assert_eq!(
        run(&["charpoly", "--f", "x+1", "--r", "2", "--d", "2"]).status.code(),
        Some(2)
    );
    // 3: precondition (composite characteristic)
    assert_eq!(
        run(&["order", "--model", "gm:p=4", "--r", "2"]).status.code(),
        Some(3)
    );
    // 4: resource bound (enumeration too large)
    assert_eq!(
        run(&["bruteforce", "--model", "gm:p=13", "--r", "9"]).status.code(),
        Some(4)
    );
}

#[test]
fn workers_flag() {
    let doc = json(&["--workers", "2", "bruteforce", "--model", "gm:p=5", "--r", "6"]);
    assert_eq!(doc["count"], 21);
}
