//! The acceptance gate: runs every verification criterion, prints one
//! pass/fail line per criterion, and fails the test if any criterion fails.

use twistor::verify::run_all;

#[test]
fn acceptance_gate() {
    let reports = run_all();
    let mut all_ok = true;
    for rep in &reports {
        let status = if rep.passed { "PASS" } else { "FAIL" };
        println!(
            "[{status}] criterion {:2}: {} ({} cases)",
            rep.number, rep.name, rep.cases
        );
        if !rep.passed {
            all_ok = false;
            for f in &rep.failures {
                println!("         failure: {f}");
            }
        }
    }
    assert!(all_ok, "one or more acceptance criteria failed");
}
