//! The acceptance suite as an integration test target: one pass/fail line
//! per criterion (run with `cargo test --test acceptance -- --nocapture` to
//! see the lines as they complete).

use quasimod::acceptance::run_all;

#[test]
fn acceptance_criteria() {
    let results = run_all();
    let mut all_pass = true;
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {} ({:.2}s): {}", r.name, r.seconds, r.detail);
        all_pass &= r.pass;
    }
    assert!(all_pass, "acceptance criteria failed");
}
