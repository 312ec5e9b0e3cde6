//! Runs the full acceptance suite and prints one PASS/FAIL line per criterion. Uses its own
//! harness so the lines are not swallowed by output capture.

use rmlab::acceptance::{run_suite, suite};

fn main() {
    let s = suite("full", None).expect("built-in fixtures");
    let outcomes = run_suite(&s, |o| println!("{o}"));
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria passed", outcomes.len());
    if passed != outcomes.len() {
        std::process::exit(1);
    }
}
