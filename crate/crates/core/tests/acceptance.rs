//! Runs the ten acceptance criteria and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use semikernel::selftest::selftest;

fn main() -> ExitCode {
    let start = Instant::now();
    let result = selftest();
    for c in &result.criteria {
        println!("{}", c.summary());
    }
    let passed = result.criteria.iter().filter(|c| c.passed()).count();
    println!(
        "acceptance: {passed}/{} criteria passed in {:.1}s",
        result.criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if result.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
