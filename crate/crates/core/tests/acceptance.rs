//! Acceptance suite: one PASS/FAIL line per criterion, at full size.

use std::process::ExitCode;

use jacpair::selftest::{run_all, Config};

fn main() -> ExitCode {
    let results = run_all(&Config::default(), |r| println!("{}", r.line()));
    let failed = results.iter().filter(|r| !r.passed()).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
