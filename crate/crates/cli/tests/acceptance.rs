//! Runs every acceptance criterion at full size and prints one line each.

use std::process::ExitCode;

use rnashapes_cli::acceptance::{run_criterion, SuiteOptions, CRITERIA};

fn main() -> ExitCode {
    let opts = SuiteOptions::full();
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let o = run_criterion(c.id, &opts);
        println!("{o}");
        if !o.passed {
            failed.push(o.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria passed", CRITERIA.len(), CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
