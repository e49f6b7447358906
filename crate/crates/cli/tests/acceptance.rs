//! Runs every acceptance criterion and prints one PASS/FAIL line each. Exits
//! non-zero if any fails.

use std::process::ExitCode;

use rotkep_cli::verify;

fn main() -> ExitCode {
    let results = verify::run_all();
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
