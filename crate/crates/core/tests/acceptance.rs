use std::process::ExitCode;

use fsgkit::verify;

fn main() -> ExitCode {
    let outcomes = verify::run_all();
    for o in &outcomes {
        println!("{}", verify::format_line(o));
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!("acceptance: {} of {} criteria pass", outcomes.len() - failed.len(), outcomes.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
