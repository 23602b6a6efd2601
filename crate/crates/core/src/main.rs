use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let outcome = reciprocity::cli::run(&args);
    outcome.emit();
    ExitCode::from(outcome.exit_code())
}
