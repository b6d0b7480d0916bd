use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let outcome = lacunary::cli::dispatch(&args);
    for line in &outcome.log {
        eprintln!("{line}");
    }
    if let Some(doc) = &outcome.stdout {
        println!("{doc}");
    }
    ExitCode::from(outcome.code)
}
