use std::process::ExitCode;

fn main() -> ExitCode {
    let code = trimopt::cli::run(std::env::args_os());
    ExitCode::from(code)
}
