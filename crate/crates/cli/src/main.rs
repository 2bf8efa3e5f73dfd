use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(islands_cli::run(std::env::args_os()))
}
