use std::process::ExitCode;

fn main() -> ExitCode {
    neutralex::cli::main_with_args(std::env::args_os())
}
