use std::process::ExitCode;

fn main() -> ExitCode {
    gcdfam::cli::main_with_args(std::env::args_os())
}
