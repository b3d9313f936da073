use std::process::ExitCode;

fn main() -> ExitCode {
    a1tk::cli::main_with_args(std::env::args_os())
}
