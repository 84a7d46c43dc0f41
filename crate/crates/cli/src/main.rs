use std::process::ExitCode;

fn main() -> ExitCode {
    hjrsp_cli::main_with_args(std::env::args_os())
}
