use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(ramsey_qubo::cli::main_with_args(std::env::args_os()))
}
