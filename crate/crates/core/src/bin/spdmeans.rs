use std::process::ExitCode;

fn main() -> ExitCode {
    spd_means::cli::run(std::env::args_os())
}
