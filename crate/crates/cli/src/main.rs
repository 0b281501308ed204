use std::process::ExitCode;

fn main() -> ExitCode {
    let result = catalan_cli::run(std::env::args_os());
    if result.exit_code != catalan_cli::EXIT_USAGE {
        print!("{}", result.payload);
    } else {
        eprint!("{}", result.payload);
    }
    ExitCode::from(result.exit_code as u8)
}
