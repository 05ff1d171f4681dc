use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = bergman_toeplitz::cli::main_with(std::env::args_os(), &mut io::stdin().lock(), &mut io::stdout().lock());
    ExitCode::from(code as u8)
}
