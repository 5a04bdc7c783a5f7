use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = nilweight_cli::run_command(std::env::args_os());
    let written = if code == 2 {
        std::io::stderr().write_all(text.as_bytes())
    } else {
        std::io::stdout().write_all(text.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
