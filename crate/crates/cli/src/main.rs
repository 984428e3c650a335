use std::io::Write;
use std::process::ExitCode;

use gamma_hyperlab_cli::{run_command, THREADS_VAR};

fn main() -> ExitCode {
    let threads = std::env::var(THREADS_VAR).ok();
    let outcome = run_command(std::env::args_os(), threads.as_deref());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
