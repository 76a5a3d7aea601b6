use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = delpezzo_cli::run(std::env::args_os());
    if let Some(out) = result.render_payload() {
        let mut stdout = std::io::stdout().lock();
        // a closed pipe is not worth a panic
        let _ = writeln!(stdout, "{out}");
    }
    for d in &result.diagnostics {
        eprintln!("{d}");
    }
    ExitCode::from(result.exit_code as u8)
}
