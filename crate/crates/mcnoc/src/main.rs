use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match mcnoc::cli::run_args(std::env::args_os()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mcnoc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
