use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let (code, out, err) = schlicht::cli::run(&argv);
    print!("{out}");
    eprint!("{err}");
    ExitCode::from(code as u8)
}
