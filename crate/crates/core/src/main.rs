use std::io::Write;

fn main() {
    let out = kappa::frontend::cli::run(std::env::args_os());
    let mut stdout = std::io::stdout();
    let _ = stdout.write_all(out.output.as_bytes());
    let _ = stdout.flush();
    std::process::exit(out.code);
}
