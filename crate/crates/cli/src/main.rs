use std::io::Write;

fn main() {
    let outcome = katspp_cli::run(std::env::args_os());
    std::io::stdout().write_all(outcome.stdout.as_bytes()).expect("stdout is writable");
    std::process::exit(outcome.code);
}
