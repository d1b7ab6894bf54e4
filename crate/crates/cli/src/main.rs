use std::io::Write;

fn main() {
    let (code, out) = stringnet_cli::run(std::env::args_os());
    let _ = writeln!(std::io::stdout().lock(), "{out}");
    std::process::exit(code);
}
