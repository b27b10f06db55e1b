use std::io;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = qdelannoy::cli::run(args, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
