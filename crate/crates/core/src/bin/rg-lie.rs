use std::io::Write;

fn main() {
    if let Err(e) = rg_lie::cli::configure_threads() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
    let out = rg_lie::cli::run_from(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
