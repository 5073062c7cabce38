use std::io::Write;

fn main() {
    let out = factoriza_cli::run_args(std::env::args_os().skip(1));
    for d in &out.diagnostics {
        eprintln!("factoriza: {d}");
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.text.as_bytes());
    let _ = stdout.flush();
    std::process::exit(out.code);
}
