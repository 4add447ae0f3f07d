mod cli;

use clap::Parser;

fn main() {
    let parsed = match cli::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let code = cli::run(&parsed, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
