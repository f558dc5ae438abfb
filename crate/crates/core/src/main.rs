use std::io::Write;

use hopfinv::cli::{run, Cli, EXIT_BAD_INPUT};

fn main() {
    let cli = match <Cli as clap::Parser>::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_BAD_INPUT } else { 0 });
        }
    };
    let out = run(&cli);
    if cli.verbose > 0 || out.code != 0 {
        eprintln!("{}", out.summary);
    }
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.report).map_err(|e| e.to_string()),
        None => std::io::stdout().write_all(out.report.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("{{\"error\": {:?}}}", format!("cannot write report: {e}"));
        std::process::exit(EXIT_BAD_INPUT);
    }
    std::process::exit(out.code);
}
