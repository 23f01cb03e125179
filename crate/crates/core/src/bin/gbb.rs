use std::process::ExitCode;

use clap::Parser;
use gbb::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.envelope.to_json());
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.error);
            if f.code() == 3 {
                eprintln!("inputs: {}", serde_json::to_string_pretty(&f.inputs).unwrap_or_default());
            }
            ExitCode::from(f.code() as u8)
        }
    }
}
