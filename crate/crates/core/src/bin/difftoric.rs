use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use difftoric::cli::{error_json, run, Args, Request};
use difftoric::Error;

fn read_input(arg: Option<&str>) -> Result<String, Error> {
    match arg {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
        Some(a) if a.trim_start().starts_with(['[', '{']) => Ok(a.to_string()),
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}"))),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = match read_input(args.input.as_deref()) {
        Ok(s) => s,
        Err(e) => {
            print!("{}", error_json(&e));
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let outcome = run(&Request { command: args.command, input, options: args.options() });
    print!("{}", outcome.output);
    ExitCode::from(outcome.code as u8)
}
