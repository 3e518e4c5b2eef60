mod commands;

use std::process::ExitCode;

use clap::Parser;

use commands::Cli;

const EXIT_VALIDATION: u8 = 2;
const EXIT_CAPACITY: u8 = 3;
const EXIT_USAGE: u8 = 64;

fn exit_code(err: &anyhow::Error) -> u8 {
    use dqi_bpsp::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::Capacity(_)) => EXIT_CAPACITY,
        Some(
            Error::InvalidArgument(_)
            | Error::Parse { .. }
            | Error::Validation(_)
            | Error::Unsupported(_)
            | Error::MalformedCircuit(_)
            | Error::ProfileMode(_),
        ) => EXIT_VALIDATION,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
