use std::process::ExitCode;

use clap::Parser;

mod commands;
mod output;

use commands::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bound(args) => commands::bound(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Verify(args) => commands::verify(args),
        Command::ChannelInfo(args) => commands::channel_info(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
