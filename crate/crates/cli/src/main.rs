// SPDX-License-Identifier: Apache-2.0

use std::io::{self, IsTerminal, Write};
use std::process::ExitCode;

use clap::Parser;
use latgame_cli::args::{Cli, Command};
use latgame_cli::{repl, run_command, server};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    // Check for the long-running commands first; everything else goes
    // through the captured runner.
    if let Ok(cli) = Cli::try_parse_from(&argv) {
        match cli.command {
            Command::Serve { port } => {
                let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
                return match rt.block_on(server::serve(port)) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        eprintln!("error: {e}");
                        ExitCode::from(2)
                    }
                };
            }
            Command::Repl => {
                let stdin = io::stdin();
                let prompt = stdin.is_terminal();
                return match repl::repl(stdin.lock(), io::stdout().lock(), prompt) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        eprintln!("error: {e}");
                        ExitCode::from(2)
                    }
                };
            }
            _ => {}
        }
    }
    let out = run_command(&argv);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = io::stdout().flush();
    ExitCode::from(out.code as u8)
}
