// SPDX-License-Identifier: Apache-2.0

use std::io::{BufRead, Write};

use crate::commands::run_command;

/// Runs one command per input line until end of input or `quit`.
/// Arguments split on whitespace; `#` starts a comment.
pub fn repl<R: BufRead, W: Write>(input: R, mut out: W, prompt: bool) -> std::io::Result<()> {
    if prompt {
        write!(out, "latgame> ")?;
        out.flush()?;
    }
    for line in input.lines() {
        let line = line?;
        let line = line.split('#').next().unwrap_or("").trim();
        if line == "quit" || line == "exit" {
            break;
        }
        if !line.is_empty() {
            let argv: Vec<&str> = std::iter::once("latgame").chain(line.split_whitespace()).collect();
            let result = run_command(&argv);
            out.write_all(result.stdout.as_bytes())?;
            out.write_all(result.stderr.as_bytes())?;
            if result.code != 0 {
                writeln!(out, "[exit {}]", result.code)?;
            }
        }
        if prompt {
            write!(out, "latgame> ")?;
            out.flush()?;
        }
    }
    Ok(())
}
