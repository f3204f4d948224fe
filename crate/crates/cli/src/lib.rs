// SPDX-License-Identifier: Apache-2.0

//! Command-line front end and session server for the lattice game library.

pub mod args;
pub mod commands;
pub mod repl;
pub mod server;
pub mod session;

pub use commands::{run_command, CommandOutput};
