// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "latgame", version, about = "Selection games on finite lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct LatticeArg {
    /// Lattice file, or a catalog name such as `b2`, `chain:3`, `m3`.
    #[arg(long)]
    pub lattice: String,
}

#[derive(Debug, Clone, Args)]
pub struct CoversArgs {
    /// Cover file (a single cover, a list, or a sequence of covers).
    #[arg(long)]
    pub covers: PathBuf,
    /// Lattice to read the covers in; defaults to the one the file names.
    #[arg(long)]
    pub lattice: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PlayArgs {
    #[command(flatten)]
    pub lattice: LatticeArg,
    /// Player I strategy file.
    #[arg(long)]
    pub strategy: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// Overrides the seed of a seeded strategy.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct GateArgs {
    /// Refuse lattices without enough primes (the default).
    #[arg(long, conflicts_with = "exploratory")]
    pub strict: bool,
    /// Run the construction even when its hypotheses fail.
    #[arg(long)]
    pub exploratory: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelectorKind {
    S1,
    Sfin,
    Fbounded,
    Hurewicz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GameArg {
    #[value(name = "G1", alias = "g1")]
    G1,
    #[value(name = "Gfin", alias = "gfin")]
    Gfin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlayerTwo {
    /// Always the first item.
    First,
    /// The first item that raises the running join.
    Greedy,
    /// A seeded uniform draw.
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classification report.
    Classify(LatticeArg),
    /// Prime elements.
    Primes(LatticeArg),
    /// Prime spectrum and whether the lattice embeds in its opens.
    Spectrum(LatticeArg),
    /// Checks that every cover in a file covers its target.
    CheckCover(CoversArgs),
    /// Runs a selector over a cover list.
    Select {
        #[arg(value_enum)]
        selector: SelectorKind,
        #[command(flatten)]
        covers: CoversArgs,
        /// Bound function for `fbounded`, comma separated.
        #[arg(long, value_delimiter = ',')]
        f: Option<Vec<usize>>,
        /// Suffix index for `hurewicz`.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Plays a strategy against a stock Player II.
    Simulate {
        #[command(flatten)]
        play: PlayArgs,
        #[arg(long, value_enum, default_value = "G1")]
        game: GameArg,
        #[arg(long, value_enum, default_value = "greedy")]
        player_two: PlayerTwo,
    },
    /// Player II counter-play constructions.
    #[command(subcommand)]
    Counterplay(Counterplay),
    /// Serves the session API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
    /// Reads commands line by line from standard input.
    Repl,
}

#[derive(Debug, Subcommand)]
pub enum Counterplay {
    /// Finite-selection counter-play against a nice strategy.
    Menger {
        #[command(flatten)]
        play: PlayArgs,
        #[arg(long, default_value_t = 3)]
        branching: usize,
        #[command(flatten)]
        gate: GateArgs,
    },
    /// Severe defeat: every prime beaten repeatedly.
    Severe {
        #[command(flatten)]
        play: PlayArgs,
        #[arg(long, default_value_t = 3)]
        branching: usize,
        /// Fresh coordinates per round; defaults to the depth.
        #[arg(long)]
        width: Option<usize>,
        #[arg(long, default_value_t = 1)]
        recurrence: usize,
    },
    /// Single-pick counter-play through the history-wedge strategy.
    Rothberger {
        #[command(flatten)]
        play: PlayArgs,
        #[arg(long, default_value_t = 3)]
        branching: usize,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long, default_value_t = 64)]
        history_cap: usize,
    },
}
