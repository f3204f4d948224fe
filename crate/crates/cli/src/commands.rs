// SPDX-License-Identifier: Apache-2.0

//! `run_command`: argv in, exit code and captured output out.

use std::fs;
use std::path::Path;

use clap::Parser;
use latgame_core::counterplay::{
    menger_counterplay, rothberger_counterplay, severe_defeat_play, GateMode, RothbergerConfig,
};
use latgame_core::covers::{f_bounded_select, hurewicz_check, is_cover, s1_select, sfin_select};
use latgame_core::format::{
    classification_doc, finite_cofinite_doc, menger_doc, parse_covers_input, parse_lattice, parse_strategy,
    rothberger_doc, severe_doc, spectrum_doc, to_json, transcript_doc, LatticeRef, LoadedLattice, LoadedStrategy,
};
use latgame_core::game::{normalize_to_nice, play, FnSelector, GameKind, Inning};
use latgame_core::{Elem, Error, FiniteLattice, Lattice};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{Cli, Command, Counterplay, CoversArgs, GameArg, GateArgs, PlayArgs, PlayerTwo, SelectorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    result: T,
}

#[derive(Debug, Serialize)]
struct ErrorDoc<'a> {
    error: &'a str,
    message: String,
}

/// A failure before or during a command.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1, with the library's error name.
    Domain(Error),
    /// Exit 2: bad arguments or unreadable files.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<CommandOutput, Failure>;

fn ok<T: Serialize>(command: &str, seed: Option<u64>, result: T) -> CommandOutput {
    CommandOutput {
        code: 0,
        stdout: to_json(&Envelope { command, seed, result }),
        stderr: String::new(),
    }
}

fn failure_output(f: Failure) -> CommandOutput {
    match f {
        Failure::Domain(e) => CommandOutput {
            code: 1,
            stdout: to_json(&ErrorDoc {
                error: e.name(),
                message: e.to_string(),
            }),
            stderr: format!("error: {}: {e}\n", e.name()),
        },
        Failure::Usage(msg) => CommandOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

/// Runs one command. `argv[0]` is the program name. `serve` and `repl`
/// are rejected here; the binary handles them.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> CommandOutput {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    run(&cli.command).unwrap_or_else(failure_output)
}

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Classify(a) => Ok(match load_lattice(&a.lattice)? {
            LoadedLattice::FiniteCofinite => ok("classify", None, finite_cofinite_doc()),
            LoadedLattice::Finite(l) => ok("classify", None, classification_doc(&l)),
        }),
        Command::Primes(a) => Ok(match load_lattice(&a.lattice)? {
            LoadedLattice::FiniteCofinite => {
                let d = finite_cofinite_doc();
                ok(
                    "primes",
                    None,
                    PrimesDoc::Symbolic {
                        lattice: d.lattice,
                        primes: d.primes,
                    },
                )
            }
            LoadedLattice::Finite(l) => ok(
                "primes",
                None,
                PrimesDoc::Finite {
                    lattice: l.name().to_string(),
                    primes: l.labels(&l.classification().primes),
                },
            ),
        }),
        Command::Spectrum(a) => {
            let l = load_lattice(&a.lattice)?.finite()?;
            Ok(ok("spectrum", None, spectrum_doc(&l)))
        }
        Command::CheckCover(a) => check_cover(a),
        Command::Select { selector, covers, f, t } => select(*selector, covers, f.as_deref(), *t),
        Command::Simulate { play, game, player_two } => simulate(play, *game, *player_two),
        Command::Counterplay(c) => counterplay(c),
        Command::Serve { .. } | Command::Repl => Err(Failure::Usage("serve and repl run only from the binary".into())),
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
enum PrimesDoc {
    Finite { lattice: String, primes: Vec<String> },
    Symbolic { lattice: String, primes: String },
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// A lattice file when `arg` names an existing file, otherwise a catalog
/// name.
pub fn load_lattice(arg: &str) -> std::result::Result<LoadedLattice, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(parse_lattice(&read(path)?)?);
    }
    if arg.ends_with(".json") || arg.contains('/') {
        return Err(Failure::Usage(format!("cannot read {arg}: no such file")));
    }
    Ok(LatticeRef::Name(arg.to_string()).load()?)
}

#[derive(Debug, Serialize)]
struct CoverCheckDoc {
    items: Vec<String>,
    sup: String,
    is_cover: bool,
}

#[derive(Debug, Serialize)]
struct CheckCoverDoc {
    lattice: String,
    target: String,
    covers: Vec<CoverCheckDoc>,
    all_cover: bool,
}

fn check_cover(a: &CoversArgs) -> Outcome {
    let lat = a
        .lattice
        .as_deref()
        .map(load_lattice)
        .transpose()?
        .map(|l| l.finite())
        .transpose()?;
    let r = parse_covers_input(&read(&a.covers)?)?.resolve(lat.as_ref())?;
    let l = &r.lattice;
    let covers: Vec<CoverCheckDoc> = r
        .lists
        .iter()
        .map(|items| CoverCheckDoc {
            items: l.labels(items),
            sup: l.label_of(l.sup_family(items)).to_string(),
            is_cover: is_cover(l, items, &r.target),
        })
        .collect();
    let all_cover = covers.iter().all(|c| c.is_cover);
    let mut out = ok(
        "check-cover",
        None,
        CheckCoverDoc {
            lattice: l.name().to_string(),
            target: l.label_of(r.target).to_string(),
            covers,
            all_cover,
        },
    );
    if let Some(bad) = r.lists.iter().find(|items| !is_cover(l, items, &r.target)) {
        let e = Error::NotACover {
            sup: l.label_of(l.sup_family(bad)).to_string(),
            target: l.label_of(r.target).to_string(),
        };
        out.code = 1;
        out.stderr = format!("error: {}: {e}\n", e.name());
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct SelectionDoc {
    selector: &'static str,
    lattice: String,
    target: String,
    /// Picked indices per cover.
    selection: Vec<Vec<usize>>,
    items: Vec<Vec<String>>,
    join: String,
}

fn select(kind: SelectorKind, a: &CoversArgs, f: Option<&[usize]>, t: Option<usize>) -> Outcome {
    let lat = a
        .lattice
        .as_deref()
        .map(load_lattice)
        .transpose()?
        .map(|l| l.finite())
        .transpose()?;
    let c = parse_covers_input(&read(&a.covers)?)?.load(lat.as_ref())?;
    let l = &c.lattice;
    let (name, found) = match kind {
        SelectorKind::S1 => (
            "s1",
            s1_select(l, &c.covers, &c.target)?.map(|s| s.into_iter().map(|i| vec![i]).collect()),
        ),
        SelectorKind::Sfin => ("sfin", sfin_select(l, &c.covers, &c.target)?),
        SelectorKind::Fbounded => {
            let f = f
                .map(<[usize]>::to_vec)
                .or_else(|| c.f.clone())
                .ok_or_else(|| Failure::Usage("fbounded needs --f or an `f` field in the cover file".into()))?;
            ("fbounded", f_bounded_select(l, &c.covers, &f, &c.target)?)
        }
        SelectorKind::Hurewicz => {
            if c.target != l.top_elem() {
                return Err(Error::TargetNotTop.into());
            }
            let t = t.ok_or_else(|| Failure::Usage("hurewicz needs --t".into()))?;
            ("hurewicz", hurewicz_check(l, &c.covers, t)?)
        }
    };
    let Some(selection) = found else {
        return Ok(CommandOutput {
            code: 1,
            stdout: "none\n".into(),
            stderr: String::new(),
        });
    };
    let items: Vec<Vec<Elem>> = selection
        .iter()
        .zip(&c.covers)
        .map(|(s, cov)| s.iter().map(|&i| cov.items()[i]).collect())
        .collect();
    let join = l.sup_family(&items.concat());
    Ok(ok(
        "select",
        None,
        SelectionDoc {
            selector: name,
            lattice: l.name().to_string(),
            target: l.label_of(c.target).to_string(),
            items: items.iter().map(|s| l.labels(s)).collect(),
            selection,
            join: l.label_of(join).to_string(),
        },
    ))
}

fn load_play(a: &PlayArgs) -> std::result::Result<(FiniteLattice, LoadedStrategy), Failure> {
    let lat = load_lattice(&a.lattice.lattice)?.finite()?;
    let strategy = parse_strategy(&read(&a.strategy)?, &lat, a.seed)?;
    Ok((lat, strategy))
}

fn simulate(a: &PlayArgs, game: GameArg, two: PlayerTwo) -> Outcome {
    let (lat, strategy) = load_play(a)?;
    let kind = match game {
        GameArg::G1 => GameKind::G1,
        GameArg::Gfin => GameKind::Gfin,
    };
    let draw_seed = a.seed.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(draw_seed);
    let mut selector = FnSelector(|history: &[Inning<Elem>], offered: &[Elem]| {
        let running = history.last().map_or(lat.bottom_elem(), |h| h.running_join);
        Ok(vec![match two {
            PlayerTwo::First => 0,
            PlayerTwo::Greedy => offered.iter().position(|&c| !lat.le(c, running)).unwrap_or(0),
            PlayerTwo::Random => rng.random_range(0..offered.len()),
        }])
    });
    let t = play(&lat, kind, &strategy, &mut selector, &lat.top_elem(), a.depth)?;
    let seed = if two == PlayerTwo::Random {
        Some(draw_seed)
    } else {
        strategy.seed()
    };
    Ok(ok("simulate", seed, transcript_doc(&lat, &t)))
}

fn gate_mode(g: &GateArgs) -> GateMode {
    if g.exploratory {
        GateMode::Exploratory
    } else {
        GateMode::Strict
    }
}

fn counterplay(c: &Counterplay) -> Outcome {
    match c {
        Counterplay::Menger { play, branching, gate } => {
            let (lat, strategy) = load_play(play)?;
            let tree = normalize_to_nice(&lat, &strategy, &lat.top_elem(), play.depth, *branching)?;
            let report = menger_counterplay(&lat, &tree, gate_mode(gate))?;
            Ok(ok("counterplay menger", strategy.seed(), menger_doc(&lat, &report)))
        }
        Counterplay::Severe {
            play,
            branching,
            width,
            recurrence,
        } => {
            let (lat, strategy) = load_play(play)?;
            let tree = normalize_to_nice(&lat, &strategy, &lat.top_elem(), play.depth, *branching)?;
            let (_, report) = severe_defeat_play(&lat, &tree, play.depth, width.unwrap_or(play.depth), *recurrence)?;
            Ok(ok("counterplay severe", strategy.seed(), severe_doc(&lat, &report)))
        }
        Counterplay::Rothberger {
            play,
            branching,
            width,
            history_cap,
        } => {
            let (lat, strategy) = load_play(play)?;
            let config = RothbergerConfig {
                depth: play.depth,
                branching: *branching,
                width: width.unwrap_or(play.depth),
                history_cap: *history_cap,
            };
            let report = rothberger_counterplay(&lat, &strategy, config)?;
            Ok(ok(
                "counterplay rothberger",
                strategy.seed(),
                rothberger_doc(&lat, &report),
            ))
        }
    }
}
