// SPDX-License-Identifier: Apache-2.0

//! Running a game to finite depth, re-checking a finished transcript, and a
//! brute-force game value over a finite pool of covers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::strategy::{history_path, Inning, Selector, Strategy};
use crate::covers::Cover;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Largest cover pool and depth [`game_value`] accepts.
pub const GAME_VALUE_BOUND: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameKind {
    /// One item per inning.
    G1,
    /// A finite set of items per inning.
    Gfin,
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameKind::G1 => "G1",
            GameKind::Gfin => "Gfin",
        })
    }
}

impl FromStr for GameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G1" | "g1" => Ok(GameKind::G1),
            "Gfin" | "gfin" | "GFIN" => Ok(GameKind::Gfin),
            _ => Err(Error::Parse(format!("unknown game `{s}` (expected G1 or Gfin)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// The running join first reached the target at this inning.
    WonByII { inning: usize },
    /// Player II did not reach the target within this many innings.
    Undecided { depth: usize },
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::WonByII { inning } => write!(f, "WonByII({inning})"),
            Outcome::Undecided { depth } => write!(f, "Undecided({depth})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayTranscript<E> {
    pub game: GameKind,
    pub target: E,
    pub depth: usize,
    pub innings: Vec<Inning<E>>,
    pub outcome: Outcome,
}

impl<E> PlayTranscript<E> {
    pub fn won(&self) -> bool {
        matches!(self.outcome, Outcome::WonByII { .. })
    }
}

/// Sorted, duplicate-free, in range, and a singleton in `G1`.
pub fn check_selection(kind: GameKind, inning: usize, picked: &[usize], offered: usize) -> Result<Vec<usize>> {
    let illegal = |reason: String| Error::IllegalSelection { inning, reason };
    if kind == GameKind::G1 && picked.len() != 1 {
        return Err(illegal(format!("G1 takes exactly one item, got {}", picked.len())));
    }
    if let Some(&i) = picked.iter().find(|&&i| i >= offered) {
        return Err(illegal(format!("index {i} outside a cover of {offered} items")));
    }
    let mut sorted = picked.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != picked.len() {
        return Err(illegal("repeated index".into()));
    }
    Ok(sorted)
}

/// Plays up to `depth` innings, stopping as soon as the running join
/// reaches `p`.
pub fn play<L: Lattice>(
    lat: &L,
    kind: GameKind,
    player_one: &dyn Strategy<L::Elem>,
    player_two: &mut dyn Selector<L::Elem>,
    p: &L::Elem,
    depth: usize,
) -> Result<PlayTranscript<L::Elem>> {
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    let mut innings: Vec<Inning<L::Elem>> = Vec::new();
    let mut running = lat.bottom();
    for n in 0..depth {
        let offered = player_one.respond(&innings)?;
        let sup = lat.sup(&offered);
        if &sup != p {
            return Err(Error::StrategyNotACover {
                history: history_path(&innings),
                sup: lat.label(&sup),
            });
        }
        let picked = player_two.select(&innings, &offered)?;
        let picked = check_selection(kind, n, &picked, offered.len())?;
        for &i in &picked {
            running = lat.join(&running, &offered[i]);
        }
        innings.push(Inning {
            offered,
            picked,
            running_join: running.clone(),
        });
        if &running == p {
            return Ok(PlayTranscript {
                game: kind,
                target: p.clone(),
                depth,
                innings,
                outcome: Outcome::WonByII { inning: n },
            });
        }
    }
    Ok(PlayTranscript {
        game: kind,
        target: p.clone(),
        depth,
        innings,
        outcome: Outcome::Undecided { depth },
    })
}

/// Recomputes the outcome from the innings alone and checks it against
/// everything the transcript claims.
pub fn adjudicate<L: Lattice>(lat: &L, t: &PlayTranscript<L::Elem>, p: &L::Elem) -> Result<Outcome> {
    let corrupt = |m: String| Err(Error::CorruptTranscript(m));
    if &t.target != p {
        return corrupt(format!(
            "transcript target `{}` is not `{}`",
            lat.label(&t.target),
            lat.label(p)
        ));
    }
    if t.innings.len() > t.depth {
        return corrupt(format!("{} innings exceed depth {}", t.innings.len(), t.depth));
    }
    let mut running = lat.bottom();
    let mut outcome = Outcome::Undecided { depth: t.depth };
    for (n, inning) in t.innings.iter().enumerate() {
        if let Outcome::WonByII { inning: k } = outcome {
            return corrupt(format!("inning {n} recorded after the win at inning {k}"));
        }
        if lat.sup(&inning.offered) != *p {
            return corrupt(format!("inning {n} offers a non-cover"));
        }
        check_selection(t.game, n, &inning.picked, inning.offered.len())
            .map_err(|e| Error::CorruptTranscript(e.to_string()))?;
        for &i in &inning.picked {
            running = lat.join(&running, &inning.offered[i]);
        }
        if running != inning.running_join {
            return corrupt(format!(
                "inning {n} records running join `{}`, recomputed `{}`",
                lat.label(&inning.running_join),
                lat.label(&running)
            ));
        }
        if &running == p {
            outcome = Outcome::WonByII { inning: n };
        }
    }
    if outcome == (Outcome::Undecided { depth: t.depth }) && t.innings.len() != t.depth {
        return corrupt(format!(
            "play stopped after {} of {} innings without a win",
            t.innings.len(),
            t.depth
        ));
    }
    if outcome != t.outcome {
        return corrupt(format!("recorded outcome {}, recomputed {outcome}", t.outcome));
    }
    Ok(outcome)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameValue {
    CanForce,
    CannotForce,
}

/// Whether Player II can force the running join to `p` within `depth`
/// innings when Player I may play any cover of `pool` at any inning, by
/// backward induction over the full game tree.
pub fn game_value<L: Lattice>(
    lat: &L,
    kind: GameKind,
    p: &L::Elem,
    depth: usize,
    pool: &[Cover<L::Elem>],
) -> Result<GameValue> {
    for (what, value) in [("cover pool", pool.len()), ("depth", depth)] {
        if value > GAME_VALUE_BOUND {
            return Err(Error::SearchBound {
                what,
                value,
                bound: GAME_VALUE_BOUND,
            });
        }
    }
    if pool.is_empty() {
        return Err(Error::InvalidParameter("empty cover pool".into()));
    }
    if let Some(c) = pool.iter().find(|c| c.target() != p) {
        return Err(Error::TargetMismatch {
            expected: lat.label(p),
            found: lat.label(c.target()),
        });
    }
    // Joins Player II can add with one move on each pool cover.
    let moves: Vec<Vec<L::Elem>> = pool
        .iter()
        .map(|c| match kind {
            GameKind::G1 => Ok(c.items().to_vec()),
            GameKind::Gfin => crate::covers::subset_joins(lat, c.items()),
        })
        .collect::<Result<_>>()?;

    fn wins<L: Lattice>(
        lat: &L,
        p: &L::Elem,
        moves: &[Vec<L::Elem>],
        acc: L::Elem,
        left: usize,
        memo: &mut HashMap<(L::Elem, usize), bool>,
    ) -> bool {
        if &acc == p {
            return true;
        }
        if left == 0 {
            return false;
        }
        if let Some(&v) = memo.get(&(acc.clone(), left)) {
            return v;
        }
        let v = moves.iter().all(|options| {
            options
                .iter()
                .any(|o| wins(lat, p, moves, lat.join(&acc, o), left - 1, memo))
        });
        memo.insert((acc, left), v);
        v
    }
    let mut memo = HashMap::new();
    Ok(if wins(lat, p, &moves, lat.bottom(), depth, &mut memo) {
        GameValue::CanForce
    } else {
        GameValue::CannotForce
    })
}
