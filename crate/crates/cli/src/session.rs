// SPDX-License-Identifier: Apache-2.0

//! Interactive game sessions, independent of the transport.
//!
//! When the human plays Player I the engine answers each cover by running
//! a counter-play against "this cover forever" inside the principal
//! filter above the running join, and plays that construction's first
//! pick. When the human plays Player II the engine's Player I follows a
//! strategy file or a seeded random strategy.

// Rejections are returned once per request; their size does not matter.
#![allow(clippy::result_large_err)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use latgame_core::counterplay::{menger_counterplay, rothberger_counterplay, GateMode, RothbergerConfig};
use latgame_core::covers::is_cover;
use latgame_core::format::{hasse_doc, inning_doc, HasseDoc, InningDoc, LatticeRef, LoadedStrategy, StrategyFile};
use latgame_core::game::{check_selection, normalize_to_nice, ConstantStrategy, GameKind, Inning, Outcome, Strategy};
use latgame_core::lattice::{catalog, generate};
use latgame_core::sample::random_strategy;
use latgame_core::{Elem, Error, FiniteLattice, Lattice};
use serde::{Deserialize, Serialize};

/// Branching of the nice trees the engine builds each inning.
const ENGINE_BRANCHING: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    I,
    II,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CreateSession {
    pub lattice: LatticeRef,
    /// `"G1"` or `"Gfin"`.
    pub game: String,
    pub human_role: Role,
    pub depth: usize,
    #[serde(default = "default_strict")]
    pub strict: bool,
    /// Player I for the engine when the human plays Player II.
    #[serde(default)]
    pub strategy: Option<StrategyFile>,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_strict() -> bool {
    true
}

/// An offered item, by index into the cover or by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ItemRef {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Cover,
    Pick,
    FiniteSet,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Move {
    #[serde(rename = "type")]
    pub kind: MoveKind,
    pub items: Vec<ItemRef>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct MoveRequest {
    #[serde(rename = "move")]
    pub mv: Move,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    AwaitingCover,
    AwaitingPick,
    Finished,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EngineMove {
    pub inning: usize,
    #[serde(rename = "type")]
    pub kind: MoveKind,
    /// Indices into the offered cover, empty for a cover move.
    pub indices: Vec<usize>,
    pub items: Vec<String>,
    /// The construction behind a pick: `rothberger`, `menger`, or
    /// `first_raising` when neither applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<&'static str>,
    /// The construction's own account of the pick.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionState {
    pub session_id: String,
    pub lattice: String,
    pub game: String,
    pub human_role: Role,
    pub depth: usize,
    pub strict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub inning: usize,
    pub history: Vec<InningDoc>,
    pub running_join: String,
    /// The cover waiting for the human's pick.
    pub offered: Option<Vec<String>>,
    pub engine_move: Option<EngineMove>,
    /// Every engine move so far, in order.
    pub engine_moves: Vec<EngineMove>,
    pub status: Status,
    pub outcome: Option<String>,
}

/// A refused request. Nothing changes state when one is returned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub error: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sup: Option<String>,
    #[serde(skip)]
    pub not_found: bool,
}

impl Rejection {
    fn new(error: &str, message: impl Into<String>) -> Self {
        Rejection {
            error: error.into(),
            message: message.into(),
            witness: None,
            sup: None,
            not_found: false,
        }
    }
}

impl From<Error> for Rejection {
    fn from(e: Error) -> Self {
        Rejection::new(e.name(), e.to_string())
    }
}

pub type Reply<T> = std::result::Result<T, Rejection>;

enum PlayerOne {
    Human,
    Engine(LoadedStrategy),
}

pub struct Session {
    id: String,
    lat: FiniteLattice,
    kind: GameKind,
    role: Role,
    depth: usize,
    strict: bool,
    seed: Option<u64>,
    player_one: PlayerOne,
    history: Vec<Inning<Elem>>,
    offered: Option<Vec<Elem>>,
    engine_moves: Vec<EngineMove>,
    outcome: Option<Outcome>,
}

impl Session {
    pub fn create(id: String, req: &CreateSession) -> Reply<Session> {
        let lat = req.lattice.load()?.finite()?;
        let kind: GameKind = req.game.parse()?;
        if req.depth == 0 {
            return Err(Error::InvalidParameter("depth must be at least 1".into()).into());
        }
        if req.strict {
            let c = lat.classification();
            if !c.enough_primes {
                let mut r = Rejection::from(Error::NotEnoughPrimes(format!("{} is not pre-Pawlikowski", lat.name())));
                r.witness = c
                    .enough_primes_witness
                    .map(|(a, b)| (lat.label_of(a).to_string(), lat.label_of(b).to_string()));
                return Err(r);
            }
        }
        let (player_one, seed) = match req.human_role {
            Role::I => (PlayerOne::Human, None),
            Role::II => {
                let s = match &req.strategy {
                    Some(f) => f.load(&lat, req.seed)?,
                    None => LoadedStrategy::SeededRandom(random_strategy(&lat, req.seed.unwrap_or(0), 3, 3)),
                };
                let seed = s.seed();
                (PlayerOne::Engine(s), seed)
            }
        };
        let mut s = Session {
            id,
            lat,
            kind,
            role: req.human_role,
            depth: req.depth,
            strict: req.strict,
            seed,
            player_one,
            history: Vec::new(),
            offered: None,
            engine_moves: Vec::new(),
            outcome: None,
        };
        s.engine_offer()?;
        Ok(s)
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lat
    }

    fn running(&self) -> Elem {
        self.history.last().map_or(self.lat.bottom_elem(), |h| h.running_join)
    }

    fn status(&self) -> Status {
        if self.outcome.is_some() {
            Status::Finished
        } else if self.offered.is_some() {
            Status::AwaitingPick
        } else {
            Status::AwaitingCover
        }
    }

    pub fn state(&self) -> SessionState {
        let l = &self.lat;
        SessionState {
            session_id: self.id.clone(),
            lattice: l.name().to_string(),
            game: self.kind.to_string(),
            human_role: self.role,
            depth: self.depth,
            strict: self.strict,
            seed: self.seed,
            inning: self.history.len(),
            history: self
                .history
                .iter()
                .enumerate()
                .map(|(n, h)| inning_doc(l, n, h))
                .collect(),
            running_join: l.label_of(self.running()).to_string(),
            offered: self.offered.as_ref().map(|o| l.labels(o)),
            engine_move: self.engine_moves.last().cloned(),
            engine_moves: self.engine_moves.clone(),
            status: self.status(),
            outcome: self.outcome.map(|o| o.to_string()),
        }
    }

    /// Applies a human move. On rejection the session is unchanged.
    pub fn submit(&mut self, mv: &Move) -> Reply<SessionState> {
        if self.outcome.is_some() {
            return Err(Rejection::new("SessionFinished", "the game is over"));
        }
        match (self.role, mv.kind) {
            (Role::I, MoveKind::Cover) => self.human_cover(&mv.items)?,
            (Role::II, MoveKind::Pick | MoveKind::FiniteSet) => self.human_pick(mv.kind, &mv.items)?,
            (role, kind) => {
                return Err(Rejection::new(
                    "IllegalMove",
                    format!("player {role:?} cannot submit a {kind:?} move"),
                ))
            }
        }
        Ok(self.state())
    }

    fn human_cover(&mut self, items: &[ItemRef]) -> Reply<()> {
        let l = &self.lat;
        let cover = items
            .iter()
            .enumerate()
            .map(|(i, it)| match it {
                ItemRef::Label(s) => l
                    .elem(s)
                    .map_err(|_| Rejection::new("UnknownLabel", format!("items[{i}]: unknown label `{s}`"))),
                ItemRef::Index(k) if *k < l.len() => Ok(l.elem_at(*k)),
                ItemRef::Index(k) => Err(Rejection::new("UnknownLabel", format!("items[{i}]: no element {k}"))),
            })
            .collect::<Reply<Vec<Elem>>>()?;
        let top = l.top_elem();
        if !is_cover(l, &cover, &top) {
            let sup = l.label_of(l.sup_family(&cover)).to_string();
            let mut r = Rejection::from(Error::NotACover {
                sup: sup.clone(),
                target: l.label_of(top).to_string(),
            });
            r.sup = Some(sup);
            return Err(r);
        }
        let (picked, construction, detail) = self.engine_pick(&cover)?;
        let items = picked.iter().map(|&i| l.label_of(cover[i]).to_string()).collect();
        self.engine_moves.push(EngineMove {
            inning: self.history.len(),
            kind: if self.kind == GameKind::G1 {
                MoveKind::Pick
            } else {
                MoveKind::FiniteSet
            },
            indices: picked.clone(),
            items,
            construction: Some(construction),
            detail,
        });
        self.record(cover, picked);
        Ok(())
    }

    fn human_pick(&mut self, kind: MoveKind, items: &[ItemRef]) -> Reply<()> {
        let n = self.history.len();
        let offered = self
            .offered
            .clone()
            .expect("Player II moves only against an offered cover");
        let illegal = |reason: String| Rejection::from(Error::IllegalSelection { inning: n, reason });
        if self.kind == GameKind::G1 && kind == MoveKind::FiniteSet {
            return Err(illegal("G1 takes a single pick".into()));
        }
        let indices = items
            .iter()
            .map(|it| match it {
                ItemRef::Index(k) => Ok(*k),
                ItemRef::Label(s) => offered
                    .iter()
                    .position(|&e| self.lat.label_of(e) == s)
                    .ok_or_else(|| illegal(format!("`{s}` is not in the offered cover"))),
            })
            .collect::<Reply<Vec<usize>>>()?;
        let picked = check_selection(self.kind, n, &indices, offered.len())?;
        self.offered = None;
        self.record(offered, picked);
        if self.outcome.is_none() {
            if let Err(e) = self.engine_offer() {
                // Keep the session consistent: the strategy ran out.
                self.outcome = Some(Outcome::Undecided {
                    depth: self.history.len(),
                });
                return Err(e);
            }
        }
        Ok(())
    }

    fn record(&mut self, offered: Vec<Elem>, picked: Vec<usize>) {
        let running = picked
            .iter()
            .fold(self.running(), |acc, &i| self.lat.join_of(acc, offered[i]));
        self.history.push(Inning {
            offered,
            picked,
            running_join: running,
        });
        let n = self.history.len();
        if running == self.lat.top_elem() {
            self.outcome = Some(Outcome::WonByII { inning: n - 1 });
        } else if n == self.depth {
            self.outcome = Some(Outcome::Undecided { depth: self.depth });
        }
    }

    /// The engine's Player I cover, when it is the engine's turn to offer.
    fn engine_offer(&mut self) -> Reply<()> {
        let PlayerOne::Engine(strategy) = &self.player_one else {
            return Ok(());
        };
        let cover = strategy.respond(&self.history)?;
        let l = &self.lat;
        if !is_cover(l, &cover, &l.top_elem()) {
            return Err(Error::StrategyNotACover {
                history: latgame_core::game::history_path(&self.history),
                sup: l.label_of(l.sup_family(&cover)).to_string(),
            }
            .into());
        }
        self.engine_moves.push(EngineMove {
            inning: self.history.len(),
            kind: MoveKind::Cover,
            indices: Vec::new(),
            items: l.labels(&cover),
            construction: None,
            detail: None,
        });
        self.offered = Some(cover);
        Ok(())
    }

    /// Player II's answer to `cover`: the first pick of a counter-play
    /// against the constant extension of `cover`, in the filter above the
    /// running join.
    fn engine_pick(&self, cover: &[Elem]) -> Reply<(Vec<usize>, &'static str, Option<serde_json::Value>)> {
        let l = &self.lat;
        let r = self.running();
        let remaining = self.depth - self.history.len();
        let filter = l.principal_filter(r)?;
        let mapped = cover
            .iter()
            .map(|&c| filter.elem(l.label_of(l.join_of(c, r))))
            .collect::<latgame_core::Result<Vec<Elem>>>()?;
        let constant = ConstantStrategy { cover: mapped };

        if self.kind == GameKind::G1 {
            if let Ok(report) = rothberger_counterplay(&filter, &constant, RothbergerConfig::new(remaining)) {
                if let Some(d) = report.decoded.first() {
                    let detail = serde_json::json!({
                        "filter": filter.name(),
                        "wedge_value": filter.label_of(d.wedge_value),
                        "history": latgame_core::format::path_string(&d.history),
                        "value": filter.label_of(d.value),
                    });
                    return Ok((vec![d.pick], "rothberger", Some(detail)));
                }
            }
        } else if let Some(found) = self.menger_pick(&filter, &constant, remaining) {
            return Ok(found);
        }
        let i = cover.iter().position(|&c| !l.le(c, r)).unwrap_or(0);
        Ok((vec![i], "first_raising", None))
    }

    fn menger_pick(
        &self,
        filter: &FiniteLattice,
        constant: &ConstantStrategy<Elem>,
        remaining: usize,
    ) -> Option<(Vec<usize>, &'static str, Option<serde_json::Value>)> {
        let top = filter.top_elem();
        let tree = normalize_to_nice(filter, constant, &top, remaining, ENGINE_BRANCHING).ok()?;
        let mode = if self.strict {
            GateMode::Strict
        } else {
            GateMode::Exploratory
        };
        let report = menger_counterplay(filter, &tree, mode).ok()?;
        let first = report.transcript.innings.first()?;
        let root = tree.node(&[]).ok()?;
        let mut raw: Vec<usize> = first
            .picked
            .iter()
            .flat_map(|&i| root.provenance[i].iter().copied())
            .collect();
        raw.sort_unstable();
        raw.dedup();
        if raw.is_empty() {
            return None;
        }
        let level = report.levels.first()?;
        let detail = serde_json::json!({
            "filter": filter.name(),
            "tail_family": level
                .tail_family
                .elements
                .iter()
                .map(|(v, _)| filter.label_of(*v).to_string())
                .collect::<Vec<_>>(),
            "selected": level.selected,
        });
        Some((raw, "menger", Some(detail)))
    }
}

/// All live sessions. Each session sits behind its own lock, so requests
/// to one session are serialized while distinct sessions proceed
/// independently.
#[derive(Default)]
pub struct SessionManager {
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
    next: Mutex<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub size: usize,
    pub enough_primes: bool,
    pub is_pawlikowski: bool,
}

impl SessionManager {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn catalog(&self) -> Vec<CatalogEntry> {
        catalog()
            .iter()
            .filter_map(|k| generate(k).ok())
            .map(|l| {
                let c = l.classification();
                CatalogEntry {
                    name: l.name().to_string(),
                    size: l.len(),
                    enough_primes: c.enough_primes,
                    is_pawlikowski: c.is_pawlikowski,
                }
            })
            .collect()
    }

    pub fn create(&self, req: &CreateSession) -> Reply<SessionState> {
        // Ids are handed out in creation order, so a replayed request
        // sequence yields the same ids.
        let mut next = self.next.lock().expect("id counter");
        let id = format!("s{}", *next + 1);
        let session = Session::create(id.clone(), req)?;
        *next += 1;
        let state = session.state();
        self.sessions
            .lock()
            .expect("session table")
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(state)
    }

    fn get(&self, id: &str) -> Reply<Arc<Mutex<Session>>> {
        self.sessions
            .lock()
            .expect("session table")
            .get(id)
            .cloned()
            .ok_or_else(|| Rejection {
                not_found: true,
                ..Rejection::new("UnknownSession", format!("no session `{id}`"))
            })
    }

    pub fn state(&self, id: &str) -> Reply<SessionState> {
        Ok(self.get(id)?.lock().expect("session").state())
    }

    pub fn submit(&self, id: &str, mv: &Move) -> Reply<SessionState> {
        self.get(id)?.lock().expect("session").submit(mv)
    }

    pub fn hasse(&self, id: &str) -> Reply<HasseDoc> {
        Ok(hasse_doc(self.get(id)?.lock().expect("session").lattice()))
    }
}

/// Hasse data for a lattice named in the catalog syntax.
pub fn lattice_hasse(name: &str) -> Reply<HasseDoc> {
    let lat = LatticeRef::Name(name.to_string()).load()?.finite()?;
    Ok(hasse_doc(&lat))
}
