// SPDX-License-Identifier: Apache-2.0

//! Lifting a strategy to sequences over the lattice and the severe defeat
//! it yields.
//!
//! A base cover `A` becomes `{δ_n(a) : a ∈ A, n < w}`, listed `a`-major so
//! raw lifted index `i` is `δ_{i mod w}(a_{i / w})`. A lifted selection
//! projects to the base items it mentions.

use super::menger::{menger_counterplay, GateMode, MengerReport};
use crate::error::{Error, Result};
use crate::game::{
    branch_of, normalize_to_nice, GameKind, Inning, NiceStrategyTree, Outcome, PlayTranscript, Strategy,
};
use crate::lattice::{classify, AcSeq, AlmostConstantLattice, Elem, FiniteLattice, Hypotheses, Lattice};

/// Base item indices mentioned by raw lifted indices.
pub fn project_selection(raw_indices: &[usize], width: usize) -> Vec<usize> {
    let mut j: Vec<usize> = raw_indices.iter().map(|i| i / width).collect();
    j.sort_unstable();
    j.dedup();
    j
}

/// Base elements of lifted elements of the form `δ_n(a)`.
pub fn project_elements(ac: &AlmostConstantLattice, lifted: &[AcSeq]) -> Result<Vec<Elem>> {
    let bottom = ac.base().bottom_elem();
    let mut out = Vec::new();
    for x in lifted {
        let a = match (x.tail() == bottom, x.overrides().len()) {
            (true, 0) => bottom,
            (true, 1) => *x.overrides().values().next().expect("one override"),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "`{}` is not a single-coordinate sequence",
                    ac.label(x)
                )))
            }
        };
        if !out.contains(&a) {
            out.push(a);
        }
    }
    Ok(out)
}

/// The lifted answer to a lifted play: follow the base tree along the
/// projected selections and lift its cover.
struct LiftedRaw<'a> {
    base: &'a NiceStrategyTree<Elem>,
    ac: &'a AlmostConstantLattice,
    width: usize,
}

impl LiftedRaw<'_> {
    fn lift(&self, items: &[Elem]) -> Result<Vec<AcSeq>> {
        let mut out = Vec::with_capacity(items.len() * self.width);
        for &a in items {
            for n in 0..self.width {
                out.push(self.ac.delta(n, a)?);
            }
        }
        Ok(out)
    }
}

impl Strategy<AcSeq> for LiftedRaw<'_> {
    fn respond(&self, history: &[Inning<AcSeq>]) -> Result<Vec<AcSeq>> {
        let path: Vec<usize> = history
            .iter()
            .map(|h| branch_of(&project_selection(&h.picked, self.width)))
            .collect();
        self.lift(self.base.cover(&path)?.items())
    }
}

#[derive(Debug, Clone)]
pub struct LiftedStrategy {
    pub ac: AlmostConstantLattice,
    pub width: usize,
    pub base: NiceStrategyTree<Elem>,
    /// Nice form of the lifted strategy, with target the top on the first
    /// `width` coordinates.
    pub tree: NiceStrategyTree<AcSeq>,
}

impl LiftedStrategy {
    /// Base item indices behind item `m` of the lifted node at `path`.
    pub fn project_pick(&self, path: &[usize], m: usize) -> Result<Vec<usize>> {
        let node = self.tree.node(path)?;
        let raw = node
            .provenance
            .get(m)
            .ok_or_else(|| Error::InvalidParameter(format!("item {m} outside lifted node")))?;
        Ok(project_selection(raw, self.width))
    }

    /// The base node a lifted path corresponds to.
    pub fn base_path(&self, path: &[usize]) -> Result<Vec<usize>> {
        (0..path.len())
            .map(|i| Ok(branch_of(&self.project_pick(&path[..i], path[i])?)))
            .collect()
    }
}

pub fn lift_strategy(lat: &FiniteLattice, sigma: &NiceStrategyTree<Elem>, width: usize) -> Result<LiftedStrategy> {
    if width == 0 {
        return Err(Error::InvalidParameter("width must be at least 1".into()));
    }
    let ac = AlmostConstantLattice::with_width(lat.clone(), width);
    let raw = LiftedRaw {
        base: sigma,
        ac: &ac,
        width,
    };
    let target = if sigma.target() == &lat.top_elem() {
        ac.truncated_top(width)
    } else {
        ac.sup(&raw.lift(&[*sigma.target()])?)
    };
    let tree = normalize_to_nice(&ac, &raw, &target, sigma.depth(), sigma.branching())?;
    Ok(LiftedStrategy {
        ac,
        width,
        base: sigma.clone(),
        tree,
    })
}

/// A base inning of the severe-defeat play with its lifted origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SevereInning {
    pub round: usize,
    pub base_path: Vec<usize>,
    pub inning: Inning<Elem>,
    /// `(base item, coordinate)` of every raw lifted item behind the pick.
    pub lifted: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SevereReport {
    pub depth: usize,
    pub width: usize,
    pub recurrence: usize,
    pub innings: Vec<SevereInning>,
    /// For every prime `q`, the innings `n` with `sup F_n ≰ q`.
    pub counts: Vec<(Elem, usize)>,
    /// Primes below the recurrence target.
    pub missing: Vec<(Elem, usize)>,
    /// Every lifted pick `δ_n(a)` was checked to project to `a ∈ F`.
    pub projection_ok: bool,
    /// The lifted Menger play of each round.
    pub rounds: Vec<MengerReport<AcSeq>>,
}

impl SevereReport {
    pub fn satisfied(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Severe defeat of `sigma` over `depth` innings, reported without
/// failing on a missed recurrence.
///
/// The play proceeds in rounds. Each round lifts the part of `sigma` still
/// ahead with `width` fresh coordinates and plays the Menger counter-play
/// against it; when that round is won the next one restarts at the node
/// reached. Every won round beats each prime at least once.
pub fn severe_defeat_run(
    lat: &FiniteLattice,
    sigma: &NiceStrategyTree<Elem>,
    depth: usize,
    width: usize,
    recurrence: usize,
) -> Result<SevereReport> {
    lat.require_pre_pawlikowski()?;
    if sigma.target() != &lat.top_elem() {
        return Err(Error::TargetNotTop);
    }
    if width < recurrence {
        return Err(Error::InvalidParameter(format!(
            "width {width} below recurrence target {recurrence}"
        )));
    }
    if depth > sigma.depth() {
        return Err(Error::DepthExceeded {
            level: depth,
            depth: sigma.depth(),
        });
    }
    let mut innings: Vec<SevereInning> = Vec::new();
    let mut rounds = Vec::new();
    let mut base_path: Vec<usize> = Vec::new();
    let mut running = lat.bottom_elem();
    let mut projection_ok = true;
    while innings.len() < depth {
        let left = depth - innings.len();
        let sub = sigma.subtree(&base_path, left)?;
        let lifted = lift_strategy(lat, &sub, width)?;
        let round = menger_counterplay(&lifted.ac, &lifted.tree, GateMode::Strict)?;
        for (lpath, li) in round.nodes.iter().zip(&round.transcript.innings) {
            let m = li.picked[0];
            let node = lifted.tree.node(lpath)?;
            let local = lifted.base_path(lpath)?;
            let offered = sub.cover(&local)?.items().to_vec();
            let raw = &node.provenance[m];
            let picked = project_selection(raw, width);
            for &i in raw {
                let (j, n) = (i / width, i % width);
                projection_ok &= node.raw[i] == lifted.ac.delta(n, offered[j])? && picked.contains(&j);
            }
            let sup = lat.sup_family(&picked.iter().map(|&j| offered[j]).collect::<Vec<_>>());
            running = lat.join_of(running, sup);
            let mut full = base_path.clone();
            full.extend(&local);
            innings.push(SevereInning {
                round: rounds.len(),
                base_path: full,
                inning: Inning {
                    offered,
                    picked,
                    running_join: running,
                },
                lifted: raw.iter().map(|&i| (i / width, i % width)).collect(),
            });
        }
        let consumed = round.transcript.innings.len();
        let last = innings.last().expect("a round plays at least one inning");
        base_path = last.base_path.clone();
        base_path.push(branch_of(&last.inning.picked));
        rounds.push(round);
        if consumed == 0 {
            break;
        }
    }
    let mut counts = Vec::new();
    let mut missing = Vec::new();
    for q in classify::primes(lat) {
        let c = innings
            .iter()
            .filter(|s| {
                let sup = lat.sup_family(&s.inning.picked.iter().map(|&j| s.inning.offered[j]).collect::<Vec<_>>());
                !lat.le(sup, q)
            })
            .count();
        counts.push((q, c));
        if c < recurrence {
            missing.push((q, c));
        }
    }
    Ok(SevereReport {
        depth,
        width,
        recurrence,
        innings,
        counts,
        missing,
        projection_ok,
        rounds,
    })
}

/// [`severe_defeat_run`], failing with `RecurrenceMissed` on the first
/// prime below target. The transcript is the play up to its first win.
pub fn severe_defeat_play(
    lat: &FiniteLattice,
    sigma: &NiceStrategyTree<Elem>,
    depth: usize,
    width: usize,
    recurrence: usize,
) -> Result<(PlayTranscript<Elem>, SevereReport)> {
    let report = severe_defeat_run(lat, sigma, depth, width, recurrence)?;
    if let Some(&(q, count)) = report.missing.first() {
        return Err(Error::RecurrenceMissed {
            prime: lat.label_of(q).to_string(),
            count,
            required: recurrence,
        });
    }
    Ok((severe_transcript(lat, &report), report))
}

/// The base play of a severe-defeat report, stopped at its first win.
pub fn severe_transcript(lat: &FiniteLattice, report: &SevereReport) -> PlayTranscript<Elem> {
    let top = lat.top_elem();
    let mut innings = Vec::new();
    let mut outcome = Outcome::Undecided { depth: report.depth };
    for (n, s) in report.innings.iter().enumerate() {
        innings.push(s.inning.clone());
        if s.inning.running_join == top {
            outcome = Outcome::WonByII { inning: n };
            break;
        }
    }
    PlayTranscript {
        game: GameKind::Gfin,
        target: top,
        depth: report.depth,
        innings,
        outcome,
    }
}
