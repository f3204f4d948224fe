// SPDX-License-Identifier: Apache-2.0

//! Player II's winning play against a nice strategy in the Menger game.

use super::tail::{tail_family, union_family, CutBound, CutVector, TailFamily};
use crate::covers::{sfin_select, Cover};
use crate::error::{Error, Result};
use crate::game::{GameKind, Inning, NiceStrategyTree, Outcome, PlayTranscript};
use crate::lattice::Hypotheses;

/// Whether the constructions refuse lattices failing their hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GateMode {
    #[default]
    Strict,
    /// Run anyway; a failing tail family then surfaces as `SelectorFailed`.
    Exploratory,
}

/// One level `V_{n+1}` of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport<E> {
    /// The tree level `n` whose answers form `B_{n+1}`.
    pub level: usize,
    pub paths: Vec<Vec<usize>>,
    pub cut_bound: CutBound,
    pub tail_family: TailFamily<E>,
    /// Indices into `tail_family.elements` chosen by the selector.
    pub selected: Vec<usize>,
    /// Pointwise maximum of the cuts of the selected infima.
    pub combined_cut: CutVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MengerReport<E> {
    pub levels: Vec<LevelReport<E>>,
    /// Tree path of the node answered at each inning.
    pub nodes: Vec<Vec<usize>>,
    pub transcript: PlayTranscript<E>,
}

pub fn menger_counterplay<L: Hypotheses>(
    lat: &L,
    tree: &NiceStrategyTree<L::Elem>,
    mode: GateMode,
) -> Result<MengerReport<L::Elem>> {
    if mode == GateMode::Strict {
        lat.require_pre_pawlikowski()?;
    }
    let p = tree.target().clone();
    let mut levels = Vec::new();
    let mut covers = Vec::new();
    for n in 0..tree.depth() {
        let fam = union_family(tree, n)?;
        let bound = CutBound::exact(&fam);
        let tf = tail_family(lat, &fam, bound)?;
        let cover = Cover::new(lat, tf.values(), p.clone())
            .map_err(|e| Error::SelectorFailed(format!("tail family of level {n} is not a cover: {e}")))?;
        covers.push(cover);
        levels.push(LevelReport {
            level: n,
            paths: fam.paths,
            cut_bound: bound,
            tail_family: tf,
            selected: Vec::new(),
            combined_cut: CutVector::zero(0),
        });
    }
    let selection = sfin_select(lat, &covers, &p)?
        .ok_or_else(|| Error::SelectorFailed("no finite selection from the tail families".into()))?;
    for (level, picked) in levels.iter_mut().zip(selection) {
        let width = level.paths.len();
        level.combined_cut = picked.iter().fold(CutVector::zero(width), |acc, &i| {
            acc.max_with(&level.tail_family.elements[i].1)
        });
        level.selected = picked;
    }

    let mut innings: Vec<Inning<L::Elem>> = Vec::new();
    let mut nodes = Vec::new();
    let mut path = Vec::new();
    let mut running = lat.bottom();
    let mut outcome = Outcome::Undecided { depth: tree.depth() };
    for (n, level) in levels.iter().enumerate() {
        let cover = tree.cover(&path)?;
        let k = level
            .paths
            .iter()
            .position(|s| *s == path)
            .ok_or_else(|| Error::SelectorFailed(format!("node {path:?} missing from level {n}")))?;
        let pick = level.combined_cut.cuts[k].min(cover.len() - 1);
        running = lat.join(&running, &cover.items()[pick]);
        innings.push(Inning {
            offered: cover.items().to_vec(),
            picked: vec![pick],
            running_join: running.clone(),
        });
        nodes.push(path.clone());
        if running == p {
            outcome = Outcome::WonByII { inning: n };
            break;
        }
        path.push(pick);
    }
    Ok(MengerReport {
        levels,
        nodes,
        transcript: PlayTranscript {
            game: GameKind::Gfin,
            target: p,
            depth: tree.depth(),
            innings,
            outcome,
        },
    })
}
