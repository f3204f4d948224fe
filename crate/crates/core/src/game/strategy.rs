// SPDX-License-Identifier: Apache-2.0

//! Strategy and selector interfaces plus the stock implementations.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// One completed inning: the cover offered, the indices Player II picked,
/// and the join of all picks so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inning<E> {
    pub offered: Vec<E>,
    pub picked: Vec<usize>,
    pub running_join: E,
}

/// Player I: maps the play so far to the next cover.
pub trait Strategy<E> {
    fn respond(&self, history: &[Inning<E>]) -> Result<Vec<E>>;
}

/// Player II: picks indices into the offered cover.
pub trait Selector<E> {
    fn select(&mut self, history: &[Inning<E>], offered: &[E]) -> Result<Vec<usize>>;
}

/// The branch index a set selection follows in a tree strategy: the
/// largest picked index, or 0 when nothing was picked. For increasing
/// covers this is the item dominating the selection.
pub fn branch_of(picked: &[usize]) -> usize {
    picked.iter().copied().max().unwrap_or(0)
}

/// Renders a history as a dot-separated index path for diagnostics.
pub fn history_path<E>(history: &[Inning<E>]) -> String {
    if history.is_empty() {
        return "<root>".into();
    }
    history
        .iter()
        .map(|h| match h.picked.as_slice() {
            [i] => i.to_string(),
            many => format!(
                "{{{}}}",
                many.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
            ),
        })
        .collect::<Vec<_>>()
        .join(".")
}

#[derive(Debug, Clone)]
pub struct ConstantStrategy<E> {
    pub cover: Vec<E>,
}

impl<E: Clone> Strategy<E> for ConstantStrategy<E> {
    fn respond(&self, _history: &[Inning<E>]) -> Result<Vec<E>> {
        Ok(self.cover.clone())
    }
}

pub struct FnStrategy<F>(pub F);

impl<E, F: Fn(&[Inning<E>]) -> Result<Vec<E>>> Strategy<E> for FnStrategy<F> {
    fn respond(&self, history: &[Inning<E>]) -> Result<Vec<E>> {
        (self.0)(history)
    }
}

/// Explicit answers keyed by branch path (see [`branch_of`]).
#[derive(Debug, Clone)]
pub struct TreeStrategy<E> {
    pub nodes: BTreeMap<Vec<usize>, Vec<E>>,
}

impl<E: Clone> Strategy<E> for TreeStrategy<E> {
    fn respond(&self, history: &[Inning<E>]) -> Result<Vec<E>> {
        let path: Vec<usize> = history.iter().map(|h| branch_of(&h.picked)).collect();
        self.nodes.get(&path).cloned().ok_or_else(|| Error::StrategyPartial {
            history: history_path(history),
            reason: "no node for this path".into(),
        })
    }
}

/// Draws each answer from `pool`, deterministically in the seed and the
/// branch path.
#[derive(Debug, Clone)]
pub struct SeededRandomStrategy<E> {
    pub seed: u64,
    pub pool: Vec<Vec<E>>,
}

impl<E: Clone> Strategy<E> for SeededRandomStrategy<E> {
    fn respond(&self, history: &[Inning<E>]) -> Result<Vec<E>> {
        if self.pool.is_empty() {
            return Err(Error::StrategyPartial {
                history: history_path(history),
                reason: "empty cover pool".into(),
            });
        }
        // FNV-1a over the path keeps the draw independent of the platform.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ self.seed;
        for inning in history {
            h ^= branch_of(&inning.picked) as u64 + 1;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(h);
        Ok(self.pool[rng.random_range(0..self.pool.len())].clone())
    }
}

pub struct FnSelector<F>(pub F);

impl<E, F: FnMut(&[Inning<E>], &[E]) -> Result<Vec<usize>>> Selector<E> for FnSelector<F> {
    fn select(&mut self, history: &[Inning<E>], offered: &[E]) -> Result<Vec<usize>> {
        (self.0)(history, offered)
    }
}

/// Replays fixed selections, one per inning.
#[derive(Debug, Clone)]
pub struct ScriptedSelector {
    pub script: Vec<Vec<usize>>,
}

impl<E> Selector<E> for ScriptedSelector {
    fn select(&mut self, history: &[Inning<E>], _offered: &[E]) -> Result<Vec<usize>> {
        self.script
            .get(history.len())
            .cloned()
            .ok_or_else(|| Error::IllegalSelection {
                inning: history.len(),
                reason: "script exhausted".into(),
            })
    }
}
