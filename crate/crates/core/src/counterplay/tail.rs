// SPDX-License-Identifier: Apache-2.0

//! Tail families of the level unions of a nice tree.
//!
//! A cofinite subset of a union of increasing branches is recorded by its
//! cut vector: the first index kept on each branch. Its infimum is the meet,
//! over branches, of the item at the cut.

use std::collections::HashMap;

use crate::covers::IncreasingCover;
use crate::error::{Error, Result};
use crate::game::NiceStrategyTree;
use crate::lattice::Lattice;

/// Largest number of branches a tail family is computed over.
pub const BRANCH_BOUND: usize = 4096;

/// All node covers at one level of a tree, in lexicographic path order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchFamily<E> {
    pub level: usize,
    pub paths: Vec<Vec<usize>>,
    pub branches: Vec<IncreasingCover<E>>,
}

impl<E: Clone + Eq> BranchFamily<E> {
    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    /// Position of the branch at `path`, if present.
    pub fn position(&self, path: &[usize]) -> Option<usize> {
        self.paths.iter().position(|s| s == path)
    }
}

/// Per-branch start indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutVector {
    pub cuts: Vec<usize>,
}

impl CutVector {
    pub fn zero(len: usize) -> Self {
        CutVector { cuts: vec![0; len] }
    }

    /// Branches cut above their first item.
    pub fn support(&self) -> Vec<usize> {
        (0..self.cuts.len()).filter(|&k| self.cuts[k] > 0).collect()
    }

    /// Pointwise maximum: the cut of the intersection of the encoded sets.
    pub fn max_with(&self, other: &CutVector) -> CutVector {
        CutVector {
            cuts: self.cuts.iter().zip(&other.cuts).map(|(a, b)| *a.max(b)).collect(),
        }
    }
}

/// Limits on the enumerated cut vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutBound {
    /// Largest cut index on any branch.
    pub max_index: usize,
    /// Largest number of branches with a nonzero cut.
    pub max_support: usize,
}

impl CutBound {
    /// Exact for a truncated family: every cut up to the stabilized tail
    /// on every branch.
    pub fn exact<E: Clone + Eq>(fam: &BranchFamily<E>) -> Self {
        CutBound {
            max_index: fam.branches.iter().map(|b| b.len() - 1).max().unwrap_or(0),
            max_support: fam.len(),
        }
    }
}

/// Distinct infima with the lexicographically first cut vector producing
/// each, ordered by that cut vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailFamily<E> {
    pub elements: Vec<(E, CutVector)>,
}

impl<E: Clone> TailFamily<E> {
    pub fn values(&self) -> Vec<E> {
        self.elements.iter().map(|(e, _)| e.clone()).collect()
    }
}

/// The union of all answers at level `n`.
pub fn union_family<E: Clone + Eq + std::fmt::Debug>(tree: &NiceStrategyTree<E>, n: usize) -> Result<BranchFamily<E>> {
    if n >= tree.depth() {
        return Err(Error::DepthExceeded {
            level: n,
            depth: tree.depth(),
        });
    }
    let (paths, branches) = tree.level(n).map(|(s, node)| (s.clone(), node.cover.clone())).unzip();
    Ok(BranchFamily {
        level: n,
        paths,
        branches,
    })
}

pub fn inf_of_cut<L: Lattice>(lat: &L, fam: &BranchFamily<L::Elem>, cuts: &CutVector) -> L::Elem {
    fam.branches
        .iter()
        .zip(&cuts.cuts)
        .fold(lat.top(), |acc, (b, &m)| lat.meet(&acc, b.at(m)))
}

/// Every infimum of a cut vector within `bound`.
///
/// Branches are folded in order, keeping for each reachable
/// `(partial meet, support used)` state the lexicographically first
/// partial cut. States with equal keys have the same completions, so this
/// yields the lexicographically first full cut for every value without
/// enumerating the product.
pub fn tail_family<L: Lattice>(lat: &L, fam: &BranchFamily<L::Elem>, bound: CutBound) -> Result<TailFamily<L::Elem>> {
    if fam.len() > BRANCH_BOUND {
        return Err(Error::SearchBound {
            what: "branches",
            value: fam.len(),
            bound: BRANCH_BOUND,
        });
    }
    let track_support = bound.max_support < fam.len();
    // ((value, support used), cut vector)
    type State<E> = ((E, usize), Vec<usize>);
    let mut states: Vec<State<L::Elem>> = vec![((lat.top(), 0), Vec::new())];
    for branch in &fam.branches {
        let mut next: Vec<State<L::Elem>> = Vec::new();
        let mut index: HashMap<(L::Elem, usize), usize> = HashMap::new();
        for ((value, used), cut) in &states {
            let top_index = bound.max_index.min(branch.len() - 1);
            for m in 0..=top_index {
                let used = used + usize::from(m > 0);
                if used > bound.max_support {
                    break;
                }
                let key = (lat.meet(value, branch.at(m)), if track_support { used } else { 0 });
                let mut ext = cut.clone();
                ext.push(m);
                match index.get(&key) {
                    Some(&i) if next[i].1 <= ext => {}
                    Some(&i) => next[i].1 = ext,
                    None => {
                        index.insert(key.clone(), next.len());
                        next.push((key, ext));
                    }
                }
            }
        }
        states = next;
    }
    let mut best: HashMap<L::Elem, Vec<usize>> = HashMap::new();
    for ((value, _), cut) in states {
        best.entry(value)
            .and_modify(|c| {
                if cut < *c {
                    *c = cut.clone()
                }
            })
            .or_insert(cut);
    }
    let mut elements: Vec<(L::Elem, CutVector)> = best.into_iter().map(|(v, cuts)| (v, CutVector { cuts })).collect();
    elements.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(TailFamily { elements })
}

/// Whether the tail infima of `fam` have supremum `p`.
pub fn verify_tail_set<L: Lattice>(lat: &L, fam: &BranchFamily<L::Elem>, p: &L::Elem, bound: CutBound) -> Result<bool> {
    let tf = tail_family(lat, fam, bound)?;
    Ok(lat.sup(tf.elements.iter().map(|(e, _)| e)) == *p)
}
