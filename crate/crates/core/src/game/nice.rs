// SPDX-License-Identifier: Apache-2.0

//! Nice strategy trees: Player I strategies whose answers are increasing
//! covers indexed by the branch path, with each child cover starting at the
//! item just picked.

use std::collections::BTreeMap;

use super::strategy::{branch_of, history_path, Inning, Strategy};
use crate::covers::IncreasingCover;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// One node of a nice tree together with the raw answer it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode<E> {
    pub cover: IncreasingCover<E>,
    /// The underlying strategy's answer at this node.
    pub raw: Vec<E>,
    /// For each tree item, the raw indices whose join (with the item the
    /// path arrived by) it is.
    pub provenance: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct NiceStrategyTree<E> {
    target: E,
    depth: usize,
    branching: usize,
    nodes: BTreeMap<Vec<usize>, NiceNode<E>>,
}

fn check_shape(depth: usize, branching: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    if branching < 2 {
        return Err(Error::InvalidParameter("branching must be at least 2".into()));
    }
    Ok(())
}

fn path_label(s: &[usize]) -> String {
    if s.is_empty() {
        "<root>".into()
    } else {
        s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// All paths of length `< depth` with entries `< branching`, in
/// lexicographic order within each length.
pub fn paths_of_length(len: usize, branching: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..branching).map(move |m| {
                    let mut t = s.clone();
                    t.push(m);
                    t
                })
            })
            .collect();
    }
    out
}

impl<E: Clone + Eq + std::fmt::Debug> NiceStrategyTree<E> {
    /// A tree from explicit node covers, validated against every niceness
    /// invariant. Provenance is the identity.
    pub fn from_nodes<L: Lattice<Elem = E>>(
        lat: &L,
        target: E,
        depth: usize,
        branching: usize,
        covers: BTreeMap<Vec<usize>, Vec<E>>,
    ) -> Result<Self> {
        check_shape(depth, branching)?;
        let mut nodes = BTreeMap::new();
        for (s, items) in covers {
            if s.len() >= depth || s.iter().any(|&m| m >= branching) {
                return Err(Error::InvalidParameter(format!(
                    "node {} outside depth {depth} / branching {branching}",
                    path_label(&s)
                )));
            }
            let cover = IncreasingCover::new(lat, items.clone(), &target).map_err(|e| match e {
                Error::NotACover { sup, .. } => Error::StrategyNotACover {
                    history: path_label(&s),
                    sup,
                },
                other => other,
            })?;
            let provenance = (0..items.len()).map(|i| vec![i]).collect();
            nodes.insert(
                s,
                NiceNode {
                    cover,
                    raw: items,
                    provenance,
                },
            );
        }
        let tree = NiceStrategyTree {
            target,
            depth,
            branching,
            nodes,
        };
        tree.validate(lat)?;
        Ok(tree)
    }

    pub fn target(&self) -> &E {
        &self.target
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn branching(&self) -> usize {
        self.branching
    }

    pub fn nodes(&self) -> &BTreeMap<Vec<usize>, NiceNode<E>> {
        &self.nodes
    }

    pub fn node(&self, s: &[usize]) -> Result<&NiceNode<E>> {
        if s.len() >= self.depth {
            return Err(Error::DepthExceeded {
                level: s.len(),
                depth: self.depth,
            });
        }
        self.nodes.get(s).ok_or_else(|| Error::StrategyPartial {
            history: path_label(s),
            reason: "missing node".into(),
        })
    }

    pub fn cover(&self, s: &[usize]) -> Result<&IncreasingCover<E>> {
        Ok(&self.node(s)?.cover)
    }

    /// The tree of answers below `s`, cut to `depth` levels. It is nice
    /// again: the a_0 rule is local to each edge.
    pub fn subtree(&self, s: &[usize], depth: usize) -> Result<Self> {
        check_shape(depth, self.branching)?;
        if s.len() + depth > self.depth {
            return Err(Error::DepthExceeded {
                level: s.len() + depth,
                depth: self.depth,
            });
        }
        let nodes = self
            .nodes
            .iter()
            .filter(|(t, _)| t.starts_with(s) && t.len() < s.len() + depth)
            .map(|(t, node)| (t[s.len()..].to_vec(), node.clone()))
            .collect();
        Ok(NiceStrategyTree {
            target: self.target.clone(),
            depth,
            branching: self.branching,
            nodes,
        })
    }

    /// Nodes at level `n` in lexicographic path order.
    pub fn level(&self, n: usize) -> impl Iterator<Item = (&Vec<usize>, &NiceNode<E>)> {
        self.nodes.iter().filter(move |(s, _)| s.len() == n)
    }

    /// Checks every invariant and reports the first violation.
    pub fn validate<L: Lattice<Elem = E>>(&self, lat: &L) -> Result<()> {
        for len in 0..self.depth {
            for s in paths_of_length(len, self.branching) {
                let node = self.node(&s)?;
                let items = node.cover.items();
                if items.len() != self.branching {
                    return Err(Error::InvalidParameter(format!(
                        "node {} has {} items, branching is {}",
                        path_label(&s),
                        items.len(),
                        self.branching
                    )));
                }
                if node.cover.target() != &self.target {
                    return Err(Error::StrategyNotACover {
                        history: path_label(&s),
                        sup: lat.label(node.cover.target()),
                    });
                }
                if let Some(w) = items.windows(2).find(|w| !lat.leq(&w[0], &w[1])) {
                    return Err(Error::InvalidParameter(format!(
                        "node {} not increasing at `{}`",
                        path_label(&s),
                        lat.label(&w[1])
                    )));
                }
                if let Some((&last, parent)) = s.split_last() {
                    let expected = self.node(parent)?.cover.at(last);
                    if &items[0] != expected {
                        return Err(Error::InvalidParameter(format!(
                            "node {} starts at `{}`, parent item is `{}`",
                            path_label(&s),
                            lat.label(&items[0]),
                            lat.label(expected)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl<E: Clone + Eq + std::fmt::Debug> Strategy<E> for NiceStrategyTree<E> {
    fn respond(&self, history: &[Inning<E>]) -> Result<Vec<E>> {
        let path: Vec<usize> = history.iter().map(|h| branch_of(&h.picked)).collect();
        Ok(self.cover(&path)?.items().to_vec())
    }
}

/// Builds the nice tree dominating `strat` on every history of single
/// picks with index `< branching`, to `depth` levels.
///
/// At a node reached by picking `a`, the raw answer `(a_n)` becomes
/// `a ∨ a_0 ∨ … ∨ a_m`, prefixed by `a` itself unless the first entry
/// already equals it, then cut to `branching` items with the last forced
/// to the full join `p` (or padded by repeating it). The raw strategy is
/// shown the raw history: its own answers and, as picks, the raw indices
/// behind each tree item.
pub fn normalize_to_nice<L: Lattice>(
    lat: &L,
    strat: &dyn Strategy<L::Elem>,
    p: &L::Elem,
    depth: usize,
    branching: usize,
) -> Result<NiceStrategyTree<L::Elem>> {
    check_shape(depth, branching)?;
    let mut nodes = BTreeMap::new();
    // (tree path, raw history, item the path arrived by)
    type Frame<E> = (Vec<usize>, Vec<Inning<E>>, Option<E>);
    let mut stack: Vec<Frame<L::Elem>> = vec![(Vec::new(), Vec::new(), None)];
    while let Some((s, raw_history, arrived)) = stack.pop() {
        let raw = strat.respond(&raw_history).map_err(|e| match e {
            e @ Error::StrategyNotACover { .. } => e,
            e @ Error::StrategyPartial { .. } => e,
            other => Error::StrategyPartial {
                history: history_path(&raw_history),
                reason: other.to_string(),
            },
        })?;
        let sup = lat.sup(&raw);
        if &sup != p {
            return Err(Error::StrategyNotACover {
                history: history_path(&raw_history),
                sup: lat.label(&sup),
            });
        }
        let node = nice_node(lat, raw, arrived.as_ref(), p, branching);
        if s.len() + 1 < depth {
            let running = arrived.clone().unwrap_or_else(|| lat.bottom());
            for m in (0..branching).rev() {
                let mut child = s.clone();
                child.push(m);
                let mut h = raw_history.clone();
                let picked = node.provenance[m].clone();
                let joined = lat.sup(picked.iter().map(|&i| &node.raw[i]));
                h.push(Inning {
                    offered: node.raw.clone(),
                    picked,
                    running_join: lat.join(&running, &joined),
                });
                stack.push((child, h, Some(node.cover.items()[m].clone())));
            }
        }
        nodes.insert(s, node);
    }
    Ok(NiceStrategyTree {
        target: p.clone(),
        depth,
        branching,
        nodes,
    })
}

fn nice_node<L: Lattice>(
    lat: &L,
    raw: Vec<L::Elem>,
    arrived: Option<&L::Elem>,
    p: &L::Elem,
    branching: usize,
) -> NiceNode<L::Elem> {
    let base = arrived.cloned().unwrap_or_else(|| lat.bottom());
    let mut items: Vec<(L::Elem, Vec<usize>)> = Vec::new();
    let mut acc = base.clone();
    for (i, r) in raw.iter().enumerate() {
        acc = lat.join(&acc, r);
        items.push((acc.clone(), (0..=i).collect()));
    }
    if let Some(a) = arrived {
        if items.first().map(|(e, _)| e) != Some(a) {
            items.insert(0, (a.clone(), Vec::new()));
        }
    }
    if items.is_empty() {
        // Only reachable for p = bottom with an empty raw answer.
        items.push((base, Vec::new()));
    }
    if items.len() > branching {
        items.truncate(branching - 1);
        items.push((p.clone(), (0..raw.len()).collect()));
    }
    while items.len() < branching {
        let last = items.last().expect("nonempty").clone();
        items.push(last);
    }
    let (elems, provenance): (Vec<_>, Vec<_>) = items.into_iter().unzip();
    NiceNode {
        cover: IncreasingCover::from_trusted(elems),
        raw,
        provenance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::strategy::ConstantStrategy;
    use crate::lattice::{generate, FiniteLattice, LatticeKind};

    fn b2() -> FiniteLattice {
        generate(&LatticeKind::Powerset(2)).unwrap()
    }

    #[test]
    fn constant_strategy_normalization() {
        let l = b2();
        let (x, t) = (l.elem("{x}").unwrap(), l.top_elem());
        let s = ConstantStrategy { cover: vec![x, t] };
        let tree = normalize_to_nice(&l, &s, &t, 2, 2).unwrap();
        tree.validate(&l).unwrap();
        assert_eq!(l.labels(tree.cover(&[]).unwrap().items()), ["{x}", "{x,y}"]);
        assert_eq!(l.labels(tree.cover(&[0]).unwrap().items()), ["{x}", "{x,y}"]);
        assert_eq!(l.labels(tree.cover(&[1]).unwrap().items()), ["{x,y}", "{x,y}"]);
    }

    #[test]
    fn prefix_rule() {
        let l = b2();
        let (x, y, t) = (l.elem("{x}").unwrap(), l.elem("{y}").unwrap(), l.top_elem());
        let s = ConstantStrategy { cover: vec![y, x] };
        let tree = normalize_to_nice(&l, &s, &t, 2, 3).unwrap();
        tree.validate(&l).unwrap();
        assert_eq!(l.labels(tree.cover(&[]).unwrap().items()), ["{y}", "{x,y}", "{x,y}"]);
        // Arriving by {y}: the raw answer joined with {y} starts at {y}.
        assert_eq!(
            tree.node(&[0]).unwrap().provenance,
            vec![vec![0], vec![0, 1], vec![0, 1]]
        );
        let s =
            crate::game::strategy::FnStrategy(|h: &[Inning<_>]| Ok(if h.is_empty() { vec![y, x] } else { vec![x, y] }));
        let tree = normalize_to_nice(&l, &s, &t, 2, 3).unwrap();
        tree.validate(&l).unwrap();
        let arrived_y = tree.node(&[0]).unwrap();
        assert_eq!(l.labels(arrived_y.cover.items()), ["{y}", "{x,y}", "{x,y}"]);
        assert_eq!(arrived_y.provenance, vec![vec![], vec![0], vec![0, 1]]);
    }

    #[test]
    fn nice_strategy_is_a_fixpoint() {
        let l = generate(&LatticeKind::Chain(4)).unwrap();
        let p = l.top_elem();
        let s = ConstantStrategy {
            cover: l.elems_by_label(&["c1", "c2", "1"]).unwrap(),
        };
        let tree = normalize_to_nice(&l, &s, &p, 3, 3).unwrap();
        let again = normalize_to_nice(&l, &tree, &p, 3, 3).unwrap();
        for (s, node) in tree.nodes() {
            assert_eq!(node.cover, again.node(s).unwrap().cover);
        }
    }

    #[test]
    fn non_cover_is_rejected_with_history() {
        let l = b2();
        let (x, t) = (l.elem("{x}").unwrap(), l.top_elem());
        let s =
            crate::game::strategy::FnStrategy(|h: &[Inning<_>]| Ok(if h.len() == 1 { vec![x] } else { vec![x, t] }));
        let err = normalize_to_nice(&l, &s, &t, 3, 2).unwrap_err();
        assert_eq!(err.name(), "NotACover");
        assert!(err.to_string().contains("at history 0"), "{err}");
    }

    #[test]
    fn parameters_checked() {
        let l = b2();
        let s = ConstantStrategy {
            cover: vec![l.top_elem()],
        };
        assert_eq!(
            normalize_to_nice(&l, &s, &l.top_elem(), 2, 1).unwrap_err().name(),
            "InvalidParameter"
        );
        assert_eq!(
            normalize_to_nice(&l, &s, &l.top_elem(), 0, 2).unwrap_err().name(),
            "InvalidParameter"
        );
    }

    #[test]
    fn from_nodes_checks_a0_rule() {
        let l = b2();
        let (x, y, t) = (l.elem("{x}").unwrap(), l.elem("{y}").unwrap(), l.top_elem());
        let good = BTreeMap::from([(vec![], vec![x, t]), (vec![0], vec![x, t]), (vec![1], vec![t, t])]);
        assert!(NiceStrategyTree::from_nodes(&l, t, 2, 2, good).is_ok());
        let bad = BTreeMap::from([(vec![], vec![x, t]), (vec![0], vec![y, t]), (vec![1], vec![t, t])]);
        assert_eq!(
            NiceStrategyTree::from_nodes(&l, t, 2, 2, bad).unwrap_err().name(),
            "InvalidParameter"
        );
        let missing = BTreeMap::from([(vec![], vec![x, t])]);
        assert_eq!(
            NiceStrategyTree::from_nodes(&l, t, 2, 2, missing).unwrap_err().name(),
            "StrategyPartial"
        );
    }
}
