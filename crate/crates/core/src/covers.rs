// SPDX-License-Identifier: Apache-2.0

//! Covers of an element, their normalizations, and exhaustive deciders for
//! the selection principles at desk scale.
//!
//! Every selector is deterministic: candidates are visited in item order and
//! the lexicographically first solution is returned. Selections are reported
//! as item indices into each cover; use [`selected_items`] for elements.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::lattice::{classify, FiniteLattice, Hypotheses, Lattice};

/// Upper bound on the number of covers an exhaustive selector accepts.
pub const COVER_LIST_BOUND: usize = 8;
/// Upper bound on the items of a single cover for subset-enumerating selectors.
pub const SUBSET_ITEM_BOUND: usize = 16;

/// A finite family with supremum `target`. Items may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cover<E> {
    items: Vec<E>,
    target: E,
}

impl<E: Clone + Eq> Cover<E> {
    pub fn new<L: Lattice<Elem = E>>(lat: &L, items: Vec<E>, target: E) -> Result<Self> {
        let sup = lat.sup(&items);
        if sup != target {
            return Err(Error::NotACover {
                sup: lat.label(&sup),
                target: lat.label(&target),
            });
        }
        Ok(Cover { items, target })
    }

    /// A cover of its own supremum.
    pub fn of_sup<L: Lattice<Elem = E>>(lat: &L, items: Vec<E>) -> Self {
        let target = lat.sup(&items);
        Cover { items, target }
    }

    pub fn items(&self) -> &[E] {
        &self.items
    }

    pub fn target(&self) -> &E {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// An increasing cover whose last item equals the target. Reads past the
/// end return the last item, standing in for the countable cover that
/// repeats it forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncreasingCover<E> {
    items: Vec<E>,
}

impl<E: Clone + Eq> IncreasingCover<E> {
    pub fn new<L: Lattice<Elem = E>>(lat: &L, items: Vec<E>, target: &E) -> Result<Self> {
        let Some(last) = items.last() else {
            return Err(Error::NotACover {
                sup: lat.label(&lat.bottom()),
                target: lat.label(target),
            });
        };
        if last != target {
            return Err(Error::NotACover {
                sup: lat.label(last),
                target: lat.label(target),
            });
        }
        if let Some(w) = items.windows(2).find(|w| !lat.leq(&w[0], &w[1])) {
            return Err(Error::InvalidParameter(format!(
                "cover not increasing: `{}` then `{}`",
                lat.label(&w[0]),
                lat.label(&w[1])
            )));
        }
        Ok(IncreasingCover { items })
    }

    pub(crate) fn from_trusted(items: Vec<E>) -> Self {
        debug_assert!(!items.is_empty());
        IncreasingCover { items }
    }

    pub fn items(&self) -> &[E] {
        &self.items
    }

    pub fn target(&self) -> &E {
        self.items.last().expect("nonempty")
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Item at `i` under the stabilization convention.
    pub fn at(&self, i: usize) -> &E {
        &self.items[i.min(self.items.len() - 1)]
    }

    pub fn as_cover(&self) -> Cover<E> {
        Cover {
            items: self.items.clone(),
            target: self.target().clone(),
        }
    }
}

pub fn is_cover<L: Lattice>(lat: &L, items: &[L::Elem], p: &L::Elem) -> bool {
    lat.sup(items) == *p
}

/// Cumulative joins. The empty cover of bottom becomes `[bottom]`.
pub fn normalize_increasing<L: Lattice>(lat: &L, cover: &Cover<L::Elem>) -> IncreasingCover<L::Elem> {
    if cover.is_empty() {
        return IncreasingCover::from_trusted(vec![lat.bottom()]);
    }
    let mut acc = lat.bottom();
    let items = cover
        .items()
        .iter()
        .map(|a| {
            acc = lat.join(&acc, a);
            acc.clone()
        })
        .collect();
    IncreasingCover::from_trusted(items)
}

/// All pairwise meets, `A`-major.
pub fn wedge<L: Hypotheses>(lat: &L, a: &Cover<L::Elem>, b: &Cover<L::Elem>) -> Result<Cover<L::Elem>> {
    lat.require_pawlikowski()?;
    if a.target() != b.target() {
        return Err(Error::TargetMismatch {
            expected: lat.label(a.target()),
            found: lat.label(b.target()),
        });
    }
    let items = a
        .items()
        .iter()
        .flat_map(|x| b.items().iter().map(move |y| (x, y)))
        .map(|(x, y)| lat.meet(x, y))
        .collect();
    Cover::new(lat, items, a.target().clone())
}

/// Left fold of [`wedge`]; `[p]` for an empty list.
pub fn wedge_all<L: Hypotheses>(lat: &L, covers: &[Cover<L::Elem>], p: &L::Elem) -> Result<Cover<L::Elem>> {
    let mut acc = Cover::new(lat, vec![p.clone()], p.clone())?;
    for c in covers {
        acc = wedge(lat, &acc, c)?;
    }
    Ok(acc)
}

/// Elements picked by a set selection.
pub fn selected_items<E: Clone + Eq>(covers: &[Cover<E>], selection: &[Vec<usize>]) -> Vec<Vec<E>> {
    covers
        .iter()
        .zip(selection)
        .map(|(c, idx)| idx.iter().map(|&i| c.items()[i].clone()).collect())
        .collect()
}

/// Common validation. `Ok(true)` means the instance is empty and vacuously solved.
fn check_instance<L: Lattice>(lat: &L, covers: &[Cover<L::Elem>], p: &L::Elem) -> Result<bool> {
    if covers.len() > COVER_LIST_BOUND {
        return Err(Error::SearchBound {
            what: "covers",
            value: covers.len(),
            bound: COVER_LIST_BOUND,
        });
    }
    for c in covers {
        if c.target() != p {
            return Err(Error::TargetMismatch {
                expected: lat.label(p),
                found: lat.label(c.target()),
            });
        }
    }
    if covers.is_empty() {
        return if *p == lat.bottom() {
            Ok(true)
        } else {
            Err(Error::EmptyInstance)
        };
    }
    Ok(false)
}

/// Depth-first search for the lexicographically first sequence of
/// per-cover candidates whose joins reach `p`. Candidates are
/// `(choice, join)` pairs; failed `(position, running join)` states are
/// memoized, which is sound because feasibility depends only on them.
fn first_feasible<E: Clone + Eq + std::hash::Hash, C: Clone, L: Lattice<Elem = E>>(
    lat: &L,
    candidates: &[Vec<(C, E)>],
    p: &E,
    accept: &dyn Fn(usize, &E) -> bool,
) -> Option<Vec<C>> {
    #[allow(clippy::too_many_arguments)]
    fn go<E: Clone + Eq + std::hash::Hash, C: Clone, L: Lattice<Elem = E>>(
        lat: &L,
        candidates: &[Vec<(C, E)>],
        p: &E,
        accept: &dyn Fn(usize, &E) -> bool,
        pos: usize,
        acc: &E,
        dead: &mut HashSet<(usize, E)>,
        path: &mut Vec<C>,
    ) -> bool {
        if pos == candidates.len() {
            return acc == p;
        }
        if dead.contains(&(pos, acc.clone())) {
            return false;
        }
        for (choice, join) in &candidates[pos] {
            if !accept(pos, join) {
                continue;
            }
            let next = lat.join(acc, join);
            path.push(choice.clone());
            if go(lat, candidates, p, accept, pos + 1, &next, dead, path) {
                return true;
            }
            path.pop();
        }
        dead.insert((pos, acc.clone()));
        false
    }
    let mut path = Vec::new();
    let mut dead = HashSet::new();
    go(lat, candidates, p, accept, 0, &lat.bottom(), &mut dead, &mut path).then_some(path)
}

/// One item per cover with supremum `p`, as item indices.
pub fn s1_select<L: Lattice>(lat: &L, covers: &[Cover<L::Elem>], p: &L::Elem) -> Result<Option<Vec<usize>>> {
    if check_instance(lat, covers, p)? {
        return Ok(Some(Vec::new()));
    }
    let families: Vec<Vec<L::Elem>> = covers.iter().map(|c| c.items().to_vec()).collect();
    s1_select_families(lat, &families, p)
}

/// Like [`s1_select`] over arbitrary finite families, which need not be
/// covers of `p` individually.
pub fn s1_select_families<L: Lattice>(lat: &L, families: &[Vec<L::Elem>], p: &L::Elem) -> Result<Option<Vec<usize>>> {
    if families.len() > COVER_LIST_BOUND {
        return Err(Error::SearchBound {
            what: "covers",
            value: families.len(),
            bound: COVER_LIST_BOUND,
        });
    }
    let candidates: Vec<Vec<(usize, L::Elem)>> = families
        .iter()
        .map(|f| {
            let mut seen = HashSet::new();
            f.iter()
                .enumerate()
                .filter(|(_, e)| seen.insert((*e).clone()))
                .map(|(i, e)| (i, e.clone()))
                .collect()
        })
        .collect();
    Ok(first_feasible(lat, &candidates, p, &|_, _| true))
}

/// A single selection from arbitrary families found by trying, at each
/// position, the items that raise the running join before those that do
/// not (each group in index order). Deterministic, but not the
/// lexicographically first solution.
pub fn s1_select_progressive<L: Lattice>(
    lat: &L,
    families: &[Vec<L::Elem>],
    p: &L::Elem,
) -> Result<Option<Vec<usize>>> {
    if families.len() > COVER_LIST_BOUND {
        return Err(Error::SearchBound {
            what: "covers",
            value: families.len(),
            bound: COVER_LIST_BOUND,
        });
    }
    fn go<L: Lattice>(
        lat: &L,
        families: &[Vec<L::Elem>],
        p: &L::Elem,
        pos: usize,
        acc: &L::Elem,
        dead: &mut HashSet<(usize, L::Elem)>,
        path: &mut Vec<usize>,
    ) -> bool {
        if pos == families.len() {
            return acc == p;
        }
        if dead.contains(&(pos, acc.clone())) {
            return false;
        }
        let mut seen = HashSet::new();
        let mut order: Vec<(bool, usize, L::Elem)> = families[pos]
            .iter()
            .enumerate()
            .filter(|(_, e)| seen.insert((*e).clone()))
            .map(|(i, e)| {
                let next = lat.join(acc, e);
                (next == *acc, i, next)
            })
            .collect();
        order.sort_by_key(|(stale, i, _)| (*stale, *i));
        for (_, i, next) in order {
            path.push(i);
            if go(lat, families, p, pos + 1, &next, dead, path) {
                return true;
            }
            path.pop();
        }
        dead.insert((pos, acc.clone()));
        false
    }
    let mut path = Vec::new();
    let mut dead = HashSet::new();
    Ok(go(lat, families, p, 0, &lat.bottom(), &mut dead, &mut path).then_some(path))
}

/// Finite subsets of minimal total size whose union has supremum `p`.
/// Ties go to the lexicographically first sorted list of
/// `(cover, item)` index pairs.
pub fn sfin_select<L: Lattice>(lat: &L, covers: &[Cover<L::Elem>], p: &L::Elem) -> Result<Option<Vec<Vec<usize>>>> {
    if check_instance(lat, covers, p)? {
        return Ok(Some(Vec::new()));
    }
    let flat: Vec<(usize, usize, &L::Elem)> = covers
        .iter()
        .enumerate()
        .flat_map(|(n, c)| c.items().iter().enumerate().map(move |(i, e)| (n, i, e)))
        .collect();

    // feasible(pos, k, acc): can choosing exactly k more from flat[pos..] reach p?
    fn feasible<L: Lattice>(
        lat: &L,
        flat: &[(usize, usize, &L::Elem)],
        p: &L::Elem,
        pos: usize,
        k: usize,
        acc: &L::Elem,
        memo: &mut HashMap<(usize, usize, L::Elem), bool>,
    ) -> bool {
        if k == 0 {
            return acc == p;
        }
        if flat.len() - pos < k {
            return false;
        }
        let key = (pos, k, acc.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let take = feasible(lat, flat, p, pos + 1, k - 1, &lat.join(acc, flat[pos].2), memo);
        let v = take || feasible(lat, flat, p, pos + 1, k, acc, memo);
        memo.insert(key, v);
        v
    }

    let mut memo = HashMap::new();
    let bottom = lat.bottom();
    for k in 0..=flat.len() {
        if !feasible(lat, &flat, p, 0, k, &bottom, &mut memo) {
            continue;
        }
        let mut picked = vec![Vec::new(); covers.len()];
        let (mut pos, mut k, mut acc) = (0, k, bottom);
        while k > 0 {
            let with = lat.join(&acc, flat[pos].2);
            if feasible(lat, &flat, p, pos + 1, k - 1, &with, &mut memo) {
                picked[flat[pos].0].push(flat[pos].1);
                acc = with;
                k -= 1;
            }
            pos += 1;
        }
        return Ok(Some(picked));
    }
    // Taking everything always reaches p.
    Err(Error::SelectorFailed("no finite selection reaches the target".into()))
}

/// Index subsets of `items` with at most `max` members, ordered by size
/// then lexicographically, keeping the first subset per join value.
fn subsets_by_join<L: Lattice>(lat: &L, items: &[L::Elem], max: usize) -> Result<Vec<(Vec<usize>, L::Elem)>> {
    if items.len() > SUBSET_ITEM_BOUND {
        return Err(Error::SearchBound {
            what: "items per cover",
            value: items.len(),
            bound: SUBSET_ITEM_BOUND,
        });
    }
    let n = items.len();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for size in 0..=max.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let join = lat.sup(idx.iter().map(|&i| &items[i]));
            if seen.insert(join.clone()) {
                out.push((idx.clone(), join));
            }
            // Next combination in lexicographic order.
            let Some(pivot) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
                break;
            };
            idx[pivot] += 1;
            for j in pivot + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(out)
}

/// The distinct suprema of subsets of `items`, in first-found order.
pub fn subset_joins<L: Lattice>(lat: &L, items: &[L::Elem]) -> Result<Vec<L::Elem>> {
    Ok(subsets_by_join(lat, items, items.len())?
        .into_iter()
        .map(|(_, j)| j)
        .collect())
}

/// Subsets `B_n` with `|B_n| <= f[n]` whose union has supremum `p`.
/// Each `B_n` ranges over subsets by size then lexicographically, and the
/// first such sequence in that order is returned.
pub fn f_bounded_select<L: Lattice>(
    lat: &L,
    covers: &[Cover<L::Elem>],
    f: &[usize],
    p: &L::Elem,
) -> Result<Option<Vec<Vec<usize>>>> {
    if f.len() != covers.len() {
        return Err(Error::InvalidParameter(format!(
            "bound function has {} entries for {} covers",
            f.len(),
            covers.len()
        )));
    }
    if check_instance(lat, covers, p)? {
        return Ok(Some(Vec::new()));
    }
    let candidates = covers
        .iter()
        .zip(f)
        .map(|(c, &k)| subsets_by_join(lat, c.items(), k))
        .collect::<Result<Vec<_>>>()?;
    Ok(first_feasible(lat, &candidates, p, &|_, _| true))
}

/// Bounded Hurewicz proxy on a finite lattice: finite `F_n` with overall
/// supremum 1 such that `sup F_n` lies below no prime for every `n >= t`.
pub fn hurewicz_check(
    lat: &FiniteLattice,
    covers: &[Cover<crate::lattice::Elem>],
    t: usize,
) -> Result<Option<Vec<Vec<usize>>>> {
    let top = lat.top_elem();
    if t > covers.len() {
        return Err(Error::InvalidParameter(format!(
            "suffix index {t} beyond {} covers",
            covers.len()
        )));
    }
    let primes = classify::primes(lat);
    if primes.is_empty() {
        return Err(Error::NoPrimes);
    }
    if check_instance(lat, covers, &top)? {
        return Ok(Some(Vec::new()));
    }
    let candidates = covers
        .iter()
        .map(|c| subsets_by_join(lat, c.items(), c.len()))
        .collect::<Result<Vec<_>>>()?;
    let escapes = |n: usize, join: &crate::lattice::Elem| n < t || primes.iter().all(|&q| !lat.le(*join, q));
    Ok(first_feasible(lat, &candidates, &top, &escapes))
}
