// SPDX-License-Identifier: Apache-2.0

//! Explicit finite lattices with precomputed order, join and meet tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock};

use super::classify::ClassificationReport;
use super::{Hypotheses, Lattice};
use crate::error::{Error, Result};

static NEXT_ID: AtomicU32 = AtomicU32::new(1);

/// Handle to an element of one particular [`FiniteLattice`].
///
/// Ordering follows the carrier order of the issuing lattice.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem {
    owner: u32,
    index: u32,
}

impl Elem {
    pub fn index(self) -> usize {
        self.index as usize
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.index)
    }
}

struct Inner {
    id: u32,
    name: String,
    labels: Vec<String>,
    by_label: HashMap<String, u32>,
    leq: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    top: u32,
    bottom: u32,
    report: OnceLock<ClassificationReport>,
}

/// An immutable bounded lattice over a finite carrier.
///
/// Cloning is cheap; clones share tables and identity, so elements issued
/// by one clone are valid in every other.
#[derive(Clone)]
pub struct FiniteLattice {
    inner: Arc<Inner>,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("name", &self.inner.name)
            .field("carrier", &self.inner.labels)
            .finish()
    }
}

impl FiniteLattice {
    /// Validates a carrier and a generating set of order pairs.
    ///
    /// The reflexive-transitive closure of `leq_pairs` is taken before
    /// checking antisymmetry and the existence of all binary joins and meets.
    pub fn build<S: AsRef<str>>(name: impl Into<String>, elements: &[S], leq_pairs: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let by_label = index_labels(&labels)?;
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for (lo, hi) in leq_pairs {
            let lo = *by_label
                .get(lo.as_ref())
                .ok_or_else(|| Error::UnknownLabel(lo.as_ref().to_string()))?;
            let hi = *by_label
                .get(hi.as_ref())
                .ok_or_else(|| Error::UnknownLabel(hi.as_ref().to_string()))?;
            rel[lo as usize * n + hi as usize] = true;
        }
        Self::from_relation(name, labels, |a, b| rel[a * n + b])
    }

    /// Builds a lattice from an order predicate over indices `0..labels.len()`.
    /// The predicate is closed reflexively and transitively first.
    pub fn from_relation(
        name: impl Into<String>,
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let by_label = index_labels(&labels)?;
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rel[a * n + b] = a == b || leq(a, b);
            }
        }
        // Warshall closure.
        for k in 0..n {
            for a in 0..n {
                if rel[a * n + k] {
                    for b in 0..n {
                        if rel[k * n + b] {
                            rel[a * n + b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if rel[a * n + b] && rel[b * n + a] {
                    return Err(Error::NotAPoset(labels[a].clone(), labels[b].clone()));
                }
            }
        }
        let down: Vec<usize> = (0..n).map(|c| (0..n).filter(|&x| rel[x * n + c]).count()).collect();
        let up: Vec<usize> = (0..n).map(|c| (0..n).filter(|&x| rel[c * n + x]).count()).collect();
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let j =
                    least(n, &rel, &down, |c| rel[a * n + c] && rel[b * n + c]).ok_or_else(|| Error::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        op: "join",
                    })?;
                let m =
                    greatest(n, &rel, &up, |c| rel[c * n + a] && rel[c * n + b]).ok_or_else(|| Error::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        op: "meet",
                    })?;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
            }
        }
        let top = (0..n).fold(0u32, |acc, x| join[acc as usize * n + x]);
        let bottom = (0..n).fold(0u32, |acc, x| meet[acc as usize * n + x]);
        Ok(Self::assemble(
            name.into(),
            labels,
            by_label,
            rel,
            join,
            meet,
            top,
            bottom,
        ))
    }

    /// Assembles a lattice from tables the caller guarantees to be a valid
    /// lattice (used for pointwise constructions).
    pub(crate) fn from_tables(
        name: String,
        labels: Vec<String>,
        leq: Vec<bool>,
        join: Vec<u32>,
        meet: Vec<u32>,
    ) -> Result<Self> {
        let by_label = index_labels(&labels)?;
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let top = (0..n).fold(0u32, |acc, x| join[acc as usize * n + x]);
        let bottom = (0..n).fold(0u32, |acc, x| meet[acc as usize * n + x]);
        Ok(Self::assemble(name, labels, by_label, leq, join, meet, top, bottom))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: String,
        labels: Vec<String>,
        by_label: HashMap<String, u32>,
        leq: Vec<bool>,
        join: Vec<u32>,
        meet: Vec<u32>,
        top: u32,
        bottom: u32,
    ) -> Self {
        FiniteLattice {
            inner: Arc::new(Inner {
                id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
                name,
                labels,
                by_label,
                leq,
                join,
                meet,
                top,
                bottom,
                report: OnceLock::new(),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Carrier in carrier order.
    pub fn elems(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.len() as u32).map(move |index| Elem {
            owner: self.inner.id,
            index,
        })
    }

    pub fn elem_at(&self, index: usize) -> Elem {
        assert!(index < self.len(), "element index {index} out of range");
        Elem {
            owner: self.inner.id,
            index: index as u32,
        }
    }

    pub fn elem(&self, label: &str) -> Result<Elem> {
        self.inner
            .by_label
            .get(label)
            .map(|&index| Elem {
                owner: self.inner.id,
                index,
            })
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn elems_by_label<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<Elem>> {
        labels.iter().map(|l| self.elem(l.as_ref())).collect()
    }

    /// `Ok` iff `e` was issued by this lattice.
    pub fn check(&self, e: Elem) -> Result<()> {
        if e.owner == self.inner.id && (e.index as usize) < self.len() {
            Ok(())
        } else {
            Err(Error::ForeignElement)
        }
    }

    pub fn owns(&self, e: Elem) -> bool {
        self.check(e).is_ok()
    }

    #[inline]
    fn idx(&self, e: Elem) -> usize {
        assert_eq!(
            e.owner, self.inner.id,
            "element used with a lattice that did not issue it"
        );
        e.index as usize
    }

    #[inline]
    fn wrap(&self, index: u32) -> Elem {
        Elem {
            owner: self.inner.id,
            index,
        }
    }

    pub fn le(&self, a: Elem, b: Elem) -> bool {
        let n = self.len();
        self.inner.leq[self.idx(a) * n + self.idx(b)]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.le(a, b)
    }

    pub fn join_of(&self, a: Elem, b: Elem) -> Elem {
        let n = self.len();
        self.wrap(self.inner.join[self.idx(a) * n + self.idx(b)])
    }

    pub fn meet_of(&self, a: Elem, b: Elem) -> Elem {
        let n = self.len();
        self.wrap(self.inner.meet[self.idx(a) * n + self.idx(b)])
    }

    pub fn top_elem(&self) -> Elem {
        self.wrap(self.inner.top)
    }

    pub fn bottom_elem(&self) -> Elem {
        self.wrap(self.inner.bottom)
    }

    pub fn label_of(&self, e: Elem) -> &str {
        &self.inner.labels[self.idx(e)]
    }

    pub fn carrier_labels(&self) -> &[String] {
        &self.inner.labels
    }

    /// Supremum of a finite family; bottom for the empty family.
    pub fn sup_family(&self, items: &[Elem]) -> Elem {
        items.iter().fold(self.bottom_elem(), |acc, &x| self.join_of(acc, x))
    }

    pub fn inf_family(&self, items: &[Elem]) -> Elem {
        items.iter().fold(self.top_elem(), |acc, &x| self.meet_of(acc, x))
    }

    /// Cached exhaustive classification.
    pub fn classification(&self) -> &ClassificationReport {
        self.inner.report.get_or_init(|| super::classify::compute_report(self))
    }

    /// True when `b` covers `a` (a < b with nothing strictly between).
    pub fn covers_pair(&self, a: Elem, b: Elem) -> bool {
        self.lt(a, b) && !self.elems().any(|c| self.lt(a, c) && self.lt(c, b))
    }

    /// Hasse diagram: covering edges plus a layer per element given by the
    /// length of the longest chain from bottom.
    pub fn hasse(&self) -> HasseLayout {
        let mut edges = Vec::new();
        for a in self.elems() {
            for b in self.elems() {
                if self.covers_pair(a, b) {
                    edges.push((a, b));
                }
            }
        }
        // Carrier order need not be a linear extension, so relax to fixpoint.
        let mut layer = vec![0usize; self.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in &edges {
                if layer[b.index()] < layer[a.index()] + 1 {
                    layer[b.index()] = layer[a.index()] + 1;
                    changed = true;
                }
            }
        }
        HasseLayout {
            nodes: self.elems().map(|e| (e, layer[e.index()])).collect(),
            edges,
        }
    }

    /// The sublattice `↑r = {a : r ≤ a}`, with the same labels.
    pub fn principal_filter(&self, r: Elem) -> Result<FiniteLattice> {
        self.check(r)?;
        let above: Vec<Elem> = self.elems().filter(|&a| self.le(r, a)).collect();
        let labels = above.iter().map(|&a| self.label_of(a).to_string()).collect();
        FiniteLattice::from_relation(format!("{}/{}", self.name(), self.label_of(r)), labels, |i, j| {
            self.le(above[i], above[j])
        })
    }

    /// Number of edges in the longest chain (0 for the one-element lattice).
    pub fn height(&self) -> usize {
        let layout = self.hasse();
        layout.nodes.iter().map(|&(_, l)| l).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseLayout {
    pub nodes: Vec<(Elem, usize)>,
    pub edges: Vec<(Elem, Elem)>,
}

impl Lattice for FiniteLattice {
    type Elem = Elem;

    fn leq(&self, a: &Elem, b: &Elem) -> bool {
        self.le(*a, *b)
    }
    fn join(&self, a: &Elem, b: &Elem) -> Elem {
        self.join_of(*a, *b)
    }
    fn meet(&self, a: &Elem, b: &Elem) -> Elem {
        self.meet_of(*a, *b)
    }
    fn top(&self) -> Elem {
        self.top_elem()
    }
    fn bottom(&self) -> Elem {
        self.bottom_elem()
    }
    fn label(&self, a: &Elem) -> String {
        self.label_of(*a).to_string()
    }
}

impl Hypotheses for FiniteLattice {
    fn enough_primes(&self) -> std::result::Result<(), String> {
        match self.classification().enough_primes_witness {
            None => Ok(()),
            Some((a, b)) => Err(format!(
                "no prime separates `{}` from `{}`",
                self.label_of(a),
                self.label_of(b)
            )),
        }
    }

    fn frame_law(&self) -> std::result::Result<(), String> {
        match &self.classification().distributivity_witness {
            None => Ok(()),
            Some(w) => Err(format!(
                "(sup {{{}}}) meet `{}` differs from the join of meets",
                self.labels(&w.family).join(","),
                self.label_of(w.b)
            )),
        }
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, u32>> {
    let mut by_label = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if by_label.insert(l.clone(), i as u32).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(by_label)
}

/// Least element of `{c : pred(c)}` under `rel`, if it exists.
fn least(n: usize, rel: &[bool], down: &[usize], pred: impl Fn(usize) -> bool) -> Option<usize> {
    let cands: Vec<usize> = (0..n).filter(|&c| pred(c)).collect();
    let &best = cands.iter().min_by_key(|&&c| down[c])?;
    cands.iter().all(|&c| rel[best * n + c]).then_some(best)
}

fn greatest(n: usize, rel: &[bool], up: &[usize], pred: impl Fn(usize) -> bool) -> Option<usize> {
    let cands: Vec<usize> = (0..n).filter(|&c| pred(c)).collect();
    let &best = cands.iter().min_by_key(|&&c| up[c])?;
    cands.iter().all(|&c| rel[c * n + best]).then_some(best)
}
