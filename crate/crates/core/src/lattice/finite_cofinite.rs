// SPDX-License-Identifier: Apache-2.0

//! The lattice of finite and cofinite subsets of the naturals.
//!
//! It is distributive, has enough primes (the complements of singletons)
//! but is not complete; [`FiniteCofinite::sup_defined`] exhibits the
//! missing suprema on eventually periodic index sets.

use std::collections::BTreeSet;
use std::fmt;

use super::{Hypotheses, Lattice};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// The set equals its support.
    Finite,
    /// The set is the complement of its support.
    Cofinite,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FcElem {
    pub mode: Mode,
    pub support: BTreeSet<u64>,
}

impl FcElem {
    pub fn finite(support: impl IntoIterator<Item = u64>) -> Self {
        FcElem {
            mode: Mode::Finite,
            support: support.into_iter().collect(),
        }
    }

    pub fn cofinite(exceptions: impl IntoIterator<Item = u64>) -> Self {
        FcElem {
            mode: Mode::Cofinite,
            support: exceptions.into_iter().collect(),
        }
    }

    pub fn singleton(i: u64) -> Self {
        Self::finite([i])
    }

    pub fn contains(&self, i: u64) -> bool {
        match self.mode {
            Mode::Finite => self.support.contains(&i),
            Mode::Cofinite => !self.support.contains(&i),
        }
    }

    pub fn complement(&self) -> Self {
        FcElem {
            mode: match self.mode {
                Mode::Finite => Mode::Cofinite,
                Mode::Cofinite => Mode::Finite,
            },
            support: self.support.clone(),
        }
    }
}

impl fmt::Display for FcElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.support.iter().map(|i| i.to_string()).collect();
        match self.mode {
            Mode::Finite => write!(f, "Finite{{{}}}", items.join(",")),
            Mode::Cofinite => write!(f, "Cofinite{{{}}}", items.join(",")),
        }
    }
}

/// An eventually periodic subset of ω: `i ∈ S` iff
/// `(i mod period ∈ residues) XOR (i ∈ exceptions)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSet {
    exceptions: BTreeSet<u64>,
    period: u64,
    residues: BTreeSet<u64>,
}

impl SymbolicSet {
    pub fn new(
        exceptions: impl IntoIterator<Item = u64>,
        period: u64,
        residues: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidSymbolicSet("period must be positive".into()));
        }
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        if let Some(&r) = residues.iter().find(|&&r| r >= period) {
            return Err(Error::InvalidSymbolicSet(format!(
                "residue {r} not below period {period}"
            )));
        }
        Ok(SymbolicSet {
            exceptions: exceptions.into_iter().collect(),
            period,
            residues,
        })
    }

    pub fn all() -> Self {
        Self::new([], 1, [0]).unwrap()
    }

    pub fn evens() -> Self {
        Self::new([], 2, [0]).unwrap()
    }

    pub fn contains(&self, i: u64) -> bool {
        self.residues.contains(&(i % self.period)) ^ self.exceptions.contains(&i)
    }

    /// `Some` when `S` is finite or cofinite, as the corresponding element.
    pub fn as_element(&self) -> Option<FcElem> {
        if self.residues.is_empty() {
            Some(FcElem::finite(self.exceptions.iter().copied()))
        } else if self.residues.len() as u64 == self.period {
            Some(FcElem::cofinite(self.exceptions.iter().copied()))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FiniteCofinite;

impl FiniteCofinite {
    /// Supremum of `{singleton(i) : i ∈ S}` when it exists in the lattice.
    ///
    /// The family's upper bounds are exactly the elements containing `S`.
    /// If `S` is neither finite nor cofinite, every such bound is cofinite
    /// and misses infinitely many points outside `S`, so removing one of
    /// them yields a strictly smaller bound: no least one exists.
    pub fn sup_defined(&self, family: &SymbolicSet) -> Option<FcElem> {
        family.as_element()
    }

    /// For an upper bound of the singletons of `S`, a strictly smaller
    /// upper bound, if one exists. Witnesses non-completeness.
    pub fn refine_upper_bound(&self, family: &SymbolicSet, bound: &FcElem) -> Option<FcElem> {
        if family.as_element().is_some() {
            return None;
        }
        // Cofinite bound: find an index outside S not yet excluded.
        if bound.mode != Mode::Cofinite {
            return None;
        }
        let start = bound
            .support
            .iter()
            .chain(&family.exceptions)
            .max()
            .map_or(0, |m| m + 1);
        let gap = (start..start + family.period)
            .find(|&i| !family.contains(i))
            .expect("S has a gap in every period when it is not cofinite");
        let mut smaller = bound.clone();
        smaller.support.insert(gap);
        Some(smaller)
    }

    /// Complements of singletons are exactly the primes.
    pub fn is_prime(&self, e: &FcElem) -> bool {
        e.mode == Mode::Cofinite && e.support.len() == 1
    }

    /// For `a ≰ b`, a prime above `b` not above `a`.
    pub fn separating_prime(&self, a: &FcElem, b: &FcElem) -> Option<FcElem> {
        if self.leq(a, b) {
            return None;
        }
        // a ∖ b is nonempty; any point of it works.
        let point = match (a.mode, b.mode) {
            (Mode::Finite, _) => a.support.iter().copied().find(|&i| !b.contains(i)),
            (Mode::Cofinite, Mode::Finite) => {
                let bound = a.support.iter().chain(&b.support).max().map_or(0, |m| m + 1);
                Some(bound)
            }
            (Mode::Cofinite, Mode::Cofinite) => b.support.iter().copied().find(|i| !a.support.contains(i)),
        }?;
        Some(FcElem::cofinite([point]))
    }
}

impl Lattice for FiniteCofinite {
    type Elem = FcElem;

    fn leq(&self, a: &FcElem, b: &FcElem) -> bool {
        match (a.mode, b.mode) {
            (Mode::Finite, Mode::Finite) => a.support.is_subset(&b.support),
            (Mode::Finite, Mode::Cofinite) => a.support.is_disjoint(&b.support),
            (Mode::Cofinite, Mode::Finite) => false,
            (Mode::Cofinite, Mode::Cofinite) => b.support.is_subset(&a.support),
        }
    }

    fn join(&self, a: &FcElem, b: &FcElem) -> FcElem {
        match (a.mode, b.mode) {
            (Mode::Finite, Mode::Finite) => FcElem::finite(a.support.union(&b.support).copied()),
            (Mode::Finite, Mode::Cofinite) => FcElem::cofinite(b.support.difference(&a.support).copied()),
            (Mode::Cofinite, Mode::Finite) => FcElem::cofinite(a.support.difference(&b.support).copied()),
            (Mode::Cofinite, Mode::Cofinite) => FcElem::cofinite(a.support.intersection(&b.support).copied()),
        }
    }

    fn meet(&self, a: &FcElem, b: &FcElem) -> FcElem {
        self.join(&a.complement(), &b.complement()).complement()
    }

    fn top(&self) -> FcElem {
        FcElem::cofinite([])
    }

    fn bottom(&self) -> FcElem {
        FcElem::finite([])
    }

    fn label(&self, a: &FcElem) -> String {
        a.to_string()
    }
}

impl Hypotheses for FiniteCofinite {
    fn enough_primes(&self) -> std::result::Result<(), String> {
        Ok(())
    }

    fn frame_law(&self) -> std::result::Result<(), String> {
        Ok(())
    }
}
