// SPDX-License-Identifier: Apache-2.0

//! Lattices: the trait the game machinery is generic over, the explicit
//! finite representation, and the two symbolic infinite families.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

pub mod almost_constant;
pub mod classify;
pub mod finite;
pub mod finite_cofinite;
pub mod generate;
pub mod product;

pub use almost_constant::{AcSeq, AlmostConstantLattice};
pub use classify::{classify, has_enough_primes, is_frame_distributive, primes, spectrum};
pub use classify::{ClassificationReport, DistributivityWitness, SpectrumSpace};
pub use finite::{Elem, FiniteLattice, HasseLayout};
pub use finite_cofinite::{FcElem, FiniteCofinite, SymbolicSet};
pub use generate::{catalog, chain, generate, powerset, topology, LatticeKind};
pub use product::{product, ProductLattice};

/// A bounded lattice with decidable order.
pub trait Lattice {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn bottom(&self) -> Self::Elem;
    fn label(&self, a: &Self::Elem) -> String;

    /// Least upper bound of a finite family; bottom for the empty family.
    fn sup<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(&acc, x))
    }

    /// Greatest lower bound of a finite family; top for the empty family.
    fn inf<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.top(), |acc, x| self.meet(&acc, x))
    }

    fn labels<'a, I>(&self, items: I) -> Vec<String>
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().map(|e| self.label(e)).collect()
    }
}

/// The hypotheses the counter-play constructions are gated on.
///
/// `Err` carries a human-readable witness of the failure.
pub trait Hypotheses: Lattice {
    fn enough_primes(&self) -> std::result::Result<(), String>;
    fn frame_law(&self) -> std::result::Result<(), String>;

    fn require_pre_pawlikowski(&self) -> Result<()> {
        self.enough_primes().map_err(Error::NotEnoughPrimes)
    }

    fn require_pawlikowski(&self) -> Result<()> {
        self.enough_primes()
            .map_err(|w| Error::NotPawlikowski(format!("not enough primes: {w}")))?;
        self.frame_law().map_err(Error::NotPawlikowski)
    }
}
