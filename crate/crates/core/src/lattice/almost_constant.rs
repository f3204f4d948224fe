// SPDX-License-Identifier: Apache-2.0

//! Eventually constant sequences over a finite lattice, ordered pointwise.
//!
//! This is the sublattice of `L^ω` reached by finite joins and meets of the
//! `δ_n(a)` and `p̃_m` sequences used when lifting a strategy.

use std::collections::{BTreeMap, BTreeSet};

use super::finite::{Elem, FiniteLattice};
use super::{Hypotheses, Lattice};
use crate::error::{Error, Result};

/// A sequence equal to `tail` except at finitely many coordinates.
/// Normalized: no override equals the tail.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AcSeq {
    tail: Elem,
    overrides: BTreeMap<usize, Elem>,
}

impl AcSeq {
    fn normalized(tail: Elem, overrides: impl IntoIterator<Item = (usize, Elem)>) -> Self {
        AcSeq {
            tail,
            overrides: overrides.into_iter().filter(|&(_, e)| e != tail).collect(),
        }
    }

    pub fn tail(&self) -> Elem {
        self.tail
    }

    pub fn overrides(&self) -> &BTreeMap<usize, Elem> {
        &self.overrides
    }

    pub fn at(&self, coordinate: usize) -> Elem {
        self.overrides.get(&coordinate).copied().unwrap_or(self.tail)
    }
}

#[derive(Debug, Clone)]
pub struct AlmostConstantLattice {
    base: FiniteLattice,
    width: Option<usize>,
}

impl AlmostConstantLattice {
    pub fn new(base: FiniteLattice) -> Self {
        AlmostConstantLattice { base, width: None }
    }

    /// Rejects constructors mentioning coordinates `>= width`.
    pub fn with_width(base: FiniteLattice, width: usize) -> Self {
        AlmostConstantLattice {
            base,
            width: Some(width),
        }
    }

    pub fn base(&self) -> &FiniteLattice {
        &self.base
    }

    pub fn width(&self) -> Option<usize> {
        self.width
    }

    fn check_coordinate(&self, n: usize) -> Result<()> {
        match self.width {
            Some(w) if n >= w => Err(Error::CoordinateOutOfRange {
                coordinate: n,
                width: w,
            }),
            _ => Ok(()),
        }
    }

    pub fn constant(&self, a: Elem) -> AcSeq {
        AcSeq::normalized(a, [])
    }

    /// `a` at coordinate `n`, bottom elsewhere.
    pub fn delta(&self, n: usize, a: Elem) -> Result<AcSeq> {
        self.check_coordinate(n)?;
        self.base.check(a)?;
        Ok(AcSeq::normalized(self.base.bottom_elem(), [(n, a)]))
    }

    pub fn one_omega(&self) -> AcSeq {
        self.constant(self.base.top_elem())
    }

    /// `p` at coordinate `m`, top elsewhere.
    pub fn p_tilde(&self, m: usize, p: Elem) -> Result<AcSeq> {
        self.check_coordinate(m)?;
        self.base.check(p)?;
        Ok(AcSeq::normalized(self.base.top_elem(), [(m, p)]))
    }

    /// Top on coordinates `< width`, bottom beyond: the supremum of the
    /// lifted family `{δ_n(a) : a ∈ A, n < width}` of any cover `A` of 1.
    pub fn truncated_top(&self, width: usize) -> AcSeq {
        AcSeq::normalized(self.base.bottom_elem(), (0..width).map(|n| (n, self.base.top_elem())))
    }

    fn pointwise(&self, a: &AcSeq, b: &AcSeq, op: impl Fn(Elem, Elem) -> Elem) -> AcSeq {
        let coords: BTreeSet<usize> = a.overrides.keys().chain(b.overrides.keys()).copied().collect();
        AcSeq::normalized(
            op(a.tail, b.tail),
            coords.into_iter().map(|i| (i, op(a.at(i), b.at(i)))),
        )
    }
}

impl Lattice for AlmostConstantLattice {
    type Elem = AcSeq;

    fn leq(&self, a: &AcSeq, b: &AcSeq) -> bool {
        self.base.le(a.tail, b.tail)
            && a.overrides
                .keys()
                .chain(b.overrides.keys())
                .all(|&i| self.base.le(a.at(i), b.at(i)))
    }

    fn join(&self, a: &AcSeq, b: &AcSeq) -> AcSeq {
        self.pointwise(a, b, |x, y| self.base.join_of(x, y))
    }

    fn meet(&self, a: &AcSeq, b: &AcSeq) -> AcSeq {
        self.pointwise(a, b, |x, y| self.base.meet_of(x, y))
    }

    fn top(&self) -> AcSeq {
        self.one_omega()
    }

    fn bottom(&self) -> AcSeq {
        self.constant(self.base.bottom_elem())
    }

    fn label(&self, a: &AcSeq) -> String {
        let parts: Vec<String> = a
            .overrides
            .iter()
            .map(|(i, &e)| format!("{i}:{}", self.base.label_of(e)))
            .collect();
        format!("[{}|{}]", parts.join(","), self.base.label_of(a.tail))
    }
}

/// Pointwise products of a lattice with enough primes (resp. satisfying the
/// frame law) inherit the property, with primes prime in one coordinate
/// and top elsewhere.
impl Hypotheses for AlmostConstantLattice {
    fn enough_primes(&self) -> std::result::Result<(), String> {
        self.base.enough_primes()
    }

    fn frame_law(&self) -> std::result::Result<(), String> {
        self.base.frame_law()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::generate::{generate, LatticeKind};

    fn chain3() -> (FiniteLattice, Elem) {
        let l = generate(&LatticeKind::Chain(3)).unwrap();
        let m = l.elem("c1").unwrap();
        (l, m)
    }

    #[test]
    fn delta_shape() {
        let (l, m) = chain3();
        let ac = AlmostConstantLattice::new(l.clone());
        let d = ac.delta(1, m).unwrap();
        assert_eq!(d.tail(), l.bottom_elem());
        assert_eq!(d.overrides().iter().collect::<Vec<_>>(), vec![(&1, &m)]);
        assert_eq!(ac.label(&d), "[1:c1|0]");
    }

    #[test]
    fn disjoint_deltas_join() {
        let b2 = generate(&LatticeKind::Powerset(2)).unwrap();
        let (x, y) = (b2.elem("{x}").unwrap(), b2.elem("{y}").unwrap());
        let ac = AlmostConstantLattice::new(b2.clone());
        let j = ac.join(&ac.delta(0, x).unwrap(), &ac.delta(1, y).unwrap());
        assert_eq!(j.tail(), b2.bottom_elem());
        assert_eq!(j.at(0), x);
        assert_eq!(j.at(1), y);
        assert_eq!(j.at(7), b2.bottom_elem());
    }

    #[test]
    fn p_tilde_below_one_omega() {
        let (l, m) = chain3();
        let ac = AlmostConstantLattice::new(l.clone());
        for p in [l.bottom_elem(), m] {
            let pt = ac.p_tilde(0, p).unwrap();
            assert!(ac.leq(&pt, &ac.one_omega()));
            assert_ne!(pt, ac.one_omega());
        }
        assert_eq!(ac.p_tilde(0, l.top_elem()).unwrap(), ac.one_omega());
    }

    #[test]
    fn width_bound() {
        let (l, m) = chain3();
        let ac = AlmostConstantLattice::with_width(l, 2);
        assert!(ac.delta(1, m).is_ok());
        assert_eq!(
            ac.delta(2, m).unwrap_err(),
            Error::CoordinateOutOfRange {
                coordinate: 2,
                width: 2
            }
        );
    }

    #[test]
    fn lifted_cover_sup_is_truncated_top() {
        let (l, m) = chain3();
        let ac = AlmostConstantLattice::new(l.clone());
        let cover = [m, l.top_elem()];
        for w in 1..5 {
            let lifted: Vec<AcSeq> = cover
                .iter()
                .flat_map(|&a| (0..w).map(move |n| (n, a)))
                .map(|(n, a)| ac.delta(n, a).unwrap())
                .collect();
            assert_eq!(ac.sup(&lifted), ac.truncated_top(w));
        }
    }

    #[test]
    fn laws_on_random_sequences() {
        use rand::{Rng, SeedableRng};
        let b2 = generate(&LatticeKind::Powerset(2)).unwrap();
        let ac = AlmostConstantLattice::new(b2.clone());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut gen = || {
            let tail = b2.elem_at(rng.random_range(0..4));
            let ov: Vec<(usize, Elem)> = (0..rng.random_range(0..4))
                .map(|_| (rng.random_range(0..5), b2.elem_at(rng.random_range(0..4))))
                .collect();
            AcSeq::normalized(tail, ov)
        };
        for _ in 0..500 {
            let (a, b, c) = (gen(), gen(), gen());
            assert_eq!(ac.join(&a, &b), ac.join(&b, &a));
            assert_eq!(
                ac.meet(&a, &ac.join(&b, &c)),
                ac.join(&ac.meet(&a, &b), &ac.meet(&a, &c))
            );
            assert_eq!(ac.join(&a, &ac.meet(&a, &b)), a);
            assert!(ac.leq(&ac.meet(&a, &b), &a) && ac.leq(&a, &ac.join(&a, &b)));
        }
    }
}
