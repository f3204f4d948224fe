// SPDX-License-Identifier: Apache-2.0

//! Prime elements, enough primes, the frame law, spatiality and the
//! spectrum of a finite lattice.
//!
//! Every check is an exhaustive scan in carrier order, so reported
//! witnesses are the lexicographically first violating tuple.

use std::collections::BTreeSet;

use super::finite::{Elem, FiniteLattice};

/// Above this carrier size the frame law is checked on binary joins only.
/// For finite lattices the two forms agree (see the tests below).
pub const EXHAUSTIVE_CARRIER_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributivityCheck {
    /// Every subset `A` of the carrier and every `b`.
    AllSubsets,
    /// Every pair `{x, y}` and every `b`.
    BinaryJoins,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributivityWitness {
    pub family: Vec<Elem>,
    pub b: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub is_lattice: bool,
    pub is_bounded: bool,
    pub enough_primes: bool,
    pub is_pre_pawlikowski: bool,
    pub is_distributive_over_sups: bool,
    pub is_pawlikowski: bool,
    pub is_spatial: bool,
    pub primes: Vec<Elem>,
    /// First pair `(a, b)` with `a ≰ b` not separated by any prime.
    pub enough_primes_witness: Option<(Elem, Elem)>,
    pub distributivity_witness: Option<DistributivityWitness>,
    pub distributivity_check: DistributivityCheck,
}

/// `q ≠ 1` such that `a ∧ b ≤ q` implies `a ≤ q` or `b ≤ q`.
pub fn is_prime(l: &FiniteLattice, q: Elem) -> bool {
    if q == l.top_elem() {
        return false;
    }
    l.elems()
        .all(|a| l.le(a, q) || l.elems().all(|b| l.le(b, q) || !l.le(l.meet_of(a, b), q)))
}

/// All prime elements, in carrier order.
pub fn primes(l: &FiniteLattice) -> Vec<Elem> {
    l.elems().filter(|&q| is_prime(l, q)).collect()
}

fn separation_failure(l: &FiniteLattice, primes: &[Elem]) -> Option<(Elem, Elem)> {
    for a in l.elems() {
        for b in l.elems() {
            if !l.le(a, b) && !primes.iter().any(|&q| l.le(b, q) && !l.le(a, q)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// True iff every `a ≰ b` is separated by a prime `q ≥ b` with `a ≰ q`;
/// otherwise the first unseparated pair.
pub fn has_enough_primes(l: &FiniteLattice) -> (bool, Option<(Elem, Elem)>) {
    let w = separation_failure(l, &primes(l));
    (w.is_none(), w)
}

fn visit_subsets(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    // Subsets by cardinality, then lexicographically.
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if f(&idx) {
                return;
            }
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

/// `(sup A) ∧ b = sup{a ∧ b : a ∈ A}` over every subset `A` of the carrier.
pub fn frame_law_all_subsets(l: &FiniteLattice) -> Option<DistributivityWitness> {
    let elems: Vec<Elem> = l.elems().collect();
    let mut witness = None;
    visit_subsets(elems.len(), |idx| {
        let fam: Vec<Elem> = idx.iter().map(|&i| elems[i]).collect();
        let s = l.sup_family(&fam);
        for &b in &elems {
            let lhs = l.meet_of(s, b);
            let rhs = fam
                .iter()
                .fold(l.bottom_elem(), |acc, &a| l.join_of(acc, l.meet_of(a, b)));
            if lhs != rhs {
                witness = Some(DistributivityWitness { family: fam, b });
                return true;
            }
        }
        false
    });
    witness
}

/// The same identity restricted to two-element families.
pub fn frame_law_binary(l: &FiniteLattice) -> Option<DistributivityWitness> {
    let elems: Vec<Elem> = l.elems().collect();
    for (i, &x) in elems.iter().enumerate() {
        for &y in &elems[i + 1..] {
            let s = l.join_of(x, y);
            for &b in &elems {
                if l.meet_of(s, b) != l.join_of(l.meet_of(x, b), l.meet_of(y, b)) {
                    return Some(DistributivityWitness { family: vec![x, y], b });
                }
            }
        }
    }
    None
}

/// Meets distribute over every existing supremum.
pub fn is_frame_distributive(l: &FiniteLattice) -> (bool, Option<DistributivityWitness>) {
    let w = if l.len() <= EXHAUSTIVE_CARRIER_CAP {
        frame_law_all_subsets(l)
    } else {
        frame_law_binary(l)
    };
    (w.is_none(), w)
}

pub(crate) fn compute_report(l: &FiniteLattice) -> ClassificationReport {
    let primes = primes(l);
    let ep = separation_failure(l, &primes);
    let (distributive, dw) = is_frame_distributive(l);
    let enough = ep.is_none();
    ClassificationReport {
        is_lattice: true,
        is_bounded: true,
        enough_primes: enough,
        is_pre_pawlikowski: enough,
        is_distributive_over_sups: distributive,
        is_pawlikowski: enough && distributive,
        // Finite bounded lattices are complete.
        is_spatial: enough,
        primes,
        enough_primes_witness: ep,
        distributivity_witness: dw,
        distributivity_check: if l.len() <= EXHAUSTIVE_CARRIER_CAP {
            DistributivityCheck::AllSubsets
        } else {
            DistributivityCheck::BinaryJoins
        },
    }
}

pub fn classify(l: &FiniteLattice) -> ClassificationReport {
    l.classification().clone()
}

/// The prime spectrum: points are primes, `â = {q : a ≰ q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumSpace {
    pub points: Vec<Elem>,
    /// One open per carrier element, as indices into `points`.
    pub opens: Vec<(Elem, BTreeSet<usize>)>,
}

impl SpectrumSpace {
    pub fn open_of(&self, a: Elem) -> &BTreeSet<usize> {
        &self.opens[a.index()].1
    }

    /// Distinct opens; the topology on the point set.
    pub fn topology(&self) -> BTreeSet<BTreeSet<usize>> {
        self.opens.iter().map(|(_, o)| o.clone()).collect()
    }
}

/// Builds the spectrum and reports whether `a ↦ â` is an order isomorphism
/// onto its image.
pub fn spectrum(l: &FiniteLattice) -> (SpectrumSpace, bool) {
    let points = l.classification().primes.clone();
    let opens: Vec<(Elem, BTreeSet<usize>)> = l
        .elems()
        .map(|a| {
            let open = points
                .iter()
                .enumerate()
                .filter(|(_, &q)| !l.le(a, q))
                .map(|(i, _)| i)
                .collect();
            (a, open)
        })
        .collect();
    let faithful = l.elems().all(|a| {
        l.elems().all(|b| {
            let sub = opens[a.index()].1.is_subset(&opens[b.index()].1);
            sub == l.le(a, b)
        })
    });
    (SpectrumSpace { points, opens }, faithful)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::generate::{generate, LatticeKind};

    fn labels(l: &FiniteLattice, es: &[Elem]) -> Vec<String> {
        es.iter().map(|&e| l.label_of(e).to_string()).collect()
    }

    /// Definitional brute force, independent of the table-driven scan.
    fn oracle_primes(l: &FiniteLattice) -> Vec<Elem> {
        let mut out = Vec::new();
        'q: for q in l.elems() {
            if q == l.top_elem() {
                continue;
            }
            for a in l.elems() {
                for b in l.elems() {
                    let m = l.meet_of(a, b);
                    if l.le(m, q) && !(l.le(a, q) || l.le(b, q)) {
                        continue 'q;
                    }
                }
            }
            out.push(q);
        }
        out
    }

    #[test]
    fn chain_primes_are_all_non_top() {
        let l = generate(&LatticeKind::Chain(3)).unwrap();
        assert_eq!(labels(&l, &primes(&l)), vec!["0", "c1"]);
    }

    #[test]
    fn m3_has_no_primes() {
        let l = generate(&LatticeKind::M3).unwrap();
        assert!(primes(&l).is_empty());
        let (ok, w) = has_enough_primes(&l);
        assert!(!ok);
        let (a, b) = w.unwrap();
        assert_eq!((l.label_of(a), l.label_of(b)), ("a", "0"));
    }

    #[test]
    fn powerset_primes_are_complements_of_points() {
        let l = generate(&LatticeKind::Powerset(3)).unwrap();
        assert_eq!(labels(&l, &primes(&l)), vec!["{x,y}", "{x,z}", "{y,z}"]);
        assert!(has_enough_primes(&l).0);
    }

    #[test]
    fn two_chain_has_enough_primes() {
        let l = generate(&LatticeKind::Chain(2)).unwrap();
        assert_eq!(has_enough_primes(&l), (true, None));
    }

    #[test]
    fn m3_frame_witness_is_first_in_carrier_order() {
        let l = generate(&LatticeKind::M3).unwrap();
        let (ok, w) = is_frame_distributive(&l);
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!(labels(&l, &w.family), vec!["a", "b"]);
        assert_eq!(l.label_of(w.b), "c");
    }

    #[test]
    fn chains_and_powersets_are_frames() {
        for k in 1..=5 {
            assert!(is_frame_distributive(&generate(&LatticeKind::Chain(k)).unwrap()).0);
        }
        for k in 0..=3 {
            assert!(is_frame_distributive(&generate(&LatticeKind::Powerset(k)).unwrap()).0);
        }
    }

    #[test]
    fn binary_and_exhaustive_frame_checks_agree() {
        let mut lats = vec![
            generate(&LatticeKind::M3).unwrap(),
            generate(&LatticeKind::N5).unwrap(),
            generate(&LatticeKind::Sierpinski).unwrap(),
        ];
        for seed in 0..20 {
            lats.push(generate(&LatticeKind::RandomTopology { points: 3, seed }).unwrap());
        }
        lats.push(
            crate::lattice::product(&[lats[0].clone(), generate(&LatticeKind::Chain(2)).unwrap()])
                .unwrap()
                .lattice()
                .clone(),
        );
        for l in &lats {
            if l.len() <= EXHAUSTIVE_CARRIER_CAP {
                assert_eq!(
                    frame_law_all_subsets(l).is_none(),
                    frame_law_binary(l).is_none(),
                    "{}",
                    l.name()
                );
            }
        }
    }

    #[test]
    fn primes_agree_with_definition() {
        let mut lats = vec![generate(&LatticeKind::M3).unwrap(), generate(&LatticeKind::N5).unwrap()];
        for seed in 0..10 {
            lats.push(generate(&LatticeKind::RandomTopology { points: 4, seed }).unwrap());
        }
        for l in &lats {
            assert_eq!(primes(l), oracle_primes(l));
        }
    }

    #[test]
    fn classification_invariants() {
        let m3 = classify(&generate(&LatticeKind::M3).unwrap());
        assert!(m3.is_bounded && !m3.is_pre_pawlikowski && !m3.is_distributive_over_sups);
        assert!(!m3.is_spatial);
        let b2 = classify(&generate(&LatticeKind::Powerset(2)).unwrap());
        assert!(b2.is_pawlikowski && b2.is_spatial);
        let c4 = classify(&generate(&LatticeKind::Chain(4)).unwrap());
        assert!(c4.is_pawlikowski && c4.is_spatial);
        let n5 = classify(&generate(&LatticeKind::N5).unwrap());
        assert!(!n5.enough_primes && !n5.is_distributive_over_sups);
    }

    #[test]
    fn spectrum_examples() {
        let b2 = generate(&LatticeKind::Powerset(2)).unwrap();
        let (sp, faithful) = spectrum(&b2);
        assert!(faithful);
        assert_eq!(sp.points.len(), 2);
        assert_eq!(sp.topology().len(), 4); // discrete on two points
        let x = b2.elem("{x}").unwrap();
        let hat: Vec<&str> = sp.open_of(x).iter().map(|&i| b2.label_of(sp.points[i])).collect();
        assert_eq!(hat, vec!["{y}"]);

        let m3 = generate(&LatticeKind::M3).unwrap();
        let (sp, faithful) = spectrum(&m3);
        assert!(sp.points.is_empty() && !faithful);

        let c2 = generate(&LatticeKind::Chain(2)).unwrap();
        let (sp, faithful) = spectrum(&c2);
        assert!(faithful);
        assert_eq!(labels(&c2, &sp.points), vec!["0"]);
    }

    #[test]
    fn subset_visitor_order() {
        let mut seen = Vec::new();
        visit_subsets(3, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
        let mut count = 0;
        visit_subsets(0, |_| {
            count += 1;
            false
        });
        assert_eq!(count, 1);
    }
}
