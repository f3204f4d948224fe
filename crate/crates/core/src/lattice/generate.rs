// SPDX-License-Identifier: Apache-2.0

//! Named lattices and seeded random finite topologies.

use std::collections::BTreeSet;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::finite::FiniteLattice;
use crate::error::{Error, Result};

/// Largest point set accepted by the powerset and topology generators.
pub const POINT_BOUND: usize = 7;

const POINT_NAMES: [&str; POINT_BOUND] = ["x", "y", "z", "w", "v", "u", "t"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeKind {
    /// `k` elements `0 < c1 < … < 1`.
    Chain(usize),
    /// Subsets of `{x, y, z, …}` with `k` points.
    Powerset(usize),
    M3,
    N5,
    Sierpinski,
    /// Up-sets of a seeded random preorder on `points` points.
    RandomTopology {
        points: usize,
        seed: u64,
    },
}

impl LatticeKind {
    pub fn name(&self) -> String {
        match self {
            LatticeKind::Chain(k) => format!("chain:{k}"),
            LatticeKind::Powerset(k) => format!("powerset:{k}"),
            LatticeKind::M3 => "m3".into(),
            LatticeKind::N5 => "n5".into(),
            LatticeKind::Sierpinski => "sierpinski".into(),
            LatticeKind::RandomTopology { points, seed } => format!("topology:{points}:{seed}"),
        }
    }
}

impl FromStr for LatticeKind {
    type Err = Error;

    /// Accepts `chain:K`, `powerset:K`, `bK` (powerset), `m3`, `n5`,
    /// `sierpinski` and `topology:POINTS:SEED`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let parts: Vec<&str> = lower.split(':').collect();
        let num = |p: &str| {
            p.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad number `{p}` in lattice name `{s}`")))
        };
        Ok(match parts.as_slice() {
            ["m3"] => LatticeKind::M3,
            ["n5"] => LatticeKind::N5,
            ["sierpinski"] => LatticeKind::Sierpinski,
            ["chain", k] => LatticeKind::Chain(num(k)? as usize),
            ["powerset", k] => LatticeKind::Powerset(num(k)? as usize),
            ["topology", p, seed] => LatticeKind::RandomTopology {
                points: num(p)? as usize,
                seed: num(seed)?,
            },
            [b] if b.starts_with('b') && b.len() > 1 => LatticeKind::Powerset(num(&b[1..])? as usize),
            _ => return Err(Error::Parse(format!("unknown lattice name `{s}`"))),
        })
    }
}

/// The finite lattices offered for interactive play.
pub fn catalog() -> Vec<LatticeKind> {
    vec![
        LatticeKind::Powerset(2),
        LatticeKind::Powerset(3),
        LatticeKind::Chain(2),
        LatticeKind::Chain(3),
        LatticeKind::Chain(4),
        LatticeKind::M3,
        LatticeKind::N5,
        LatticeKind::Sierpinski,
    ]
}

pub fn generate(kind: &LatticeKind) -> Result<FiniteLattice> {
    let name = kind.name();
    match *kind {
        LatticeKind::Chain(k) => chain(&name, k),
        LatticeKind::Powerset(k) => {
            check_points(k)?;
            powerset(&name, &POINT_NAMES[..k])
        }
        LatticeKind::M3 => FiniteLattice::build(
            name,
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        ),
        LatticeKind::N5 => FiniteLattice::build(
            name,
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        ),
        LatticeKind::Sierpinski => topology(
            name,
            &["0".to_string(), "1".to_string()],
            &[BTreeSet::new(), BTreeSet::from([1]), BTreeSet::from([0, 1])],
        ),
        LatticeKind::RandomTopology { points, seed } => {
            check_points(points)?;
            random_topology(&name, points, seed)
        }
    }
}

fn check_points(points: usize) -> Result<()> {
    if points > POINT_BOUND {
        return Err(Error::SizeBound {
            what: "points",
            value: points,
            bound: POINT_BOUND,
        });
    }
    Ok(())
}

/// The chain `0 < c1 < … < 1` with `k` elements.
pub fn chain(name: &str, k: usize) -> Result<FiniteLattice> {
    if k == 0 {
        return Err(Error::EmptyCarrier);
    }
    let labels: Vec<String> = (0..k)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == k - 1 => "1".to_string(),
            i => format!("c{i}"),
        })
        .collect();
    FiniteLattice::from_relation(name, labels, |a, b| a <= b)
}

fn set_label(points: &[String], set: &BTreeSet<usize>) -> String {
    let names: Vec<&str> = set.iter().map(|&i| points[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

/// All subsets of `points`, labelled `{x,y}`.
pub fn powerset(name: &str, points: &[&str]) -> Result<FiniteLattice> {
    let pts: Vec<String> = points.iter().map(|s| s.to_string()).collect();
    let n = pts.len();
    let opens: Vec<BTreeSet<usize>> = (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    topology(name.to_string(), &pts, &opens)
}

/// The lattice of opens of a finite topology, ordered by inclusion.
///
/// `opens` must contain the empty set and the whole space and be closed
/// under binary unions and intersections.
pub fn topology(name: impl Into<String>, points: &[String], opens: &[BTreeSet<usize>]) -> Result<FiniteLattice> {
    let n = points.len();
    let family: BTreeSet<&BTreeSet<usize>> = opens.iter().collect();
    let whole: BTreeSet<usize> = (0..n).collect();
    for o in opens {
        if let Some(&bad) = o.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidParameter(format!("open mentions point index {bad}")));
        }
    }
    if !family.contains(&BTreeSet::new()) {
        return Err(Error::InvalidParameter("opens must contain the empty set".into()));
    }
    if !family.contains(&whole) {
        return Err(Error::InvalidParameter("opens must contain the whole space".into()));
    }
    for a in opens {
        for b in opens {
            let u: BTreeSet<usize> = a.union(b).copied().collect();
            if !family.contains(&u) {
                return Err(Error::InvalidParameter(format!(
                    "opens not closed under union: {} ∪ {}",
                    set_label(points, a),
                    set_label(points, b)
                )));
            }
            let i: BTreeSet<usize> = a.intersection(b).copied().collect();
            if !family.contains(&i) {
                return Err(Error::InvalidParameter(format!(
                    "opens not closed under intersection: {} ∩ {}",
                    set_label(points, a),
                    set_label(points, b)
                )));
            }
        }
    }
    let labels = opens.iter().map(|o| set_label(points, o)).collect();
    FiniteLattice::from_relation(name, labels, |a, b| opens[a].is_subset(&opens[b]))
}

/// Opens are the up-closed sets of a seeded random preorder. Every finite
/// topology arises this way (as the up-sets of its specialization order).
fn random_topology(name: &str, points: usize, seed: u64) -> Result<FiniteLattice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rel = vec![vec![false; points]; points];
    for (i, row) in rel.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = i == j || rng.random_bool(0.3);
        }
    }
    for k in 0..points {
        for i in 0..points {
            for j in 0..points {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    let opens: Vec<BTreeSet<usize>> = (0..1usize << points)
        .map(|mask| (0..points).filter(|i| mask >> i & 1 == 1).collect::<BTreeSet<_>>())
        .filter(|set| set.iter().all(|&x| (0..points).all(|y| !rel[x][y] || set.contains(&y))))
        .collect();
    let pts: Vec<String> = (0..points).map(|i| format!("p{i}")).collect();
    topology(name.to_string(), &pts, &opens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::classify::classify;

    #[test]
    fn named_catalog_entries() {
        let m3 = generate(&LatticeKind::M3).unwrap();
        assert_eq!(m3.carrier_labels(), &["0", "a", "b", "c", "1"]);
        let c3 = generate(&LatticeKind::Chain(3)).unwrap();
        assert_eq!(c3.carrier_labels(), &["0", "c1", "1"]);
        let b2 = generate(&LatticeKind::Powerset(2)).unwrap();
        assert_eq!(b2.carrier_labels(), &["{}", "{x}", "{y}", "{x,y}"]);
        assert_eq!(generate(&LatticeKind::Sierpinski).unwrap().len(), 3);
    }

    #[test]
    fn random_topology_is_deterministic() {
        let a = generate(&LatticeKind::RandomTopology { points: 3, seed: 42 }).unwrap();
        let b = generate(&LatticeKind::RandomTopology { points: 3, seed: 42 }).unwrap();
        assert_eq!(a.carrier_labels(), b.carrier_labels());
        for x in a.elems() {
            for y in a.elems() {
                assert_eq!(a.le(x, y), b.le(b.elem_at(x.index()), b.elem_at(y.index())));
            }
        }
    }

    #[test]
    fn random_topologies_are_spatial_frames() {
        for seed in 0..25 {
            let l = generate(&LatticeKind::RandomTopology { points: 4, seed }).unwrap();
            let r = classify(&l);
            assert!(r.is_pawlikowski && r.is_spatial, "seed {seed}");
        }
    }

    #[test]
    fn point_bound_enforced() {
        let err = generate(&LatticeKind::RandomTopology { points: 8, seed: 0 }).unwrap_err();
        assert_eq!(err.name(), "SizeBound");
    }

    #[test]
    fn names_round_trip() {
        for k in catalog() {
            assert_eq!(k.name().parse::<LatticeKind>().unwrap(), k);
        }
        assert_eq!("b2".parse::<LatticeKind>().unwrap(), LatticeKind::Powerset(2));
        assert!("q7".parse::<LatticeKind>().is_err());
    }

    #[test]
    fn topology_closure_is_validated() {
        let pts = vec!["a".to_string(), "b".to_string()];
        let discrete = topology(
            "discrete",
            &pts,
            &[
                BTreeSet::new(),
                BTreeSet::from([0]),
                BTreeSet::from([1]),
                BTreeSet::from([0, 1]),
            ],
        );
        assert!(discrete.is_ok());
        let err = topology("bad", &pts, &[BTreeSet::new(), BTreeSet::from([0])]).unwrap_err();
        assert_eq!(err.name(), "InvalidParameter");
    }
}
