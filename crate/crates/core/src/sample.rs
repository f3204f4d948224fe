// SPDX-License-Identifier: Apache-2.0

//! Seeded instance generators for tests and benchmarks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::game::{normalize_to_nice, NiceStrategyTree, SeededRandomStrategy};
use crate::lattice::{generate, Elem, FiniteLattice, LatticeKind};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A cover of `p` with between 1 and `max_items` items, all below `p`.
/// The last item is chosen to complete the supremum, avoiding `p` itself
/// when some smaller element does.
pub fn random_cover(lat: &FiniteLattice, p: Elem, rng: &mut ChaCha8Rng, max_items: usize) -> Vec<Elem> {
    let below: Vec<Elem> = lat.elems().filter(|&e| lat.le(e, p)).collect();
    let n = rng.random_range(1..=max_items.max(1));
    let mut items: Vec<Elem> = (0..n).map(|_| below[rng.random_range(0..below.len())]).collect();
    let rest = lat.sup_family(&items[..n - 1]);
    if lat.join_of(rest, items[n - 1]) != p {
        let completing: Vec<Elem> = below
            .iter()
            .copied()
            .filter(|&c| c != p && lat.join_of(rest, c) == p)
            .collect();
        items[n - 1] = if completing.is_empty() {
            p
        } else {
            completing[rng.random_range(0..completing.len())]
        };
    }
    items
}

pub fn random_pool(lat: &FiniteLattice, rng: &mut ChaCha8Rng, size: usize, max_items: usize) -> Vec<Vec<Elem>> {
    (0..size)
        .map(|_| random_cover(lat, lat.top_elem(), rng, max_items))
        .collect()
}

/// A seeded random strategy over a pool of `pool_size` covers of the top.
pub fn random_strategy(
    lat: &FiniteLattice,
    seed: u64,
    pool_size: usize,
    max_items: usize,
) -> SeededRandomStrategy<Elem> {
    let mut r = rng(seed);
    SeededRandomStrategy {
        seed,
        pool: random_pool(lat, &mut r, pool_size, max_items),
    }
}

pub fn random_nice_tree(
    lat: &FiniteLattice,
    strategy: &SeededRandomStrategy<Elem>,
    depth: usize,
    branching: usize,
) -> Result<NiceStrategyTree<Elem>> {
    normalize_to_nice(lat, strategy, &lat.top_elem(), depth, branching)
}

fn random_kind(rng: &mut ChaCha8Rng, max_points: usize) -> LatticeKind {
    match rng.random_range(0..6) {
        0 => LatticeKind::Chain(rng.random_range(2..=6)),
        1 => LatticeKind::Powerset(rng.random_range(1..=3.min(max_points))),
        2 => LatticeKind::Sierpinski,
        3 => LatticeKind::N5,
        _ => LatticeKind::RandomTopology {
            points: rng.random_range(2..=max_points),
            seed: rng.random(),
        },
    }
}

/// A lattice with enough primes and at most `max_size` elements.
pub fn random_pre_pawlikowski(rng: &mut ChaCha8Rng, max_size: usize) -> FiniteLattice {
    loop {
        let l = generate(&random_kind(rng, 4)).expect("generator kinds are valid");
        if l.len() <= max_size && l.len() >= 2 && l.classification().is_pre_pawlikowski {
            return l;
        }
    }
}

/// The open-set lattice of a random topology on 2 to `max_points` points.
pub fn random_topology(rng: &mut ChaCha8Rng, max_points: usize) -> FiniteLattice {
    generate(&LatticeKind::RandomTopology {
        points: rng.random_range(2..=max_points),
        seed: rng.random(),
    })
    .expect("point count within bound")
}
