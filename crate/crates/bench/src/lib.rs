// SPDX-License-Identifier: Apache-2.0

//! Seeded fixtures for the benchmarks.

use latgame_core::covers::Cover;
use latgame_core::game::{normalize_to_nice, NiceStrategyTree};
use latgame_core::lattice::{generate, LatticeKind};
use latgame_core::sample::{random_cover, random_pre_pawlikowski, random_strategy, rng};
use latgame_core::{Elem, FiniteLattice};

pub fn powerset(k: usize) -> FiniteLattice {
    generate(&LatticeKind::Powerset(k)).expect("small powerset")
}

/// `count` random covers of the top with at most `items` items each.
pub fn cover_list(lat: &FiniteLattice, seed: u64, count: usize, items: usize) -> Vec<Cover<Elem>> {
    let mut r = rng(seed);
    let top = lat.top_elem();
    (0..count)
        .map(|_| Cover::new(lat, random_cover(lat, top, &mut r, items), top).expect("sampled covers cover"))
        .collect()
}

/// A seeded nice tree over a lattice with enough primes.
pub fn nice_tree(seed: u64, depth: usize, branching: usize) -> (FiniteLattice, NiceStrategyTree<Elem>) {
    let l = random_pre_pawlikowski(&mut rng(seed), 12);
    let s = random_strategy(&l, seed, 3, 3);
    let t = normalize_to_nice(&l, &s, &l.top_elem(), depth, branching).expect("sampled strategies cover");
    (l, t)
}

/// The atoms of `powerset(k)` as a constant strategy's cover.
pub fn atoms(lat: &FiniteLattice) -> Vec<Elem> {
    lat.elems().filter(|&e| lat.covers_pair(lat.bottom_elem(), e)).collect()
}
