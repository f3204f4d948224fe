// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one line per criterion, checked at its stated
//! tolerance and time budget. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use latgame_core::counterplay::{
    history_wedge_strategy, menger_counterplay, rothberger_counterplay, rothberger_pick, severe_defeat_play,
    union_family, verify_tail_set, CutBound, GateMode, RothbergerConfig, HISTORY_CAP,
};
use latgame_core::covers::{f_bounded_select, s1_select, sfin_select, Cover};
use latgame_core::game::{adjudicate, game_value, normalize_to_nice, ConstantStrategy, GameKind, GameValue};
use latgame_core::lattice::{
    generate, has_enough_primes, primes, product, spectrum, topology, Elem, FiniteCofinite, FiniteLattice, Hypotheses,
    LatticeKind, SymbolicSet,
};
use latgame_core::sample::{random_cover, random_pre_pawlikowski, random_strategy, random_topology, rng};
use rand::Rng;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lat(kind: LatticeKind) -> FiniteLattice {
    generate(&kind).expect("valid kind")
}

// Classification ground truths.

/// Every topology on `n` points, by enumerating families of subsets that
/// contain the empty set and the whole set and are closed under binary
/// union and intersection.
fn all_topologies(n: usize) -> Vec<Vec<BTreeSet<usize>>> {
    let subsets = 1usize << n;
    let full = subsets - 1;
    let middle: Vec<usize> = (1..full).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << middle.len()) {
        let mut fam = vec![0usize, full];
        fam.extend(
            middle
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &s)| s),
        );
        if n == 0 {
            fam.dedup();
        }
        let set: BTreeSet<usize> = fam.iter().copied().collect();
        let closed = fam
            .iter()
            .all(|&a| fam.iter().all(|&b| set.contains(&(a | b)) && set.contains(&(a & b))));
        if closed {
            out.push(
                set.iter()
                    .map(|&s| (0..n).filter(|i| s >> i & 1 == 1).collect())
                    .collect(),
            );
        }
    }
    out
}

fn classification() -> Verdict {
    for n in 2..=4 {
        let l = lat(LatticeKind::Powerset(n));
        let got: BTreeSet<String> = primes(&l).into_iter().map(|q| l.label_of(q).to_string()).collect();
        let names = ["x", "y", "z", "w"];
        let want: BTreeSet<String> = (0..n)
            .map(|skip| {
                let rest: Vec<&str> = (0..n).filter(|&i| i != skip).map(|i| names[i]).collect();
                format!("{{{}}}", rest.join(","))
            })
            .collect();
        ensure(got == want, || {
            format!("powerset({n}) primes {got:?}, expected {want:?}")
        })?;
    }
    let m3 = lat(LatticeKind::M3);
    ensure(primes(&m3).is_empty(), || "M3 has primes".into())?;
    ensure(!m3.classification().is_pre_pawlikowski, || {
        "M3 classified pre-Pawlikowski".into()
    })?;
    for k in 1..=10 {
        let c = lat(LatticeKind::Chain(k));
        let r = c.classification();
        ensure(r.is_pawlikowski && r.is_spatial, || {
            format!("chain of {k} not Pawlikowski and spatial")
        })?;
    }
    let mut count = 0;
    for n in 1..=4 {
        let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        for opens in all_topologies(n) {
            let l = topology(format!("t{count}"), &points, &opens).map_err(|e| e.to_string())?;
            let r = l.classification();
            ensure(r.is_pawlikowski && r.is_spatial, || {
                format!("topology {opens:?} misclassified")
            })?;
            count += 1;
        }
    }
    ensure(count == 1 + 4 + 29 + 355, || {
        format!("enumerated {count} topologies on 1..4 points")
    })?;
    Ok(format!(
        "powersets 2..4, M3, chains 1..10, all {count} topologies on 1..4 points"
    ))
}

fn spectrum_faithfulness() -> Verdict {
    let mut r = rng(2024);
    for i in 0..100 {
        let l = lat(LatticeKind::RandomTopology {
            points: r.random_range(1..=6),
            seed: r.random(),
        });
        let (_, faithful) = spectrum(&l);
        let (enough, _) = has_enough_primes(&l);
        ensure(faithful && enough, || {
            format!(
                "topology #{i} ({}): faithful {faithful}, enough primes {enough}",
                l.name()
            )
        })?;
    }
    let m3 = lat(LatticeKind::M3);
    let n5 = lat(LatticeKind::N5);
    let c2 = lat(LatticeKind::Chain(2));
    let b2 = lat(LatticeKind::Powerset(2));
    let mut carriers = vec![m3.clone(), n5.clone()];
    for (a, b) in [(&m3, &c2), (&n5, &c2), (&n5, &b2), (&m3, &n5), (&n5, &n5)] {
        carriers.push(
            product(&[a.clone(), b.clone()])
                .map_err(|e| e.to_string())?
                .lattice()
                .clone(),
        );
    }
    let mut failing = 0;
    for l in &carriers {
        let (_, faithful) = spectrum(l);
        let (enough, _) = has_enough_primes(l);
        failing += usize::from(!enough);
        ensure(faithful == enough, || {
            format!("{}: faithful {faithful}, enough primes {enough}", l.name())
        })?;
    }
    Ok(format!(
        "100 topologies faithful; {} non-distributive carriers ({failing} without enough primes) agree",
        carriers.len()
    ))
}

// Selector oracles: plain re-enumeration, in the documented orders.

fn sup(l: &FiniteLattice, items: impl IntoIterator<Item = Elem>) -> Elem {
    items.into_iter().fold(l.bottom_elem(), |a, b| l.join_of(a, b))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn brute_s1(l: &FiniteLattice, covers: &[Vec<Elem>], p: Elem) -> Option<Vec<usize>> {
    let mut idx = vec![0usize; covers.len()];
    loop {
        if sup(l, idx.iter().enumerate().map(|(n, &i)| covers[n][i])) == p {
            return Some(idx);
        }
        let k = (0..covers.len()).rev().find(|&k| idx[k] + 1 < covers[k].len())?;
        idx[k] += 1;
        for j in idx.iter_mut().skip(k + 1) {
            *j = 0;
        }
    }
}

fn brute_sfin(l: &FiniteLattice, covers: &[Vec<Elem>], p: Elem) -> Option<Vec<Vec<usize>>> {
    let flat: Vec<(usize, usize)> = covers
        .iter()
        .enumerate()
        .flat_map(|(n, c)| (0..c.len()).map(move |i| (n, i)))
        .collect();
    for k in 0..=flat.len() {
        for combo in combinations(flat.len(), k) {
            if sup(l, combo.iter().map(|&c| covers[flat[c].0][flat[c].1])) == p {
                let mut out = vec![Vec::new(); covers.len()];
                for &c in &combo {
                    out[flat[c].0].push(flat[c].1);
                }
                return Some(out);
            }
        }
    }
    None
}

fn brute_fbounded(l: &FiniteLattice, covers: &[Vec<Elem>], f: &[usize], p: Elem) -> Option<Vec<Vec<usize>>> {
    let options: Vec<Vec<Vec<usize>>> = covers
        .iter()
        .zip(f)
        .map(|(c, &k)| (0..=k.min(c.len())).flat_map(|s| combinations(c.len(), s)).collect())
        .collect();
    let mut idx = vec![0usize; covers.len()];
    loop {
        let items = idx
            .iter()
            .enumerate()
            .flat_map(|(n, &o)| options[n][o].iter().map(move |&i| covers[n][i]));
        if sup(l, items) == p {
            return Some(idx.iter().enumerate().map(|(n, &o)| options[n][o].clone()).collect());
        }
        let k = (0..covers.len()).rev().find(|&k| idx[k] + 1 < options[k].len())?;
        idx[k] += 1;
        for j in idx.iter_mut().skip(k + 1) {
            *j = 0;
        }
    }
}

fn check_selectors(l: &FiniteLattice, covers: &[Vec<Elem>], p: Elem, fs: &[Vec<usize>]) -> Result<(), String> {
    let cs: Vec<Cover<Elem>> = covers
        .iter()
        .map(|c| Cover::new(l, c.clone(), p).expect("generated covers cover p"))
        .collect();
    let show = || {
        format!(
            "{} target {} covers {:?}",
            l.name(),
            l.label_of(p),
            covers.iter().map(|c| l.labels_of(c)).collect::<Vec<_>>()
        )
    };
    let s1 = s1_select(l, &cs, &p).map_err(|e| e.to_string())?;
    ensure(s1 == brute_s1(l, covers, p), || format!("s1 mismatch on {}", show()))?;
    let sf = sfin_select(l, &cs, &p).map_err(|e| e.to_string())?;
    ensure(sf == brute_sfin(l, covers, p), || {
        format!("sfin mismatch on {}", show())
    })?;
    for f in fs {
        let fb = f_bounded_select(l, &cs, f, &p).map_err(|e| e.to_string())?;
        ensure(fb == brute_fbounded(l, covers, f, p), || {
            format!("fbounded {f:?} mismatch on {}", show())
        })?;
    }
    Ok(())
}

trait LabelsOf {
    fn labels_of(&self, items: &[Elem]) -> Vec<String>;
}

impl LabelsOf for FiniteLattice {
    fn labels_of(&self, items: &[Elem]) -> Vec<String> {
        items.iter().map(|&e| self.label_of(e).to_string()).collect()
    }
}

/// Every list of items of length 1..=max over the elements below `p`
/// whose supremum is `p`.
fn all_covers(l: &FiniteLattice, p: Elem, max: usize) -> Vec<Vec<Elem>> {
    let below: Vec<Elem> = l.elems().filter(|&e| l.le(e, p)).collect();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for c in &frontier {
            for &e in &below {
                let mut d = c.clone();
                d.push(e);
                if sup(l, d.iter().copied()) == p {
                    out.push(d.clone());
                }
                next.push(d);
            }
        }
        frontier = next;
    }
    out
}

fn sweep_lists(
    l: &FiniteLattice,
    p: Elem,
    pool: &[Vec<Elem>],
    max_covers: usize,
    mut visit: impl FnMut(&[Vec<Elem>]) -> Result<(), String>,
) -> Result<usize, String> {
    let mut count = 0;
    let mut idx: Vec<usize> = Vec::new();
    for m in 1..=max_covers {
        idx.clear();
        idx.resize(m, 0);
        loop {
            let covers: Vec<Vec<Elem>> = idx.iter().map(|&i| pool[i].clone()).collect();
            visit(&covers)?;
            count += 1;
            let Some(k) = (0..m).rev().find(|&k| idx[k] + 1 < pool.len()) else {
                break;
            };
            idx[k] += 1;
            for j in idx.iter_mut().skip(k + 1) {
                *j = 0;
            }
        }
    }
    let _ = (l, p);
    Ok(count)
}

fn selectors() -> Verdict {
    let catalog: Vec<FiniteLattice> = latgame_core::lattice::catalog()
        .into_iter()
        .map(lat)
        .filter(|l| l.len() <= 8)
        .collect();
    let patterns = |m: usize| vec![vec![1; m], (0..m).map(|n| n % 3).collect::<Vec<_>>()];

    // Exhaustive: the full range on the two-element chain.
    let c2 = lat(LatticeKind::Chain(2));
    let mut exhaustive = 0;
    for p in c2.elems() {
        let pool = all_covers(&c2, p, 4);
        exhaustive += sweep_lists(&c2, p, &pool, 4, |cs| check_selectors(&c2, cs, p, &patterns(cs.len())))?;
    }
    // Exhaustive on every catalog lattice and target: up to 2 covers of up
    // to 3 items, and up to 3 covers of up to 2 items.
    let mut small = 0;
    for l in &catalog {
        for p in l.elems() {
            for (max_covers, max_items) in [(2, 3), (3, 2)] {
                let pool = all_covers(l, p, max_items);
                small += sweep_lists(l, p, &pool, max_covers, |cs| {
                    let fs = vec![vec![0; cs.len()], vec![1; cs.len()], vec![2; cs.len()]];
                    check_selectors(l, cs, p, &fs)
                })?;
            }
        }
    }
    // Seeded: the full 4 × 4 range.
    let mut r = rng(77);
    let seeded = 200_000;
    for _ in 0..seeded {
        let l = &catalog[r.random_range(0..catalog.len())];
        let p = l.elem_at(r.random_range(0..l.len()));
        let m = r.random_range(1..=4);
        let covers: Vec<Vec<Elem>> = (0..m).map(|_| random_cover(l, p, &mut r, 4)).collect();
        let f: Vec<usize> = (0..m).map(|_| r.random_range(0..=4)).collect();
        check_selectors(l, &covers, p, &[f])?;
    }
    Ok(format!(
        "exhaustive chain:2 {exhaustive} instances, exhaustive 2x3 and 3x2 on {} catalog lattices {small} instances, seeded 4x4 {seeded} instances",
        catalog.len()
    ))
}

// Counter-play suites.

struct Instance {
    lattice: FiniteLattice,
    pool: Vec<Vec<Elem>>,
    tree: latgame_core::game::NiceStrategyTree<Elem>,
}

fn nice_instances(seed: u64, count: usize, max_size: usize) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let l = random_pre_pawlikowski(&mut r, max_size);
            let s = random_strategy(&l, r.random(), r.random_range(1..=3), 3);
            let tree = normalize_to_nice(&l, &s, &l.top_elem(), 4, 3).expect("random strategies are total");
            Instance {
                lattice: l,
                pool: s.pool,
                tree,
            }
        })
        .collect()
}

fn tail_sets() -> Verdict {
    let instances = nice_instances(12, 200, 12);
    for (i, inst) in instances.iter().enumerate() {
        for n in 0..4 {
            let fam = union_family(&inst.tree, n).map_err(|e| e.to_string())?;
            let ok = verify_tail_set(&inst.lattice, &fam, &inst.lattice.top_elem(), CutBound::exact(&fam))
                .map_err(|e| e.to_string())?;
            ensure(ok, || {
                format!("instance #{i} ({}) level {n} is not a tail set", inst.lattice.name())
            })?;
        }
    }
    Ok("200 nice trees (depth 4, branching 3), 800 levels".into())
}

fn menger() -> Verdict {
    let instances = nice_instances(12, 200, 12);
    let mut confirmed = 0;
    for (i, inst) in instances.iter().enumerate() {
        let l = &inst.lattice;
        let top = l.top_elem();
        let rep = menger_counterplay(l, &inst.tree, GateMode::Strict).map_err(|e| format!("#{i}: {e}"))?;
        ensure(rep.transcript.won(), || {
            format!("instance #{i} ({}) undecided", l.name())
        })?;
        let re = adjudicate(l, &rep.transcript, &top).map_err(|e| format!("#{i}: {e}"))?;
        ensure(re == rep.transcript.outcome, || {
            format!("instance #{i} adjudication disagrees")
        })?;
        // The play must follow the tree: inning n answers the node reached.
        for (n, inning) in rep.transcript.innings.iter().enumerate() {
            let want = inst.tree.cover(&rep.nodes[n]).map_err(|e| e.to_string())?;
            ensure(inning.offered == want.items(), || {
                format!("instance #{i} inning {n} off the tree")
            })?;
        }
        if inst.pool.len() <= 3 {
            let pool: Vec<Cover<Elem>> = inst.pool.iter().map(|c| Cover::of_sup(l, c.clone())).collect();
            let v = game_value(l, GameKind::Gfin, &top, 3, &pool).map_err(|e| e.to_string())?;
            ensure(v == GameValue::CanForce, || format!("instance #{i}: game value {v:?}"))?;
            confirmed += 1;
        }
    }
    Ok(format!("200/200 won; game value confirmed on {confirmed} pools"))
}

fn severe() -> Verdict {
    let instances = nice_instances(22, 100, 12);
    for (i, inst) in instances.iter().enumerate() {
        let l = &inst.lattice;
        let (_, rep) = severe_defeat_play(l, &inst.tree, 4, 4, 2).map_err(|e| format!("#{i} ({}): {e}", l.name()))?;
        ensure(rep.projection_ok, || format!("instance #{i}: projection check failed"))?;
        // Recount from the innings alone.
        for q in primes(l) {
            let c = rep
                .innings
                .iter()
                .filter(|s| !l.le(sup(l, s.inning.picked.iter().map(|&j| s.inning.offered[j])), q))
                .count();
            ensure(c >= 2, || {
                format!("instance #{i}: prime {} beaten {c} times", l.label_of(q))
            })?;
        }
        for s in &rep.innings {
            let from_lift: BTreeSet<usize> = s.lifted.iter().map(|&(j, _)| j).collect();
            let picked: BTreeSet<usize> = s.inning.picked.iter().copied().collect();
            ensure(from_lift == picked, || {
                format!("instance #{i}: lifted picks do not project onto F")
            })?;
            ensure(s.lifted.iter().all(|&(_, n)| n < 4), || {
                format!("instance #{i}: coordinate out of width")
            })?;
        }
    }
    Ok("100/100 instances, every prime beaten at least twice, projections exact".into())
}

fn brute_exists(l: &FiniteLattice, fs: &[Vec<Elem>]) -> bool {
    let covers: Vec<Vec<Elem>> = fs.to_vec();
    brute_s1(l, &covers, l.top_elem()).is_some()
}

fn report_holds(l: &FiniteLattice, fs: &[Vec<Elem>]) -> bool {
    let k = fs.len().min(latgame_core::counterplay::MEETS_BOUND);
    primes(l)
        .into_iter()
        .all(|q| fs.iter().filter(|f| !l.le(sup(l, f.iter().copied()), q)).count() >= k)
}

fn meets() -> Verdict {
    let mut r = rng(23);
    let mut done = 0;
    while done < 500 {
        let l = random_pre_pawlikowski(&mut r, 12);
        let h = l.height();
        if h > 6 {
            continue;
        }
        let n = r.random_range(h.max(1)..=(h + 2).min(8));
        let fs: Vec<Vec<Elem>> = (0..n).map(|_| random_cover(&l, l.top_elem(), &mut r, 3)).collect();
        if !report_holds(&l, &fs) {
            continue;
        }
        let pick = rothberger_pick(&l, &fs)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no picks on {} with {} sets", l.name(), fs.len()))?;
        let s = sup(&l, pick.picks.iter().enumerate().map(|(n, &i)| fs[n][i]));
        ensure(s == l.top_elem(), || {
            format!("picks on {} have sup {}", l.name(), l.label_of(s))
        })?;
        for (v, n) in &pick.decoded {
            ensure(l.le(v.value, fs[*n][pick.picks[*n]]), || {
                "decoded meet above its pick".into()
            })?;
        }
        done += 1;
    }
    // Existence oracle on small families: exhaustive on small lattices,
    // seeded on the rest.
    let mut exhaustive = 0;
    for kind in [
        LatticeKind::Powerset(2),
        LatticeKind::Chain(3),
        LatticeKind::Sierpinski,
        LatticeKind::Chain(2),
    ] {
        let l = lat(kind);
        let sets: Vec<Vec<Elem>> = (1..=3)
            .flat_map(|k| combinations(l.len(), k))
            .map(|c| c.into_iter().map(|i| l.elem_at(i)).collect())
            .collect();
        sweep_lists(&l, l.top_elem(), &sets, 4, |fs| {
            if !report_holds(&l, fs) {
                return Ok(());
            }
            exhaustive += 1;
            let got = rothberger_pick(&l, fs).map_err(|e| e.to_string())?.is_some();
            ensure(got == brute_exists(&l, fs), || {
                format!("{}: pick {got} on {:?}", l.name(), fs)
            })
        })?;
    }
    let mut agree = 0;
    let mut r = rng(24);
    for _ in 0..4000 {
        let l = random_pre_pawlikowski(&mut r, 8);
        let n = r.random_range(1..=4);
        let fs: Vec<Vec<Elem>> = (0..n).map(|_| random_cover(&l, l.top_elem(), &mut r, 3)).collect();
        if !report_holds(&l, &fs) {
            continue;
        }
        let got = rothberger_pick(&l, &fs).map_err(|e| e.to_string())?.is_some();
        ensure(got == brute_exists(&l, &fs), || {
            format!("{}: pick {got} but brute force {}", l.name(), !got)
        })?;
        agree += 1;
    }
    Ok(format!(
        "500/500 families succeed; brute-force existence agrees on {exhaustive} exhaustive and {agree} seeded small families"
    ))
}

fn rothberger() -> Verdict {
    let mut r = rng(31);
    let mut done = 0;
    while done < 100 {
        let l = random_topology(&mut r, 5);
        if primes(&l).is_empty() || l.require_pawlikowski().is_err() {
            continue;
        }
        let s = random_strategy(&l, r.random(), r.random_range(1..=3), 3);
        let mut cfg = RothbergerConfig::new(5);
        cfg.history_cap = 4096;
        let rep = rothberger_counterplay(&l, &s, cfg).map_err(|e| format!("#{done} ({}): {e}", l.name()))?;
        ensure(rep.transcript.won(), || format!("#{done} ({}) undecided", l.name()))?;
        let top = l.top_elem();
        ensure(
            adjudicate(&l, &rep.transcript, &top).map_err(|e| e.to_string())? == rep.transcript.outcome,
            || "adjudication disagrees".into(),
        )?;
        for (n, d) in rep.decoded.iter().enumerate() {
            ensure(l.le(d.wedge_value, d.value), || {
                format!("#{done} inning {n}: u_n below f_n fails")
            })?;
            if let Some(inning) = rep.transcript.innings.get(n) {
                ensure(inning.offered[inning.picked[0]] == d.value, || {
                    format!("#{done} inning {n}: pick differs")
                })?;
            }
        }
        done += 1;
    }
    Ok("100/100 strategies defeated within depth 5; u_n >= f_n everywhere".into())
}

fn gates() -> Verdict {
    let m3 = lat(LatticeKind::M3);
    let t = m3.top_elem();
    let s = ConstantStrategy {
        cover: m3.elems_by_label(&["a", "b"]).unwrap(),
    };
    let tree = normalize_to_nice(&m3, &s, &t, 4, 3).map_err(|e| e.to_string())?;
    let name = |e: latgame_core::Error| e.name().to_string();
    let checks: Vec<(&str, String)> = vec![
        (
            "menger_counterplay",
            menger_counterplay(&m3, &tree, GateMode::Strict)
                .map(|_| ())
                .map_err(name)
                .unwrap_err(),
        ),
        (
            "severe_defeat_play",
            severe_defeat_play(&m3, &tree, 4, 4, 2)
                .map(|_| ())
                .map_err(name)
                .unwrap_err(),
        ),
        (
            "rothberger_pick",
            rothberger_pick(&m3, &[vec![t]]).map(|_| ()).map_err(name).unwrap_err(),
        ),
        (
            "history_wedge_strategy",
            history_wedge_strategy(&m3, &s, HISTORY_CAP)
                .map(|_| ())
                .map_err(name)
                .unwrap_err(),
        ),
        (
            "rothberger_counterplay",
            rothberger_counterplay(&m3, &s, RothbergerConfig::new(4))
                .map(|_| ())
                .map_err(name)
                .unwrap_err(),
        ),
    ];
    for (what, err) in &checks {
        ensure(err == "NotEnoughPrimes" || err == "NotPawlikowski", || {
            format!("{what} gave {err}")
        })?;
    }
    let fc = FiniteCofinite;
    ensure(fc.sup_defined(&SymbolicSet::evens()).is_none(), || {
        "sup of evens defined".into()
    })?;
    Ok(checks
        .iter()
        .map(|(w, e)| format!("{w}:{e}"))
        .collect::<Vec<_>>()
        .join(" "))
}

/// Runs the built binary on every golden case, twice, and compares the
/// bytes with the recorded files.
fn golden_files() -> Verdict {
    use common::golden::{cases, expected_path, render};
    let bin = env!("CARGO_BIN_EXE_latgame");
    let cases = cases();
    let mut seeded = 0;
    for case in &cases {
        let want = std::fs::read_to_string(expected_path(&case.name))
            .map_err(|e| format!("{}: no golden file ({e})", case.name))?;
        for _ in 0..2 {
            let out = std::process::Command::new(bin)
                .args(&case.args)
                .output()
                .map_err(|e| format!("cannot run {bin}: {e}"))?;
            let got = render(out.status.code().unwrap_or(-1), &String::from_utf8_lossy(&out.stdout));
            ensure(got == want, || {
                format!("{}: output differs from its golden file", case.name)
            })?;
        }
        if want.contains("\n  \"seed\": ") {
            seeded += 1;
        }
    }
    let counterplay = cases.iter().filter(|c| c.args[0] == "counterplay").count();
    let classify = cases.iter().filter(|c| c.args[0] == "classify").count();
    Ok(format!(
        "{} cases byte-identical over two runs ({classify} classify, {counterplay} counterplay, {seeded} seeded)",
        cases.len()
    ))
}

/// Name, time budget, check.
type Criterion = (&'static str, Duration, fn() -> Verdict);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("classification ground truths", Duration::from_secs(1), classification),
        ("spectrum faithfulness", Duration::from_secs(5), spectrum_faithfulness),
        ("selector oracle equivalence", Duration::from_secs(30), selectors),
        ("tail-set suite", Duration::from_secs(60), tail_sets),
        ("Menger counter-play suite", Duration::from_secs(120), menger),
        ("severe defeat suite", Duration::from_secs(120), severe),
        ("meets-family pick suite", Duration::from_secs(30), meets),
        ("Rothberger counter-play suite", Duration::from_secs(180), rothberger),
        ("degenerate gates", Duration::from_secs(5), gates),
        ("CLI golden files", Duration::from_secs(60), golden_files),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:.2?}, budget {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {name} [{elapsed:.2?}]: {detail}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
