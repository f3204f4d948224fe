// SPDX-License-Identifier: Apache-2.0

//! Meets families, single picks from severely defeating selections, and the
//! Rothberger counter-play assembled from them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use super::lift::{severe_defeat_run, SevereReport};
use crate::covers::s1_select_progressive;
use crate::error::{Error, Result};
use crate::game::{
    history_path, normalize_to_nice, play, FnSelector, GameKind, Inning, NiceStrategyTree, PlayTranscript, Strategy,
};
use crate::lattice::{Elem, FiniteLattice, Hypotheses, Lattice};

/// Largest number of meets families `rothberger_pick` builds.
pub const MEETS_BOUND: usize = 8;
/// Default cap on the number of tracked histories.
pub const HISTORY_CAP: usize = 64;

/// `⋀ G` for one element `G[i]` of each set `F_{J[i]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetItem<E> {
    pub value: E,
    /// Pairwise distinct set indices, increasing.
    pub sets: Vec<usize>,
    /// Element index chosen in each set of `sets`.
    pub choice: Vec<usize>,
}

/// Every meet of `k + 1` elements drawn from `k + 1` distinct sets,
/// deduplicated by value with the first `(sets, choice)` in lexicographic
/// order kept.
pub fn meets_family<L: Lattice>(lat: &L, fs: &[Vec<L::Elem>], k: usize) -> Result<Vec<MeetItem<L::Elem>>> {
    let size = k + 1;
    if size > fs.len() {
        return Err(Error::InvalidParameter(format!(
            "meets of {size} elements need {size} sets, got {}",
            fs.len()
        )));
    }
    let n = fs.len();
    let mut out: Vec<MeetItem<L::Elem>> = Vec::new();
    let mut seen: HashMap<L::Elem, usize> = HashMap::new();
    let mut sets: Vec<usize> = (0..size).collect();
    loop {
        // Fold the product over the chosen sets, keeping the first choice
        // per partial meet (equal partial meets extend identically).
        let mut states: Vec<(L::Elem, Vec<usize>)> = vec![(lat.top(), Vec::new())];
        for &j in &sets {
            let mut next: Vec<(L::Elem, Vec<usize>)> = Vec::new();
            let mut idx: HashMap<L::Elem, usize> = HashMap::new();
            for (v, g) in &states {
                for (i, f) in fs[j].iter().enumerate() {
                    let m = lat.meet(v, f);
                    let mut g2 = g.clone();
                    g2.push(i);
                    match idx.get(&m) {
                        Some(&at) if next[at].1 <= g2 => {}
                        Some(&at) => next[at].1 = g2,
                        None => {
                            idx.insert(m.clone(), next.len());
                            next.push((m, g2));
                        }
                    }
                }
            }
            states = next;
        }
        states.sort_by(|a, b| a.1.cmp(&b.1));
        for (value, choice) in states {
            if !seen.contains_key(&value) {
                seen.insert(value.clone(), out.len());
                out.push(MeetItem {
                    value,
                    sets: sets.clone(),
                    choice,
                });
            }
        }
        let Some(pivot) = (0..size).rev().find(|&i| sets[i] < n - size + i) else {
            break;
        };
        sets[pivot] += 1;
        for j in pivot + 1..size {
            sets[j] = sets[j - 1] + 1;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RothbergerPick<E> {
    /// Index into `F_n` for every `n`.
    pub picks: Vec<usize>,
    /// The selected meet `v_k` from each family with the set it was
    /// decoded to.
    pub decoded: Vec<(MeetItem<E>, usize)>,
}

/// One element per set with supremum 1, or `None` if no single selection
/// from the meets families reaches 1.
///
/// The selection over the families prefers meets that raise the running
/// join, so picks that repeat earlier progress are pushed later.
pub fn rothberger_pick<L: Hypotheses>(lat: &L, fs: &[Vec<L::Elem>]) -> Result<Option<RothbergerPick<L::Elem>>> {
    lat.require_pre_pawlikowski()?;
    if fs.is_empty() {
        return Err(Error::InvalidParameter("no sets given".into()));
    }
    if let Some(n) = fs.iter().position(|f| f.is_empty()) {
        return Err(Error::InvalidParameter(format!("set {n} is empty")));
    }
    let top = lat.top();
    let k_max = fs.len().min(MEETS_BOUND);
    let mut families = Vec::new();
    for k in 0..k_max {
        families.push(meets_family(lat, fs, k)?);
    }
    let values: Vec<Vec<L::Elem>> = families
        .iter()
        .map(|v| v.iter().map(|m| m.value.clone()).collect())
        .collect();
    let Some(sel) = s1_select_progressive(lat, &values, &top)? else {
        return Ok(None);
    };
    let mut picks: Vec<Option<usize>> = vec![None; fs.len()];
    let mut decoded = Vec::new();
    for (k, &i) in sel.iter().enumerate() {
        let item = families[k][i].clone();
        // k sets are taken and item.sets has k + 1 members.
        let at = (0..item.sets.len())
            .find(|&a| picks[item.sets[a]].is_none())
            .expect("a free set among k + 1 distinct ones");
        let n = item.sets[at];
        picks[n] = Some(item.choice[at]);
        decoded.push((item, n));
    }
    Ok(Some(RothbergerPick {
        picks: picks.into_iter().map(|p| p.unwrap_or(0)).collect(),
        decoded,
    }))
}

/// A wedge item with the choice function it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeItem<E> {
    pub value: E,
    /// History → index into the single-pick strategy's answer there.
    pub choice: BTreeMap<Vec<usize>, usize>,
}

/// The history set `H_n` and the wedge items answered at inning `n`.
pub type ReplayStep<E> = (BTreeSet<Vec<usize>>, Vec<WedgeItem<E>>);

/// A Menger-game strategy built from a Rothberger-game strategy: it tracks
/// the set of single-pick histories consistent with the play and answers
/// with the wedge of the answers at all of them.
pub struct HistoryWedgeStrategy<'a, L: Lattice> {
    lat: &'a L,
    sigma: &'a dyn Strategy<L::Elem>,
    cap: usize,
    answers: Mutex<HashMap<Vec<usize>, Vec<L::Elem>>>,
}

impl<'a, L: Hypotheses> HistoryWedgeStrategy<'a, L> {
    pub fn new(lat: &'a L, sigma: &'a dyn Strategy<L::Elem>, cap: usize) -> Result<Self> {
        lat.require_pawlikowski()?;
        Ok(HistoryWedgeStrategy {
            lat,
            sigma,
            cap,
            answers: Mutex::new(HashMap::new()),
        })
    }

    /// The single-pick strategy's answer after history `h`.
    pub fn answer(&self, h: &[usize]) -> Result<Vec<L::Elem>> {
        if let Some(a) = self.answers.lock().expect("not poisoned").get(h) {
            return Ok(a.clone());
        }
        let mut innings: Vec<Inning<L::Elem>> = Vec::new();
        let mut running = self.lat.bottom();
        for (n, &i) in h.iter().enumerate() {
            let offered = self.answer(&h[..n])?;
            running = self.lat.join(&running, &offered[i]);
            innings.push(Inning {
                offered,
                picked: vec![i],
                running_join: running.clone(),
            });
        }
        let a = self.sigma.respond(&innings)?;
        let sup = self.lat.sup(&a);
        if sup != self.lat.top() {
            return Err(Error::StrategyNotACover {
                history: history_path(&innings),
                sup: self.lat.label(&sup),
            });
        }
        self.answers.lock().expect("not poisoned").insert(h.to_vec(), a.clone());
        Ok(a)
    }

    /// `⋀_{h ∈ H} σ(h)[g(h)]` for every choice `g`, one item per value with
    /// the lexicographically first `g`.
    pub fn wedge_items(&self, hs: &BTreeSet<Vec<usize>>) -> Result<Vec<WedgeItem<L::Elem>>> {
        let mut states: Vec<(L::Elem, Vec<usize>)> = vec![(self.lat.top(), Vec::new())];
        for h in hs {
            let answer = self.answer(h)?;
            let mut next: Vec<(L::Elem, Vec<usize>)> = Vec::new();
            let mut idx: HashMap<L::Elem, usize> = HashMap::new();
            for (v, g) in &states {
                for (i, a) in answer.iter().enumerate() {
                    let m = self.lat.meet(v, a);
                    let mut g2 = g.clone();
                    g2.push(i);
                    match idx.get(&m) {
                        Some(&at) if next[at].1 <= g2 => {}
                        Some(&at) => next[at].1 = g2,
                        None => {
                            idx.insert(m.clone(), next.len());
                            next.push((m, g2));
                        }
                    }
                }
            }
            states = next;
        }
        states.sort_by(|a, b| a.1.cmp(&b.1));
        Ok(states
            .into_iter()
            .map(|(value, g)| WedgeItem {
                value,
                choice: hs.iter().cloned().zip(g).collect(),
            })
            .collect())
    }

    /// The history sets `H_0, …, H_n` and wedge items `W_0, …, W_n` along a
    /// play whose innings picked the given wedge indices.
    pub fn replay(&self, picks: &[Vec<usize>]) -> Result<Vec<ReplayStep<L::Elem>>> {
        let mut hs: BTreeSet<Vec<usize>> = BTreeSet::from([Vec::new()]);
        let mut out = Vec::new();
        for picked in picks {
            let items = self.wedge_items(&hs)?;
            let mut next = BTreeSet::new();
            for &r in picked {
                let item = items.get(r).ok_or_else(|| Error::IllegalSelection {
                    inning: out.len(),
                    reason: format!("wedge index {r} outside {} items", items.len()),
                })?;
                for h in &hs {
                    let mut ext = h.clone();
                    ext.push(item.choice[h]);
                    next.insert(ext);
                }
            }
            out.push((hs, items));
            if next.len() > self.cap {
                return Err(Error::HistoryBlowup {
                    size: next.len(),
                    cap: self.cap,
                });
            }
            hs = next;
        }
        let items = self.wedge_items(&hs)?;
        out.push((hs, items));
        Ok(out)
    }
}

impl<L: Hypotheses> Strategy<L::Elem> for HistoryWedgeStrategy<'_, L> {
    fn respond(&self, history: &[Inning<L::Elem>]) -> Result<Vec<L::Elem>> {
        let picks: Vec<Vec<usize>> = history.iter().map(|h| h.picked.clone()).collect();
        let (_, items) = self.replay(&picks)?.pop().expect("at least the current inning");
        Ok(items.into_iter().map(|w| w.value).collect())
    }
}

pub fn history_wedge_strategy<'a, L: Hypotheses>(
    lat: &'a L,
    sigma: &'a dyn Strategy<L::Elem>,
    cap: usize,
) -> Result<HistoryWedgeStrategy<'a, L>> {
    HistoryWedgeStrategy::new(lat, sigma, cap)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RothbergerConfig {
    pub depth: usize,
    pub branching: usize,
    pub width: usize,
    pub history_cap: usize,
}

impl RothbergerConfig {
    pub fn new(depth: usize) -> Self {
        RothbergerConfig {
            depth,
            branching: 3,
            width: depth,
            history_cap: HISTORY_CAP,
        }
    }
}

/// One decoded inning of the single-pick play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedInning {
    /// The wedge item `f_n` picked from the auxiliary selection.
    pub wedge_value: Elem,
    pub history: Vec<usize>,
    /// Index `g_n(h_n)` into the strategy's answer and that item `u_n`.
    pub pick: usize,
    pub value: Elem,
    pub dominates: bool,
}

#[derive(Debug, Clone)]
pub struct RothbergerReport {
    pub aux_tree: NiceStrategyTree<Elem>,
    pub severe: SevereReport,
    /// Auxiliary selections as sets of wedge items.
    pub selections: Vec<Vec<Elem>>,
    pub pick: RothbergerPick<Elem>,
    pub decoded: Vec<DecodedInning>,
    pub transcript: PlayTranscript<Elem>,
}

pub fn rothberger_counterplay(
    lat: &FiniteLattice,
    sigma: &dyn Strategy<Elem>,
    config: RothbergerConfig,
) -> Result<RothbergerReport> {
    lat.require_pawlikowski()?;
    if lat.classification().primes.is_empty() {
        return Err(Error::NoPrimes);
    }
    let top = lat.top_elem();
    let aux = history_wedge_strategy(lat, sigma, config.history_cap)?;
    let aux_tree = normalize_to_nice(lat, &aux, &top, config.depth, config.branching)?;
    let severe = severe_defeat_run(lat, &aux_tree, config.depth, config.width, 0)?;

    // Raw selections: nested provenance makes the union over the picked
    // tree items the provenance of the largest one.
    let mut raw_picks: Vec<Vec<usize>> = Vec::new();
    for s in &severe.innings {
        let node = aux_tree.node(&s.base_path)?;
        let mut r: BTreeSet<usize> = BTreeSet::new();
        for &j in &s.inning.picked {
            r.extend(&node.provenance[j]);
        }
        raw_picks.push(r.into_iter().collect());
    }
    let replayed = aux.replay(&raw_picks)?;
    let selections: Vec<Vec<Elem>> = raw_picks
        .iter()
        .zip(&replayed)
        .map(|(r, (_, items))| r.iter().map(|&i| items[i].value).collect())
        .collect();
    let fs: Vec<Vec<Elem>> = selections.iter().filter(|f| !f.is_empty()).cloned().collect();
    if fs.len() != selections.len() {
        return Err(Error::SelectorFailed("an auxiliary inning selected nothing".into()));
    }
    let pick = rothberger_pick(lat, &fs)?
        .ok_or_else(|| Error::SelectorFailed("no single picks from the auxiliary play reach the top".into()))?;

    let mut decoded = Vec::new();
    let mut h: Vec<usize> = Vec::new();
    for (n, (r, (hs, items))) in raw_picks.iter().zip(&replayed).enumerate() {
        let item = &items[r[pick.picks[n]]];
        if !hs.contains(&h) {
            return Err(Error::DecodeFailure(format!("history {h:?} not tracked at inning {n}")));
        }
        let g = *item
            .choice
            .get(&h)
            .ok_or_else(|| Error::DecodeFailure(format!("wedge item at inning {n} has no entry for {h:?}")))?;
        let u = aux.answer(&h)?[g];
        decoded.push(DecodedInning {
            wedge_value: item.value,
            history: h.clone(),
            pick: g,
            value: u,
            dominates: lat.le(item.value, u),
        });
        h.push(g);
    }
    let script: Vec<usize> = decoded.iter().map(|d| d.pick).collect();
    let mut follow = FnSelector(|hist: &[Inning<Elem>], _: &[Elem]| Ok(vec![script[hist.len()]]));
    let transcript = play(lat, GameKind::G1, sigma, &mut follow, &top, config.depth)?;
    Ok(RothbergerReport {
        aux_tree,
        severe,
        selections,
        pick,
        decoded,
        transcript,
    })
}
