// SPDX-License-Identifier: Apache-2.0

//! JSON input files (lattices, covers, strategies) and the JSON documents
//! written for reports and transcripts.
//!
//! Output documents carry element labels, never internal indices, and
//! serialize their fields in declaration order so identical inputs give
//! byte-identical text.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::counterplay::{MengerReport, RothbergerReport, SevereReport};
use crate::covers::Cover;
use crate::error::{Error, Result};
use crate::game::{ConstantStrategy, Inning, PlayTranscript, SeededRandomStrategy, Strategy, TreeStrategy};
use crate::lattice::classify::DistributivityCheck;
use crate::lattice::{
    chain, powerset, product, spectrum, topology, Elem, FiniteCofinite, FiniteLattice, Lattice, LatticeKind,
    SymbolicSet,
};

pub fn parse_json<'a, T: Deserialize<'a>>(what: &str, text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointsSpec {
    Count(usize),
    Labels(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitLattice {
    #[serde(default)]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowersetLattice {
    #[serde(default)]
    pub name: Option<String>,
    pub points: PointsSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLattice {
    #[serde(default)]
    pub name: Option<String>,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyLattice {
    #[serde(default)]
    pub name: Option<String>,
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFile {
    #[serde(default)]
    pub name: Option<String>,
    pub factors: Vec<LatticeRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCofiniteFile {
    #[serde(default)]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LatticeFile {
    Explicit(ExplicitLattice),
    Powerset(PowersetLattice),
    Chain(ChainLattice),
    Topology(TopologyLattice),
    Product(ProductFile),
    FiniteCofinite(FiniteCofiniteFile),
}

/// A catalog name such as `"b2"` or an inline lattice description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Name(String),
    Inline(Box<LatticeFile>),
}

#[derive(Debug, Clone)]
pub enum LoadedLattice {
    Finite(FiniteLattice),
    /// The finite–cofinite subsets of ω, handled symbolically.
    FiniteCofinite,
}

impl LoadedLattice {
    pub fn finite(self) -> Result<FiniteLattice> {
        match self {
            LoadedLattice::Finite(l) => Ok(l),
            LoadedLattice::FiniteCofinite => Err(Error::InvalidParameter(
                "the finite-cofinite lattice is symbolic; this command needs a finite lattice".into(),
            )),
        }
    }
}

impl LatticeFile {
    pub fn load(&self) -> Result<LoadedLattice> {
        let named = |n: &Option<String>, default: &str| n.clone().unwrap_or_else(|| default.to_string());
        Ok(LoadedLattice::Finite(match self {
            LatticeFile::Explicit(ExplicitLattice { name, elements, leq }) => {
                FiniteLattice::build(named(name, "explicit"), elements, leq)?
            }
            LatticeFile::Powerset(PowersetLattice { name, points }) => match points {
                PointsSpec::Count(k) => {
                    let l = crate::lattice::generate(&LatticeKind::Powerset(*k))?;
                    match name {
                        Some(n) => rename(&l, n)?,
                        None => l,
                    }
                }
                PointsSpec::Labels(pts) => {
                    let refs: Vec<&str> = pts.iter().map(|s| s.as_str()).collect();
                    powerset(&named(name, &format!("powerset:{}", pts.len())), &refs)?
                }
            },
            LatticeFile::Chain(ChainLattice { name, length }) => {
                chain(&named(name, &format!("chain:{length}")), *length)?
            }
            LatticeFile::Topology(TopologyLattice { name, points, opens }) => {
                let index: BTreeMap<&str, usize> = points.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
                if index.len() != points.len() {
                    return Err(Error::Parse("topology: duplicate point label".into()));
                }
                let mut sets = Vec::new();
                for (k, o) in opens.iter().enumerate() {
                    let mut set = BTreeSet::new();
                    for p in o {
                        let &i = index
                            .get(p.as_str())
                            .ok_or_else(|| Error::Parse(format!("opens[{k}]: unknown point `{p}`")))?;
                        set.insert(i);
                    }
                    sets.push(set);
                }
                topology(named(name, "topology"), points, &sets)?
            }
            LatticeFile::Product(ProductFile { name, factors }) => {
                let mut fs = Vec::new();
                for f in factors {
                    fs.push(f.load()?.finite()?);
                }
                let p = product(&fs)?;
                match name {
                    Some(n) => rename(p.lattice(), n)?,
                    None => p.lattice().clone(),
                }
            }
            LatticeFile::FiniteCofinite(_) => return Ok(LoadedLattice::FiniteCofinite),
        }))
    }
}

fn rename(l: &FiniteLattice, name: &str) -> Result<FiniteLattice> {
    FiniteLattice::from_relation(name, l.carrier_labels().to_vec(), |a, b| {
        l.le(l.elem_at(a), l.elem_at(b))
    })
}

impl LatticeRef {
    pub fn load(&self) -> Result<LoadedLattice> {
        match self {
            LatticeRef::Name(n) if n == "finite_cofinite" => Ok(LoadedLattice::FiniteCofinite),
            LatticeRef::Name(n) => Ok(LoadedLattice::Finite(crate::lattice::generate(&n.parse()?)?)),
            LatticeRef::Inline(f) => f.load(),
        }
    }
}

pub fn parse_lattice(text: &str) -> Result<LoadedLattice> {
    // Parse the specific shape so errors keep their line and column.
    let value: serde_json::Value = parse_json("lattice file", text)?;
    if value.is_string() {
        return LatticeRef::Name(parse_json("lattice file", text)?).load();
    }
    let what = "lattice file";
    let file = match value.get("kind").and_then(|k| k.as_str()) {
        Some("explicit") => LatticeFile::Explicit(parse_json(what, text)?),
        Some("powerset") => LatticeFile::Powerset(parse_json(what, text)?),
        Some("chain") => LatticeFile::Chain(parse_json(what, text)?),
        Some("topology") => LatticeFile::Topology(parse_json(what, text)?),
        Some("product") => LatticeFile::Product(parse_json(what, text)?),
        Some("finite_cofinite") => LatticeFile::FiniteCofinite(parse_json(what, text)?),
        Some(k) => return Err(Error::Parse(format!("{what}: field `kind`: unknown kind `{k}`"))),
        None => return Err(Error::Parse(format!("{what}: missing field `kind`"))),
    };
    file.load()
}

/// Looks up labels, reporting the offending field on failure.
pub fn resolve_labels(lat: &FiniteLattice, labels: &[String], field: &str) -> Result<Vec<Elem>> {
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            lat.elem(l)
                .map_err(|_| Error::Parse(format!("{field}[{i}]: unknown label `{l}` in lattice {}", lat.name())))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFile {
    #[serde(default)]
    pub lattice: Option<LatticeRef>,
    /// Defaults to the top element.
    #[serde(default)]
    pub target: Option<String>,
    pub items: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverListFile {
    #[serde(default)]
    pub lattice: Option<LatticeRef>,
    #[serde(default)]
    pub target: Option<String>,
    pub covers: Vec<Vec<String>>,
    #[serde(default)]
    pub f: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoversInput {
    Sequence(Vec<CoverFile>),
    List(CoverListFile),
    Single(CoverFile),
}

#[derive(Debug, Clone)]
pub struct LoadedCovers {
    pub lattice: FiniteLattice,
    pub target: Elem,
    pub covers: Vec<Cover<Elem>>,
    pub f: Option<Vec<usize>>,
}

/// Cover lists with labels resolved but not yet checked to cover the target.
#[derive(Debug, Clone)]
pub struct ResolvedCovers {
    pub lattice: FiniteLattice,
    pub target: Elem,
    pub lists: Vec<Vec<Elem>>,
    pub f: Option<Vec<usize>>,
}

impl CoversInput {
    /// Resolves the covers in `lattice`, or in the lattice the file names,
    /// and checks that each covers the target.
    pub fn load(&self, lattice: Option<&FiniteLattice>) -> Result<LoadedCovers> {
        let r = self.resolve(lattice)?;
        let covers = r
            .lists
            .iter()
            .map(|items| Cover::new(&r.lattice, items.clone(), r.target))
            .collect::<Result<Vec<_>>>()?;
        Ok(LoadedCovers {
            lattice: r.lattice,
            target: r.target,
            covers,
            f: r.f,
        })
    }

    pub fn resolve(&self, lattice: Option<&FiniteLattice>) -> Result<ResolvedCovers> {
        type Parts<'a> = (
            Option<&'a LatticeRef>,
            Option<String>,
            Vec<(String, &'a Vec<String>)>,
            Option<Vec<usize>>,
        );
        let (named, target, lists, f): Parts<'_> = match self {
            CoversInput::Single(c) => (
                c.lattice.as_ref(),
                c.target.clone(),
                vec![("items".into(), &c.items)],
                None,
            ),
            CoversInput::List(c) => (
                c.lattice.as_ref(),
                c.target.clone(),
                c.covers
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (format!("covers[{i}]"), c))
                    .collect(),
                c.f.clone(),
            ),
            CoversInput::Sequence(cs) => {
                let targets: BTreeSet<&Option<String>> = cs.iter().map(|c| &c.target).collect();
                if targets.len() > 1 {
                    return Err(Error::Parse("covers in one sequence must share a target".into()));
                }
                (
                    cs.iter().find_map(|c| c.lattice.as_ref()),
                    cs.first().and_then(|c| c.target.clone()),
                    cs.iter()
                        .enumerate()
                        .map(|(i, c)| (format!("[{i}].items"), &c.items))
                        .collect(),
                    None,
                )
            }
        };
        let lat = match (lattice, named) {
            (Some(l), _) => l.clone(),
            (None, Some(r)) => r.load()?.finite()?,
            (None, None) => return Err(Error::Parse("no lattice given for the covers".into())),
        };
        let target = match &target {
            Some(t) => lat
                .elem(t)
                .map_err(|_| Error::Parse(format!("target: unknown label `{t}`")))?,
            None => lat.top_elem(),
        };
        let lists = lists
            .into_iter()
            .map(|(field, items)| resolve_labels(&lat, items, &field))
            .collect::<Result<Vec<_>>>()?;
        Ok(ResolvedCovers {
            lattice: lat,
            target,
            lists,
            f,
        })
    }
}

pub fn parse_covers(text: &str, lattice: Option<&FiniteLattice>) -> Result<LoadedCovers> {
    parse_covers_input(text)?.load(lattice)
}

pub fn parse_covers_input(text: &str) -> Result<CoversInput> {
    let value: serde_json::Value = parse_json("cover file", text)?;
    let input = if value.is_array() {
        CoversInput::Sequence(parse_json("cover file", text)?)
    } else if value.get("covers").is_some() {
        CoversInput::List(parse_json("cover file", text)?)
    } else {
        CoversInput::Single(parse_json("cover file", text)?)
    };
    Ok(input)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantFile {
    pub cover: Vec<String>,
}

/// Answers keyed by dot-separated branch paths; `""` is the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeFile {
    pub nodes: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeededRandomFile {
    pub seed: u64,
    pub pool: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StrategyFile {
    Constant(ConstantFile),
    Tree(TreeFile),
    SeededRandom(SeededRandomFile),
}

/// A strategy read from a file.
#[derive(Debug, Clone)]
pub enum LoadedStrategy {
    Constant(ConstantStrategy<Elem>),
    Tree(TreeStrategy<Elem>),
    SeededRandom(SeededRandomStrategy<Elem>),
}

impl Strategy<Elem> for LoadedStrategy {
    fn respond(&self, history: &[Inning<Elem>]) -> Result<Vec<Elem>> {
        match self {
            LoadedStrategy::Constant(s) => s.respond(history),
            LoadedStrategy::Tree(s) => s.respond(history),
            LoadedStrategy::SeededRandom(s) => s.respond(history),
        }
    }
}

impl LoadedStrategy {
    /// The seed actually used, for strategies that draw at random.
    pub fn seed(&self) -> Option<u64> {
        match self {
            LoadedStrategy::SeededRandom(s) => Some(s.seed),
            _ => None,
        }
    }
}

pub fn parse_path(key: &str) -> Result<Vec<usize>> {
    if key.is_empty() || key == "<root>" {
        return Ok(Vec::new());
    }
    key.split('.')
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| Error::Parse(format!("nodes: bad path `{key}`")))
        })
        .collect()
}

pub fn path_string(path: &[usize]) -> String {
    if path.is_empty() {
        return "<root>".into();
    }
    path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
}

impl StrategyFile {
    /// Builds the strategy; `seed` overrides the file's seed.
    pub fn load(&self, lat: &FiniteLattice, seed: Option<u64>) -> Result<LoadedStrategy> {
        Ok(match self {
            StrategyFile::Constant(ConstantFile { cover }) => LoadedStrategy::Constant(ConstantStrategy {
                cover: resolve_labels(lat, cover, "cover")?,
            }),
            StrategyFile::Tree(TreeFile { nodes }) => {
                let mut out = BTreeMap::new();
                for (k, v) in nodes {
                    out.insert(parse_path(k)?, resolve_labels(lat, v, &format!("nodes.{k}"))?);
                }
                LoadedStrategy::Tree(TreeStrategy { nodes: out })
            }
            StrategyFile::SeededRandom(SeededRandomFile { seed: s, pool }) => {
                if pool.is_empty() {
                    return Err(Error::Parse("pool: must list at least one cover".into()));
                }
                let pool = pool
                    .iter()
                    .enumerate()
                    .map(|(i, c)| resolve_labels(lat, c, &format!("pool[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                LoadedStrategy::SeededRandom(SeededRandomStrategy {
                    seed: seed.unwrap_or(*s),
                    pool,
                })
            }
        })
    }
}

pub fn parse_strategy(text: &str, lat: &FiniteLattice, seed: Option<u64>) -> Result<LoadedStrategy> {
    let what = "strategy file";
    let value: serde_json::Value = parse_json(what, text)?;
    let file = match value.get("kind").and_then(|k| k.as_str()) {
        Some("constant") => StrategyFile::Constant(parse_json(what, text)?),
        Some("tree") => StrategyFile::Tree(parse_json(what, text)?),
        Some("seeded_random") => StrategyFile::SeededRandom(parse_json(what, text)?),
        Some(k) => return Err(Error::Parse(format!("{what}: field `kind`: unknown kind `{k}`"))),
        None => return Err(Error::Parse(format!("{what}: missing field `kind`"))),
    };
    file.load(lat, seed)
}

// Output documents.

fn labels<L: Lattice>(lat: &L, items: &[L::Elem]) -> Vec<String> {
    lat.labels(items)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InningDoc {
    pub inning: usize,
    pub offered: Vec<String>,
    pub picked: Vec<usize>,
    pub picked_items: Vec<String>,
    pub running_join: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptDoc {
    pub game: String,
    pub target: String,
    pub depth: usize,
    pub innings: Vec<InningDoc>,
    pub outcome: String,
}

pub fn inning_doc<L: Lattice>(lat: &L, n: usize, inning: &Inning<L::Elem>) -> InningDoc {
    InningDoc {
        inning: n,
        offered: labels(lat, &inning.offered),
        picked: inning.picked.clone(),
        picked_items: inning.picked.iter().map(|&i| lat.label(&inning.offered[i])).collect(),
        running_join: lat.label(&inning.running_join),
    }
}

pub fn transcript_doc<L: Lattice>(lat: &L, t: &PlayTranscript<L::Elem>) -> TranscriptDoc {
    TranscriptDoc {
        game: t.game.to_string(),
        target: lat.label(&t.target),
        depth: t.depth,
        innings: t
            .innings
            .iter()
            .enumerate()
            .map(|(n, i)| inning_doc(lat, n, i))
            .collect(),
        outcome: t.outcome.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub family: Vec<String>,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub lattice: String,
    pub size: usize,
    pub is_lattice: bool,
    pub is_bounded: bool,
    pub enough_primes: bool,
    pub is_pre_pawlikowski: bool,
    pub is_distributive_over_sups: bool,
    pub is_pawlikowski: bool,
    pub is_spatial: bool,
    pub primes: Vec<String>,
    pub enough_primes_witness: Option<(String, String)>,
    pub distributivity_witness: Option<WitnessDoc>,
    pub distributivity_check: String,
}

pub fn classification_doc(lat: &FiniteLattice) -> ClassificationDoc {
    let c = lat.classification();
    ClassificationDoc {
        lattice: lat.name().to_string(),
        size: lat.len(),
        is_lattice: c.is_lattice,
        is_bounded: c.is_bounded,
        enough_primes: c.enough_primes,
        is_pre_pawlikowski: c.is_pre_pawlikowski,
        is_distributive_over_sups: c.is_distributive_over_sups,
        is_pawlikowski: c.is_pawlikowski,
        is_spatial: c.is_spatial,
        primes: labels(lat, &c.primes),
        enough_primes_witness: c
            .enough_primes_witness
            .map(|(a, b)| (lat.label_of(a).to_string(), lat.label_of(b).to_string())),
        distributivity_witness: c.distributivity_witness.as_ref().map(|w| WitnessDoc {
            family: labels(lat, &w.family),
            b: lat.label_of(w.b).to_string(),
        }),
        distributivity_check: match c.distributivity_check {
            DistributivityCheck::AllSubsets => "all_subsets",
            DistributivityCheck::BinaryJoins => "binary_joins",
        }
        .into(),
    }
}

/// What is decidable about the symbolic finite–cofinite lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCofiniteDoc {
    pub lattice: String,
    pub enough_primes: bool,
    pub primes: String,
    /// Supremum of the singletons of the even numbers, when it exists.
    pub sup_of_evens: Option<String>,
    pub complete: bool,
}

pub fn finite_cofinite_doc() -> FiniteCofiniteDoc {
    let fc = FiniteCofinite;
    FiniteCofiniteDoc {
        lattice: "finite_cofinite".into(),
        enough_primes: true,
        primes: "complements of singletons".into(),
        sup_of_evens: fc.sup_defined(&SymbolicSet::evens()).map(|e| fc.label(&e)),
        complete: false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub lattice: String,
    pub points: Vec<String>,
    /// Each element with the primes in its open.
    pub opens: Vec<(String, Vec<String>)>,
    pub faithful: bool,
}

pub fn spectrum_doc(lat: &FiniteLattice) -> SpectrumDoc {
    let (space, faithful) = spectrum(lat);
    SpectrumDoc {
        lattice: lat.name().to_string(),
        points: labels(lat, &space.points),
        opens: space
            .opens
            .iter()
            .map(|(a, o)| {
                (
                    lat.label_of(*a).to_string(),
                    o.iter().map(|&i| lat.label_of(space.points[i]).to_string()).collect(),
                )
            })
            .collect(),
        faithful,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseNode {
    pub label: String,
    pub layer: usize,
    pub prime: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseDoc {
    pub lattice: String,
    pub nodes: Vec<HasseNode>,
    pub edges: Vec<(String, String)>,
    pub top: String,
    pub bottom: String,
}

pub fn hasse_doc(lat: &FiniteLattice) -> HasseDoc {
    let layout = lat.hasse();
    let primes = &lat.classification().primes;
    HasseDoc {
        lattice: lat.name().to_string(),
        nodes: layout
            .nodes
            .iter()
            .map(|&(e, layer)| HasseNode {
                label: lat.label_of(e).to_string(),
                layer,
                prime: primes.contains(&e),
            })
            .collect(),
        edges: layout
            .edges
            .iter()
            .map(|&(a, b)| (lat.label_of(a).to_string(), lat.label_of(b).to_string()))
            .collect(),
        top: lat.label_of(lat.top_elem()).to_string(),
        bottom: lat.label_of(lat.bottom_elem()).to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailDoc {
    pub value: String,
    pub cut: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutBoundDoc {
    pub max_index: usize,
    pub max_support: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub level: usize,
    pub paths: Vec<String>,
    pub cut_bound: CutBoundDoc,
    pub tail_family: Vec<TailDoc>,
    pub selected: Vec<usize>,
    pub combined_cut: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MengerDoc {
    pub levels: Vec<LevelDoc>,
    pub nodes: Vec<String>,
    pub transcript: TranscriptDoc,
}

pub fn menger_doc<L: Lattice>(lat: &L, r: &MengerReport<L::Elem>) -> MengerDoc {
    MengerDoc {
        levels: r
            .levels
            .iter()
            .map(|l| LevelDoc {
                level: l.level,
                paths: l.paths.iter().map(|p| path_string(p)).collect(),
                cut_bound: CutBoundDoc {
                    max_index: l.cut_bound.max_index,
                    max_support: l.cut_bound.max_support,
                },
                tail_family: l
                    .tail_family
                    .elements
                    .iter()
                    .map(|(v, c)| TailDoc {
                        value: lat.label(v),
                        cut: c.cuts.clone(),
                    })
                    .collect(),
                selected: l.selected.clone(),
                combined_cut: l.combined_cut.cuts.clone(),
            })
            .collect(),
        nodes: r.nodes.iter().map(|p| path_string(p)).collect(),
        transcript: transcript_doc(lat, &r.transcript),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SevereInningDoc {
    pub round: usize,
    pub base_path: String,
    #[serde(flatten)]
    pub inning: InningDoc,
    /// `(item, coordinate)` of each lifted item behind the selection.
    pub lifted: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCountDoc {
    pub prime: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SevereDoc {
    pub depth: usize,
    pub width: usize,
    pub recurrence: usize,
    pub rounds: usize,
    pub innings: Vec<SevereInningDoc>,
    pub counts: Vec<PrimeCountDoc>,
    pub missing: Vec<PrimeCountDoc>,
    pub projection_ok: bool,
    pub satisfied: bool,
    pub transcript: TranscriptDoc,
}

pub fn severe_doc(lat: &FiniteLattice, r: &SevereReport) -> SevereDoc {
    let count = |v: &[(Elem, usize)]| -> Vec<PrimeCountDoc> {
        v.iter()
            .map(|&(q, count)| PrimeCountDoc {
                prime: lat.label_of(q).to_string(),
                count,
            })
            .collect()
    };
    SevereDoc {
        depth: r.depth,
        width: r.width,
        recurrence: r.recurrence,
        rounds: r.rounds.len(),
        innings: r
            .innings
            .iter()
            .enumerate()
            .map(|(n, s)| SevereInningDoc {
                round: s.round,
                base_path: path_string(&s.base_path),
                inning: inning_doc(lat, n, &s.inning),
                lifted: s.lifted.clone(),
            })
            .collect(),
        counts: count(&r.counts),
        missing: count(&r.missing),
        projection_ok: r.projection_ok,
        satisfied: r.satisfied(),
        transcript: transcript_doc(lat, &crate::counterplay::severe_transcript(lat, r)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodedDoc {
    pub inning: usize,
    pub wedge_value: String,
    pub history: String,
    pub pick: usize,
    pub value: String,
    pub dominates: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RothbergerDoc {
    pub selections: Vec<Vec<String>>,
    pub picks: Vec<usize>,
    pub decoded: Vec<DecodedDoc>,
    pub severe: SevereDoc,
    pub transcript: TranscriptDoc,
}

pub fn rothberger_doc(lat: &FiniteLattice, r: &RothbergerReport) -> RothbergerDoc {
    RothbergerDoc {
        selections: r.selections.iter().map(|s| labels(lat, s)).collect(),
        picks: r.pick.picks.clone(),
        decoded: r
            .decoded
            .iter()
            .enumerate()
            .map(|(n, d)| DecodedDoc {
                inning: n,
                wedge_value: lat.label_of(d.wedge_value).to_string(),
                history: path_string(&d.history),
                pick: d.pick,
                value: lat.label_of(d.value).to_string(),
                dominates: d.dominates,
            })
            .collect(),
        severe: severe_doc(lat, &r.severe),
        transcript: transcript_doc(lat, &r.transcript),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play, ConstantStrategy, GameKind, ScriptedSelector};

    #[test]
    fn lattice_files() {
        let l = parse_lattice(r#"{"kind":"explicit","name":"v","elements":["0","a","b","1"],"leq":[["0","a"],["0","b"],["a","1"],["b","1"]]}"#)
            .unwrap()
            .finite()
            .unwrap();
        assert_eq!(l.len(), 4);
        let l = parse_lattice(r#"{"kind":"powerset","points":["p","q"]}"#)
            .unwrap()
            .finite()
            .unwrap();
        assert_eq!(l.carrier_labels(), &["{}", "{p}", "{q}", "{p,q}"]);
        let l = parse_lattice(r#"{"kind":"powerset","name":"b2","points":2}"#)
            .unwrap()
            .finite()
            .unwrap();
        assert_eq!(l.name(), "b2");
        let l = parse_lattice(r#"{"kind":"chain","length":3}"#)
            .unwrap()
            .finite()
            .unwrap();
        assert_eq!(l.carrier_labels(), &["0", "c1", "1"]);
        let l = parse_lattice(r#"{"kind":"topology","points":["x","y"],"opens":[[],["x"],["x","y"]]}"#)
            .unwrap()
            .finite()
            .unwrap();
        assert_eq!(l.len(), 3);
        let l = parse_lattice(r#"{"kind":"product","factors":["chain:2",{"kind":"chain","length":3}]}"#)
            .unwrap()
            .finite()
            .unwrap();
        assert_eq!(l.len(), 6);
        assert!(matches!(parse_lattice(r#""m3""#).unwrap(), LoadedLattice::Finite(_)));
        assert!(matches!(
            parse_lattice(r#"{"kind":"finite_cofinite"}"#).unwrap(),
            LoadedLattice::FiniteCofinite
        ));
    }

    #[test]
    fn parse_errors_name_the_field() {
        let e = parse_lattice(r#"{"kind":"topology","points":["x"],"opens":[[],["q"]]}"#).unwrap_err();
        assert_eq!(e.name(), "ParseError");
        assert!(e.to_string().contains("opens[1]"));
        let e = parse_lattice("{\n\"kind\": \"chain\",\n\"length\": \"x\"}").unwrap_err();
        assert!(e.to_string().contains("line"));
        let e = parse_covers(r#"{"lattice":"b2","items":["{x}","{q}"]}"#, None).unwrap_err();
        assert!(e.to_string().contains("items[1]"));
        let b2 = crate::lattice::generate(&LatticeKind::Powerset(2)).unwrap();
        let e = parse_strategy(r#"{"kind":"tree","nodes":{"0.a":["{x,y}"]}}"#, &b2, None).unwrap_err();
        assert!(e.to_string().contains("0.a"));
    }

    #[test]
    fn cover_files() {
        let c = parse_covers(r#"{"lattice":"b2","items":["{x}","{y}"]}"#, None).unwrap();
        assert_eq!(c.covers.len(), 1);
        assert_eq!(c.target, c.lattice.top_elem());
        let c = parse_covers(r#"[{"lattice":"b2","items":["{x}","{y}"]},{"items":["{x,y}"]}]"#, None).unwrap();
        assert_eq!(c.covers.len(), 2);
        let c = parse_covers(
            r#"{"lattice":"b2","target":"{x}","covers":[["{x}"],["{}","{x}"]],"f":[1,1]}"#,
            None,
        )
        .unwrap();
        assert_eq!(c.f, Some(vec![1, 1]));
        assert_eq!(c.lattice.label_of(c.target), "{x}");
        let e = parse_covers(r#"{"lattice":"b2","items":["{x}"]}"#, None).unwrap_err();
        assert_eq!(e.name(), "NotACover");
    }

    #[test]
    fn strategy_files_and_transcripts() {
        let b2 = crate::lattice::generate(&LatticeKind::Powerset(2)).unwrap();
        let s = parse_strategy(r#"{"kind":"tree","nodes":{"":["{x}","{y}"],"1":["{x,y}"]}}"#, &b2, None).unwrap();
        let t = play(
            &b2,
            GameKind::G1,
            &s,
            &mut ScriptedSelector {
                script: vec![vec![1], vec![0]],
            },
            &b2.top_elem(),
            3,
        )
        .unwrap();
        let doc = transcript_doc(&b2, &t);
        assert_eq!(doc.outcome, "WonByII(1)");
        assert_eq!(doc.innings[0].picked_items, ["{y}"]);
        let text = to_json(&doc);
        let back: TranscriptDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let r = parse_strategy(r#"{"kind":"seeded_random","seed":3,"pool":[["{x,y}"]]}"#, &b2, Some(9)).unwrap();
        assert_eq!(r.seed(), Some(9));
        let c = ConstantStrategy {
            cover: vec![b2.top_elem()],
        };
        assert_eq!(c.respond(&[]).unwrap(), r.respond(&[]).unwrap());
    }

    #[test]
    fn hasse_and_finite_cofinite_docs() {
        let b2 = crate::lattice::generate(&LatticeKind::Powerset(2)).unwrap();
        let h = hasse_doc(&b2);
        assert_eq!(h.nodes.iter().map(|n| n.layer).collect::<Vec<_>>(), [0, 1, 1, 2]);
        assert_eq!(h.edges.len(), 4);
        assert_eq!(h.nodes.iter().filter(|n| n.prime).count(), 2);
        assert_eq!(finite_cofinite_doc().sup_of_evens, None);
    }
}
