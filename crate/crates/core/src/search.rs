//! Breadth-first growth of connected cyclotomic graphs by one-vertex
//! attachments, deduplicated by canonical key.

use crate::catalog::{self, ExclusionList};
use crate::equiv::{canonical_form, contains_up_to_equiv, find_embedding, CanonicalKey, EquivFlags};
use crate::error::{Error, Result};
use crate::graph::HGraph;
use crate::ring::{elements_of_norm_at_most, units, QuadInt, RingId};
use crate::spectra::{cyclotomic_extensions, is_cyclotomic_fast, maximal_counterexample, CHARGES};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowConfig {
    pub ring: RingId,
    pub charges: Vec<i64>,
    pub weights: Vec<QuadInt>,
    pub exclusions: Option<ExclusionList>,
    pub max_n: usize,
    pub seeds: Vec<HGraph>,
    pub require_connected: bool,
    /// Stop once a level holds more classes than this.
    pub limit: Option<usize>,
}

/// Named weight sets: `units`, `norm2` (norm at most 2) and `all` (norm at most 4).
pub fn weight_preset(ring: RingId, name: &str) -> Result<Vec<QuadInt>> {
    let bound = match name {
        "units" => 1,
        "norm2" => 2,
        "all" => 4,
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(elements_of_norm_at_most(ring, bound).into_iter().filter(|w| !w.is_zero()).collect())
}

/// Weight preset name or a comma-separated list such as `1,-1,i,-i`.
pub fn parse_weights(ring: RingId, s: &str) -> Result<Vec<QuadInt>> {
    weight_preset(ring, s).or_else(|_| s.split(',').map(|t| QuadInt::parse(t.trim(), ring)).collect())
}

impl GrowConfig {
    /// The configuration for one of the exclusion lists: ring, weight set,
    /// charges, seed and target size of the corresponding growth.
    pub fn for_list(name: &str) -> Result<GrowConfig> {
        let list = catalog::exclusion_list(name)?;
        let ring = list.ring;
        let (weights, charges, seed, max_n) = match name {
            "L1" => (weight_preset(ring, "units")?, vec![0], HGraph::empty(ring, 1), 9),
            "L2" => {
                let p = QuadInt::new(1, 1, ring)?;
                (weight_preset(ring, "all")?, vec![0], HGraph::from_edges(ring, vec![0, 0], &[(0, 1, p)])?, 7)
            }
            "L3" => (weight_preset(ring, "all")?, CHARGES.to_vec(), HGraph::with_charges(ring, vec![-1]), 5),
            "Lw_uncharged" => (weight_preset(ring, "all")?, vec![0], HGraph::empty(ring, 1), 6),
            _ => (weight_preset(ring, "all")?, CHARGES.to_vec(), HGraph::with_charges(ring, vec![1]), 5),
        };
        Ok(GrowConfig {
            ring,
            charges,
            weights,
            exclusions: Some(list),
            max_n,
            seeds: vec![seed],
            require_connected: true,
            limit: None,
        })
    }

    /// Unrestricted closure over `ring` (all charges, all weights of norm at most 4).
    pub fn full(ring: RingId, seeds: Vec<HGraph>, max_n: usize) -> GrowConfig {
        GrowConfig {
            ring,
            charges: CHARGES.to_vec(),
            weights: weight_preset(ring, "all").expect("preset"),
            exclusions: None,
            max_n,
            seeds,
            require_connected: true,
            limit: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.max_n == 0 {
            return bad("max_n must be positive".into());
        }
        for &c in &self.charges {
            if !CHARGES.contains(&c) {
                return bad(format!("charge {c} outside 0, +-1, +-2"));
            }
        }
        let set: BTreeSet<(i64, i64)> = self.weights.iter().map(|w| (w.a, w.b)).collect();
        for &w in &self.weights {
            if w.ring != self.ring {
                return bad(format!("weight {w} is not over {}", self.ring.tag()));
            }
            if w.is_zero() || w.norm() > 4 {
                return bad(format!("weight {w} must be nonzero of norm at most 4"));
            }
            let c = w.conj();
            if !set.contains(&(c.a, c.b)) {
                return bad(format!("weight set not closed under conjugation: {w}"));
            }
            for u in units(self.ring) {
                let x = u * w;
                if !set.contains(&(x.a, x.b)) {
                    return bad(format!("weight set not closed under units: {u} * {w}"));
                }
            }
        }
        if let Some(x) = &self.exclusions {
            if self.ring.join(x.ring) != Some(self.ring) {
                return bad(format!("exclusion list {} is over {}", x.name, x.ring.tag()));
            }
        }
        for s in &self.seeds {
            if s.ring().join(self.ring) != Some(self.ring) {
                return bad("seed over a larger ring".into());
            }
            if self.require_connected && !s.is_connected() {
                return bad("seed is not connected".into());
            }
        }
        Ok(())
    }

    fn excluded_by(&self, g: &HGraph) -> bool {
        self.exclusions.as_ref().is_some_and(|x| {
            x.graphs.iter().any(|(_, h)| h.n() <= g.n() && contains_up_to_equiv(g, h, EquivFlags::FULL))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    pub key: CanonicalKey,
    pub graph: HGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowReport {
    pub counts_by_n: BTreeMap<usize, usize>,
    /// Sorted by key within each size.
    pub representatives: BTreeMap<usize, Vec<Representative>>,
    pub frontier_exhausted: bool,
}

impl GrowReport {
    pub fn all(&self) -> impl Iterator<Item = &Representative> {
        self.representatives.values().flatten()
    }

    /// Plain-text summary: one `n count` line per size.
    pub fn summary(&self) -> String {
        let mut s = String::from("n classes\n");
        for (n, c) in &self.counts_by_n {
            s += &format!("{n} {c}\n");
        }
        s += &format!("complete {}\n", self.frontier_exhausted);
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct GrowOptions {
    /// Directory for per-level checkpoint files.
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
}

type Level = BTreeMap<CanonicalKey, HGraph>;

fn canon(g: &HGraph) -> (CanonicalKey, HGraph) {
    let f = canonical_form(g, EquivFlags::FULL);
    (f.key, f.graph)
}

/// Canonical children of every graph in `level`, deduplicated, before the
/// exclusion filter.
fn children(config: &GrowConfig, level: &Level) -> Level {
    let found: Vec<Vec<(CanonicalKey, HGraph)>> = level
        .par_iter()
        .map(|(_, g)| cyclotomic_extensions(g, &config.charges, &config.weights).iter().map(canon).collect())
        .collect();
    let mut next = Level::new();
    for (k, g) in found.into_iter().flatten() {
        next.entry(k).or_insert(g);
    }
    next
}

fn level_file(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("level_{n}.json"))
}

fn write_level(dir: &Path, n: usize, level: &Level) -> Result<()> {
    let reps: Vec<Representative> =
        level.iter().map(|(k, g)| Representative { key: k.clone(), graph: g.clone() }).collect();
    let tmp = dir.join(format!("level_{n}.json.tmp"));
    fs::write(&tmp, serde_json::to_vec(&reps)?)?;
    fs::rename(tmp, level_file(dir, n))?;
    Ok(())
}

fn read_level(dir: &Path, n: usize) -> Result<Option<Level>> {
    let p = level_file(dir, n);
    if !p.exists() {
        return Ok(None);
    }
    let reps: Vec<Representative> = serde_json::from_slice(&fs::read(p)?)?;
    Ok(Some(reps.into_iter().map(|r| (r.key, r.graph)).collect()))
}

pub fn grow(config: &GrowConfig) -> Result<GrowReport> {
    grow_with(config, &GrowOptions::default())
}

/// Grow with optional checkpointing. With `resume`, levels already on disk are
/// reused when the stored configuration matches.
pub fn grow_with(config: &GrowConfig, opts: &GrowOptions) -> Result<GrowReport> {
    config.validate()?;
    if let Some(dir) = &opts.checkpoint {
        fs::create_dir_all(dir)?;
        let cfg_path = dir.join("config.json");
        let text = serde_json::to_string_pretty(config)?;
        if opts.resume && cfg_path.exists() {
            let old: GrowConfig = serde_json::from_slice(&fs::read(&cfg_path)?)?;
            if &old != config {
                return Err(Error::Config(format!("{} holds a different configuration", dir.display())));
            }
        } else {
            for n in 1..=config.max_n + 1 {
                let _ = fs::remove_file(level_file(dir, n));
            }
            fs::write(cfg_path, text)?;
        }
    }
    let mut levels: BTreeMap<usize, Level> = BTreeMap::new();
    for s in &config.seeds {
        let s = s.promote(config.ring)?;
        if s.n() <= config.max_n && is_cyclotomic_fast(&s) && !config.excluded_by(&s) {
            let (k, g) = canon(&s);
            levels.entry(s.n()).or_default().insert(k, g);
        }
    }
    let start = levels.keys().next().copied().unwrap_or(config.max_n + 1);
    let mut exhausted = true;
    let mut n = start;
    while n <= config.max_n {
        let mut cur = levels.remove(&n).unwrap_or_default();
        let stored = match (&opts.checkpoint, opts.resume) {
            (Some(dir), true) => read_level(dir, n)?,
            _ => None,
        };
        if let Some(level) = stored {
            cur = level;
        } else {
            if n > start {
                let grown = children(config, levels.get(&(n - 1)).expect("previous level"));
                let kept: Vec<(CanonicalKey, HGraph)> =
                    grown.into_par_iter().filter(|(_, g)| !config.excluded_by(g)).collect();
                cur.extend(kept);
            }
            if let Some(dir) = &opts.checkpoint {
                write_level(dir, n, &cur)?;
            }
        }
        let too_many = config.limit.is_some_and(|l| cur.len() > l);
        levels.insert(n, cur);
        if too_many {
            exhausted = false;
            break;
        }
        n += 1;
    }
    let counts_by_n = levels.iter().map(|(n, l)| (*n, l.len())).collect();
    let representatives = levels
        .into_iter()
        .map(|(n, l)| (n, l.into_iter().map(|(key, graph)| Representative { key, graph }).collect()))
        .collect();
    Ok(GrowReport { counts_by_n, representatives, frontier_exhausted: exhausted })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Type2Outcome {
    pub holds: bool,
    /// A reachable graph embedding in none of the expected maximals.
    pub counterexample: Option<HGraph>,
    pub classes: usize,
}

fn embeds_somewhere(g: &HGraph, maximals: &[HGraph]) -> bool {
    maximals.iter().any(|m| m.n() >= g.n() && find_embedding(m, g, EquivFlags::FULL).is_some())
}

/// Closure of `h` under cyclotomic one-vertex extensions, checking that every
/// reachable graph embeds in one of `maximals`. Growth stops one vertex past
/// the largest maximal, where any survivor is a counterexample.
pub fn verify_type2(h: &HGraph, maximals: &[HGraph], config: &GrowConfig) -> Result<Type2Outcome> {
    let mut ring = config.ring;
    for g in maximals.iter().chain([h]) {
        ring = ring.join(g.ring()).ok_or(Error::RingMismatch(ring, g.ring()))?;
    }
    let maximals: Vec<HGraph> = maximals.iter().map(|m| m.promote(ring)).collect::<Result<_>>()?;
    let cfg = GrowConfig {
        ring,
        weights: config.weights.iter().map(|w| w.promote(ring)).collect::<Result<_>>()?,
        ..config.clone()
    };
    cfg.validate()?;
    let top = maximals.iter().map(HGraph::n).max().unwrap_or(0) + 1;
    let (k, g) = canon(&h.promote(ring)?);
    let mut level: Level = [(k, g)].into_iter().collect();
    let mut classes = 0;
    loop {
        classes += level.len();
        let bad: Option<HGraph> = level
            .par_iter()
            .filter(|(_, g)| !embeds_somewhere(g, &maximals))
            .map(|(_, g)| g.clone())
            .find_first(|_| true);
        if bad.is_some() {
            return Ok(Type2Outcome { holds: false, counterexample: bad, classes });
        }
        let n = level.values().next().map(HGraph::n).unwrap_or(top);
        if level.is_empty() || n >= top {
            return Ok(Type2Outcome { holds: true, counterexample: None, classes });
        }
        level = children(&cfg, &level);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub excluded: String,
    pub maximals: Vec<String>,
    pub holds: bool,
    pub classes: usize,
    /// For each listed maximal, whether dropping it makes the check fail.
    pub drop_detected: Vec<(String, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub table: String,
    pub rows: Vec<RowCheck>,
}

impl TableReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.holds && r.drop_detected.iter().all(|d| d.1))
    }
}

/// Closure settings for the tables: all charges and all weights of norm at
/// most 4, since the rows list charged maximals as well.
pub fn table_config(table: &catalog::ContainmentTable) -> GrowConfig {
    GrowConfig::full(table.ring, vec![], 1)
}

/// Check every row of a containment table against exactly its listed maximals,
/// and with each listed maximal removed in turn.
pub fn verify_table(name: &str) -> Result<TableReport> {
    let table = catalog::containment_table(name)?;
    let config = table_config(&table);
    let mut rows = Vec::new();
    for (x, names) in &table.rows {
        let h = catalog::excluded(x)?;
        let ms: Vec<HGraph> = names.iter().map(|m| catalog::lookup(m, None)).collect::<Result<_>>()?;
        let out = verify_type2(&h, &ms, &config)?;
        let mut drop_detected = Vec::new();
        for i in 0..ms.len() {
            let mut fewer = ms.clone();
            fewer.remove(i);
            let o = verify_type2(&h, &fewer, &config)?;
            drop_detected.push((names[i].clone(), !o.holds));
        }
        rows.push(RowCheck {
            excluded: x.clone(),
            maximals: names.clone(),
            holds: out.holds,
            classes: out.classes,
            drop_detected,
        });
    }
    Ok(TableReport { table: name.to_string(), rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub ring: RingId,
    pub max_n: usize,
    pub counts_by_n: BTreeMap<usize, usize>,
    pub orphans: Vec<HGraph>,
    /// Names of catalogue maximals found among the enumerated classes.
    pub maximal_found: Vec<String>,
    /// Enumerated maximal classes matching no catalogue name.
    pub unlisted_maximal: Vec<HGraph>,
}

impl ClassificationReport {
    pub fn ok(&self) -> bool {
        self.orphans.is_empty() && self.unlisted_maximal.is_empty()
    }
}

/// Enumerate every connected cyclotomic graph over `ring` on at most `max_n`
/// vertices and check each embeds in a catalogue maximal. Families are
/// instantiated up to `2 max_n + 3` vertices.
pub fn verify_classification(ring: RingId, max_n: usize) -> Result<ClassificationReport> {
    verify_classification_with(ring, max_n, &GrowOptions::default())
}

pub fn verify_classification_with(ring: RingId, max_n: usize, opts: &GrowOptions) -> Result<ClassificationReport> {
    let seeds = CHARGES.iter().map(|&c| HGraph::with_charges(ring, vec![c])).collect();
    let report = grow_with(&GrowConfig::full(ring, seeds, max_n), opts)?;
    let named = catalog::maximals(ring, 2 * max_n + 3);
    let graphs: Vec<HGraph> = named.iter().map(|m| m.1.clone()).collect();
    let reps: Vec<&Representative> = report.all().collect();
    let orphans: Vec<HGraph> =
        reps.par_iter().filter(|r| !embeds_somewhere(&r.graph, &graphs)).map(|r| r.graph.clone()).collect();
    let maximal: Vec<&Representative> =
        reps.par_iter().filter(|r| maximal_counterexample(&r.graph).is_none()).copied().collect();
    let by_key: BTreeMap<CanonicalKey, &str> =
        named.iter().filter(|m| m.1.n() <= max_n).map(|(s, g)| (canon(g).0, s.as_str())).collect();
    let mut maximal_found = Vec::new();
    let mut unlisted_maximal = Vec::new();
    for r in maximal {
        match by_key.get(&r.key) {
            Some(s) => maximal_found.push(s.to_string()),
            None => unlisted_maximal.push(r.graph.clone()),
        }
    }
    maximal_found.sort();
    Ok(ClassificationReport { ring, max_n, counts_by_n: report.counts_by_n, orphans, maximal_found, unlisted_maximal })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeavyEdgeReport {
    pub ring: RingId,
    /// Closure of a `1 + w` edge against `S_4tt` (Eisenstein only).
    pub one_plus_omega: Option<Type2Outcome>,
    /// Closure of a weight-2 edge against `S_2`.
    pub weight_two: Type2Outcome,
}

impl HeavyEdgeReport {
    pub fn ok(&self) -> bool {
        self.weight_two.holds && self.one_plus_omega.as_ref().is_none_or(|o| o.holds)
    }
}

pub fn verify_weight_heavy_edges(ring: RingId) -> Result<HeavyEdgeReport> {
    let config = GrowConfig::full(ring, vec![], 1);
    let edge = |w: QuadInt| HGraph::from_edges(ring, vec![0, 0], &[(0, 1, w)]);
    let weight_two = verify_type2(&edge(QuadInt::int(2, ring))?, &[catalog::sporadic("S_2")?], &config)?;
    let one_plus_omega = match ring {
        RingId::Eisenstein => {
            Some(verify_type2(&edge(QuadInt::new(1, 1, ring)?)?, &[catalog::sporadic("S_4tt")?], &config)?)
        }
        _ => None,
    };
    Ok(HeavyEdgeReport { ring, one_plus_omega, weight_two })
}
