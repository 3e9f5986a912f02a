//! Named graphs: the maximal families, the fixed sporadic and excluded graphs,
//! path anchors, cycles, exclusion lists and containment tables.
//!
//! ASCII names for decorated sporadics:
//!
//! | name  | decoration |
//! |-------|------------|
//! | S_2t  | S_2†       |
//! | S_4t  | S_4†       |
//! | S_4tt | S_4‡       |
//! | S_6t  | S_6†       |
//! | S_8p  | S_8′       |
//! | S_8t  | S_8†       |
//! | S_8tt | S_8††      |
//! | S_8d  | S_8‡       |
//!
//! Families are addressed as `T_2k`, `Ti_2k`, `Tw_2k`, `C_2k`, `Cpp_2k`,
//! `Cpm_2k` and `C_2k+1` (odd subscript), or by stem plus a parameter `k`.
//! Anchors are `P_l_r`, `P_2r+1`, `P_2r` and their primed supergraphs
//! `Pp_...`; cycles are `O_n_s` with `s` a unit such as `i` or `-1`.

use crate::equiv::{canonical_key, EquivFlags};
use crate::error::{Error, Result};
use crate::graph::HGraph;
use crate::ring::{QuadInt, RingId};
use crate::spectra::{is_cyclotomic, is_cyclotomic_kronecker, is_maximal};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    MaximalFamily,
    SporadicMaximal,
    ExcludedType1,
    ExcludedType2,
    Anchor,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: Kind,
    pub graph: HGraph,
}

#[derive(Deserialize)]
struct DataFile {
    graphs: Vec<CatalogEntry>,
}

const DATA: &str = include_str!("../data/catalog.json");

/// The fixed graphs (sporadic maximals and excluded subgraphs) in file order.
pub fn fixed_entries() -> &'static [CatalogEntry] {
    static CELL: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CELL.get_or_init(|| {
        let data: DataFile = serde_json::from_str(DATA).expect("embedded catalog parses");
        data.graphs
    })
}

fn fixed(name: &str) -> Option<&'static CatalogEntry> {
    fixed_entries().iter().find(|e| e.name == name)
}

const ALIASES: [(&str, &str); 8] = [
    ("S_2†", "S_2t"),
    ("S_4†", "S_4t"),
    ("S_4‡", "S_4tt"),
    ("S_6†", "S_6t"),
    ("S_8′", "S_8p"),
    ("S_8'", "S_8p"),
    ("S_8††", "S_8tt"),
    ("S_8‡", "S_8d"),
];

fn ascii_name(name: &str) -> &str {
    if name == "S_8†" {
        return "S_8t";
    }
    ALIASES.iter().find(|a| a.0 == name).map(|a| a.1).unwrap_or(name)
}

pub fn sporadic(name: &str) -> Result<HGraph> {
    match fixed(ascii_name(name)) {
        Some(e) if e.kind == Kind::SporadicMaximal => Ok(e.graph.clone()),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

pub fn excluded(name: &str) -> Result<HGraph> {
    match fixed(name) {
        Some(e) if matches!(e.kind, Kind::ExcludedType1 | Kind::ExcludedType2) => Ok(e.graph.clone()),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

pub const SPORADIC_NAMES: [&str; 19] = [
    "S_1", "S_2", "S_2t", "S_4", "S_4t", "S_4tt", "S_5", "S_6", "S_6t", "S_7", "S_8", "S_8p", "S_8t", "S_8tt", "S_8d",
    "S_10", "S_12", "S_14", "S_16",
];

fn q(a: i64, b: i64, ring: RingId) -> QuadInt {
    QuadInt::new(a, b, ring).expect("constant fits ring")
}

fn need(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::BadParameter(what.to_string()))
    }
}

/// Ladder on columns `0..k` (top `2c`, bottom `2c + 1`). With `wrap`, the last
/// column is joined back to the first with weights scaled by `x`.
fn ladder(ring: RingId, k: usize, wrap: Option<QuadInt>, extra: usize) -> HGraph {
    let mut g = HGraph::empty(ring, 2 * k + extra);
    let one = QuadInt::one(ring);
    let steps = if wrap.is_some() { k } else { k.saturating_sub(1) };
    for c in 0..steps {
        let d = (c + 1) % k;
        let m = if c + 1 == k { wrap.unwrap_or(one) } else { one };
        let (tc, bc, td, bd) = (2 * c, 2 * c + 1, 2 * d, 2 * d + 1);
        g.set_weight(tc, td, m).unwrap();
        g.set_weight(tc, bd, m).unwrap();
        g.set_weight(bc, td, -m).unwrap();
        g.set_weight(bc, bd, -m).unwrap();
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TVariant {
    Plain,
    I,
    Omega,
}

/// Toroidal ladder on `2k` vertices; the variant scales the closing edges.
pub fn make_t(k: usize, variant: TVariant) -> Result<HGraph> {
    need(k >= 3, "T_2k needs k >= 3")?;
    let (ring, x) = match variant {
        TVariant::Plain => (RingId::Rational, q(1, 0, RingId::Rational)),
        TVariant::I => (RingId::Gaussian, q(0, 1, RingId::Gaussian)),
        TVariant::Omega => (RingId::Eisenstein, q(0, 1, RingId::Eisenstein)),
    };
    Ok(ladder(ring, k, Some(x), 0))
}

/// `k - 1` ladder columns capped by two vertices joined with weights `1 + i`.
pub fn make_c(k: usize) -> Result<HGraph> {
    need(k >= 2, "C_2k needs k >= 2")?;
    let ring = RingId::Gaussian;
    let m = 2 * (k - 1);
    let mut g = ladder(ring, k - 1, None, 2);
    let (bgn, end) = (m, m + 1);
    let p = q(1, 1, ring);
    g.set_weight(0, bgn, p)?;
    g.set_weight(1, bgn, p)?;
    g.set_weight(m - 2, end, p)?;
    g.set_weight(m - 1, end, -p)?;
    Ok(g)
}

/// `k` ladder columns with charged end columns: `+1, +1` at the start and
/// `+1, +1` (`same_sign`) or `-1, -1` at the end.
pub fn make_c_charged(k: usize, same_sign: bool) -> Result<HGraph> {
    need(k >= 2, "C++_2k and C+-_2k need k >= 2")?;
    let ring = RingId::Rational;
    let mut g = ladder(ring, k, None, 0);
    let (t, b) = (2 * k - 2, 2 * k - 1);
    g.set_charge(0, 1)?;
    g.set_charge(1, 1)?;
    g.set_weight(0, 1, q(1, 0, ring))?;
    let s = if same_sign { 1 } else { -1 };
    g.set_charge(t, s)?;
    g.set_charge(b, s)?;
    g.set_weight(t, b, q(-s, 0, ring))?;
    Ok(g)
}

/// `k` ladder columns, a `1 + i` cap at the start and a `+1, +1` column at the end.
pub fn make_c_odd(k: usize) -> Result<HGraph> {
    need(k >= 1, "C_2k+1 needs k >= 1")?;
    let ring = RingId::Gaussian;
    let mut g = ladder(ring, k, None, 1);
    let bgn = 2 * k;
    let p = q(1, 1, ring);
    g.set_weight(0, bgn, p)?;
    g.set_weight(1, bgn, p)?;
    let (t, b) = (2 * k - 2, 2 * k - 1);
    g.set_charge(t, 1)?;
    g.set_charge(b, 1)?;
    g.set_weight(t, b, q(-1, 0, ring))?;
    Ok(g)
}

/// Index of `v_c` (or `v'_c` when `bottom`) in [`make_p_primed`], `-l <= c <= r`.
pub fn p_primed_index(l: usize, c: i64, bottom: bool) -> usize {
    2 * (c + l as i64) as usize + bottom as usize
}

/// Ladder on columns `-l..=r`.
pub fn make_p_primed(l: usize, r: usize) -> Result<HGraph> {
    Ok(ladder(RingId::Rational, l + r + 1, None, 0))
}

/// Tops `v_{-l} .. v_r` in order, then `v'_0`.
pub fn make_p(l: usize, r: usize) -> Result<HGraph> {
    let g = make_p_primed(l, r)?;
    let mut keep: Vec<usize> = (-(l as i64)..=r as i64).map(|c| p_primed_index(l, c, false)).collect();
    keep.push(p_primed_index(l, 0, true));
    g.induced_subgraph(&keep)
}

/// Index of `v_t` / `v'_t` in [`make_p_odd_primed`]; `v_0` is index 0.
pub fn p_odd_index(t: usize, bottom: bool) -> usize {
    if t == 0 {
        0
    } else {
        2 * t - 1 + bottom as usize
    }
}

/// `v_0` joined by `1 + i` to both vertices of the first of `r` ladder columns.
pub fn make_p_odd_primed(r: usize) -> Result<HGraph> {
    need(r >= 1, "P_2r+1 needs r >= 1")?;
    let ring = RingId::Gaussian;
    let mut g = HGraph::empty(ring, 2 * r + 1);
    let p = q(1, 1, ring);
    g.set_weight(p_odd_index(1, false), 0, p)?;
    g.set_weight(p_odd_index(1, true), 0, p)?;
    for t in 1..r {
        ladder_step(
            &mut g,
            [p_odd_index(t, false), p_odd_index(t, true)],
            [p_odd_index(t + 1, false), p_odd_index(t + 1, true)],
        );
    }
    Ok(g)
}

/// `v_0, v_1, .., v_r`.
pub fn make_p_odd(r: usize) -> Result<HGraph> {
    let g = make_p_odd_primed(r)?;
    let keep: Vec<usize> = (0..=r).map(|t| p_odd_index(t, false)).collect();
    g.induced_subgraph(&keep)
}

/// Index of `v_t` / `v'_t` in [`make_p_charged_primed`], `1 <= t <= r`.
pub fn p_charged_index(t: usize, bottom: bool) -> usize {
    2 * (t - 1) + bottom as usize
}

/// `r` ladder columns, the first charged `-1, -1`.
pub fn make_p_charged_primed(r: usize) -> Result<HGraph> {
    need(r >= 1, "P_2r needs r >= 1")?;
    let ring = RingId::Rational;
    let mut g = ladder(ring, r, None, 0);
    g.set_charge(0, -1)?;
    g.set_charge(1, -1)?;
    g.set_weight(0, 1, q(-1, 0, ring))?;
    Ok(g)
}

/// `v_1, .., v_r`.
pub fn make_p_charged(r: usize) -> Result<HGraph> {
    let g = make_p_charged_primed(r)?;
    let keep: Vec<usize> = (1..=r).map(|t| p_charged_index(t, false)).collect();
    g.induced_subgraph(&keep)
}

fn ladder_step(g: &mut HGraph, a: [usize; 2], b: [usize; 2]) {
    let one = QuadInt::one(g.ring());
    g.set_weight(a[0], b[0], one).unwrap();
    g.set_weight(a[0], b[1], one).unwrap();
    g.set_weight(a[1], b[0], -one).unwrap();
    g.set_weight(a[1], b[1], -one).unwrap();
}

/// `n`-cycle `v_1 .. v_n` with `w(v_1, v_n) = s` and every other edge 1.
pub fn make_o_cycle(n: usize, s: QuadInt) -> Result<HGraph> {
    need(n >= 3, "O_n needs n >= 3")?;
    if !s.is_unit() {
        return Err(Error::NotUnit(s.to_string()));
    }
    let mut g = HGraph::empty(s.ring, n);
    for j in 0..n - 1 {
        g.set_weight(j, j + 1, QuadInt::one(s.ring))?;
    }
    g.set_weight(0, n - 1, s)?;
    Ok(g)
}

fn family_graph(stem: &str, k: usize) -> Result<HGraph> {
    match stem {
        "T" => make_t(k, TVariant::Plain),
        "Ti" => make_t(k, TVariant::I),
        "Tw" => make_t(k, TVariant::Omega),
        "C" => make_c(k),
        "Codd" => make_c_odd(k),
        "Cpp" => make_c_charged(k, true),
        "Cpm" => make_c_charged(k, false),
        _ => Err(Error::UnknownName(stem.to_string())),
    }
}

pub const FAMILY_STEMS: [&str; 7] = ["T", "Ti", "Tw", "C", "Cpp", "Cpm", "Codd"];

/// Smallest parameter and vertex count `n(k)` of each family.
fn family_shape(stem: &str) -> (usize, fn(usize) -> usize) {
    match stem {
        "T" | "Ti" | "Tw" => (3, |k| 2 * k),
        "Codd" => (1, |k| 2 * k + 1),
        _ => (2, |k| 2 * k),
    }
}

/// Canonical subscripted name of a family member.
pub fn family_name(stem: &str, k: usize) -> String {
    let (_, size) = family_shape(stem);
    let stem = if stem == "Codd" { "C" } else { stem };
    format!("{stem}_{}", size(k))
}

fn ring_for_cycle(s: &str) -> RingId {
    if s.contains('i') {
        RingId::Gaussian
    } else if s.contains('w') || s.contains('ω') {
        RingId::Eisenstein
    } else {
        RingId::Rational
    }
}

/// Any named graph. `param` supplies `k` for a bare family stem.
pub fn lookup(name: &str, param: Option<usize>) -> Result<HGraph> {
    let unknown = || Error::UnknownName(name.to_string());
    let name = ascii_name(name);
    if let Some(e) = fixed(name) {
        return Ok(e.graph.clone());
    }
    if FAMILY_STEMS.contains(&name) {
        let k = param.ok_or_else(|| Error::BadParameter(format!("{name} needs a parameter")))?;
        return family_graph(name, k);
    }
    let parts: Vec<&str> = name.split('_').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    match parts.as_slice() {
        [stem @ ("T" | "Ti" | "Tw" | "Cpp" | "Cpm"), n] => {
            let n = num(n)?;
            need(n % 2 == 0, "even subscript expected")?;
            family_graph(stem, n / 2)
        }
        ["C", n] => {
            let n = num(n)?;
            if n % 2 == 0 {
                make_c(n / 2)
            } else {
                make_c_odd(n / 2)
            }
        }
        ["P", n] => {
            let n = num(n)?;
            if n % 2 == 1 {
                make_p_odd(n / 2)
            } else {
                make_p_charged(n / 2)
            }
        }
        ["Pp", n] => {
            let n = num(n)?;
            if n % 2 == 1 {
                make_p_odd_primed(n / 2)
            } else {
                make_p_charged_primed(n / 2)
            }
        }
        ["P", l, r] => make_p(num(l)?, num(r)?),
        ["Pp", l, r] => make_p_primed(num(l)?, num(r)?),
        ["O", n, s] => make_o_cycle(num(n)?, QuadInt::parse(s, ring_for_cycle(s))?),
        _ => Err(unknown()),
    }
}

/// Named maximal connected cyclotomic graphs over `ring`.
pub fn maximal_names(ring: RingId) -> (Vec<&'static str>, Vec<&'static str>) {
    match ring {
        RingId::Rational => (vec!["T", "Cpp", "Cpm"], vec!["S_1", "S_2", "S_7", "S_8", "S_8p", "S_14", "S_16"]),
        RingId::Gaussian => (
            vec!["T", "Ti", "C", "Cpp", "Cpm", "Codd"],
            vec!["S_1", "S_2", "S_4", "S_4t", "S_7", "S_8", "S_8p", "S_8t", "S_8tt", "S_8d", "S_14", "S_16"],
        ),
        RingId::Eisenstein => (
            vec!["T", "Tw", "Cpp", "Cpm"],
            vec![
                "S_1", "S_2", "S_2t", "S_4tt", "S_5", "S_6", "S_6t", "S_7", "S_8", "S_8p", "S_10", "S_12", "S_14",
                "S_16",
            ],
        ),
    }
}

/// Maximal graphs over `ring` with at most `max_size` vertices, promoted to `ring`.
pub fn maximals(ring: RingId, max_size: usize) -> Vec<(String, HGraph)> {
    let (families, sporadics) = maximal_names(ring);
    let mut out = Vec::new();
    for stem in families {
        let (k0, size) = family_shape(stem);
        let mut k = k0;
        while size(k) <= max_size {
            let g = family_graph(stem, k).expect("family parameter in range");
            out.push((family_name(stem, k), g.promote(ring).expect("family fits ring")));
            k += 1;
        }
    }
    for s in sporadics {
        let g = sporadic(s).expect("known sporadic");
        if g.n() <= max_size {
            out.push((s.to_string(), g.promote(ring).expect("sporadic fits ring")));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionList {
    pub name: String,
    pub ring: RingId,
    pub graphs: Vec<(String, HGraph)>,
}

pub const EXCLUSION_LISTS: [&str; 5] = ["L1", "L2", "L3", "Lw_uncharged", "Lw_charged"];

fn charged_vertices(ring: RingId, charges: &[i64]) -> Vec<(String, HGraph)> {
    charges.iter().map(|&c| (format!("charge_{c:+}"), HGraph::with_charges(ring, vec![c]))).collect()
}

fn named_prefix(prefix: &str) -> impl Iterator<Item = &'static CatalogEntry> + '_ {
    fixed_entries().iter().filter(move |e| e.name.strip_prefix(prefix).is_some_and(|r| r.starts_with('_')))
}

pub fn exclusion_list(name: &str) -> Result<ExclusionList> {
    let (ring, charged, prefixes): (RingId, &[i64], &[&str]) = match name {
        "L1" => (RingId::Gaussian, &[1, -1], &["XA", "YA"]),
        "L2" => (RingId::Gaussian, &[1, -1, 2, -2], &["XA", "YA", "XB", "YB"]),
        "L3" => (RingId::Gaussian, &[], &["XA", "YA", "XB", "YB", "XC", "YC"]),
        "Lw_uncharged" => (RingId::Eisenstein, &[1, -1, 2, -2], &["XA", "YD"]),
        "Lw_charged" => (RingId::Eisenstein, &[], &["XA", "YD", "XE", "YE"]),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let mut graphs = charged_vertices(ring, charged);
    for p in prefixes {
        for e in named_prefix(p) {
            graphs.push((e.name.clone(), e.graph.promote(ring)?));
        }
    }
    Ok(ExclusionList { name: name.to_string(), ring, graphs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentTable {
    pub name: String,
    pub ring: RingId,
    /// Excluded graph name and the names of the maximals containing it.
    pub rows: Vec<(String, Vec<String>)>,
}

pub const TABLES: [&str; 5] = ["tab3", "tab4", "tab5", "tab6", "tab7"];

pub fn containment_table(name: &str) -> Result<ContainmentTable> {
    let (ring, rows): (RingId, &[(&str, &[&str])]) = match name {
        "tab3" => (
            RingId::Gaussian,
            &[
                ("YA_1", &["S_14", "S_16"]),
                ("YA_2", &["S_14", "S_16"]),
                ("YA_3", &["S_14", "S_16"]),
                ("YA_4", &["T_6", "S_7"]),
                ("YA_5", &["Ti_6", "S_8t"]),
                ("YA_6", &["Ti_8", "S_8tt"]),
                ("YA_7", &["Ti_10"]),
            ],
        ),
        "tab4" => {
            (RingId::Gaussian, &[("YB_1", &["S_8d"]), ("YB_2", &["S_8d"]), ("YB_3", &["S_8tt"]), ("YB_4", &["S_2"])])
        }
        "tab5" => (
            RingId::Gaussian,
            &[
                ("YC_1", &["Cpm_4", "S_4", "S_4t", "S_7", "S_8", "S_8p"]),
                ("YC_2", &["S_4"]),
                ("YC_3", &["C_3"]),
                ("YC_4", &["Cpp_6", "S_7"]),
                ("YC_5", &["Cpm_6", "S_8p"]),
                ("YC_6", &["S_7", "S_8p"]),
                ("YC_7", &["S_4t"]),
                ("YC_8", &["S_1"]),
            ],
        ),
        "tab6" => (
            RingId::Eisenstein,
            &[
                ("YD_1", &["S_12", "S_14", "S_16"]),
                ("YD_2", &["S_12", "S_14", "S_16"]),
                ("YD_3", &["S_12", "S_14", "S_16"]),
                ("YD_4", &["S_5", "T_6", "S_7"]),
                ("YD_5", &["Tw_6"]),
                ("YD_6", &["Tw_8"]),
                ("YD_7", &["Tw_8", "S_10", "S_12"]),
                ("YD_8", &["Tw_10"]),
            ],
        ),
        "tab7" => (
            RingId::Eisenstein,
            &[
                ("YE_1", &["S_2"]),
                ("YE_2", &["S_4tt"]),
                ("YE_3", &["Cpm_4", "S_6", "S_6t", "S_7", "S_8", "S_8p"]),
                ("YE_4", &["S_2t"]),
                ("YE_5", &["S_5", "Cpp_6", "S_7"]),
                ("YE_6", &["Cpm_6", "S_8p"]),
                ("YE_7", &["S_6t", "S_7", "S_8p"]),
                ("YE_8", &["S_5"]),
                ("YE_9", &["S_1"]),
            ],
        ),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let rows = rows.iter().map(|(x, ms)| (x.to_string(), ms.iter().map(|m| m.to_string()).collect())).collect();
    Ok(ContainmentTable { name: name.to_string(), ring, rows })
}

/// Every name [`lookup`] accepts without a parameter, for listings.
pub fn names() -> Vec<(String, Kind)> {
    let mut out: Vec<(String, Kind)> = fixed_entries().iter().map(|e| (e.name.clone(), e.kind)).collect();
    for stem in FAMILY_STEMS {
        let (k0, _) = family_shape(stem);
        for k in k0.max(2)..=8 {
            out.push((family_name(stem, k), Kind::MaximalFamily));
        }
    }
    out.push(("P_l_r".into(), Kind::Anchor));
    out.push(("Pp_l_r".into(), Kind::Anchor));
    out.push(("P_n".into(), Kind::Anchor));
    out.push(("Pp_n".into(), Kind::Anchor));
    out.push(("O_n_s".into(), Kind::Cycle));
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GateReport {
    pub checked: usize,
    /// `(graph name, failed invariant)`
    pub violations: Vec<(String, String)>,
}

impl GateReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, name: &str, why: &str) {
        self.violations.push((name.to_string(), why.to_string()));
    }
}

fn both_oracles(g: &HGraph) -> Option<bool> {
    let a = is_cyclotomic(g).is_cyclotomic;
    (a == is_cyclotomic_kronecker(g).is_cyclotomic).then_some(a)
}

/// Family members used by the gate: parameters from the family minimum to `k_max`.
pub fn gate_maximals(ring: RingId, k_max: usize) -> Vec<(String, HGraph)> {
    let (families, sporadics) = maximal_names(ring);
    let mut out = Vec::new();
    for stem in families {
        let (k0, _) = family_shape(stem);
        for k in k0..=k_max {
            let g = family_graph(stem, k).expect("family parameter in range");
            out.push((family_name(stem, k), g.promote(ring).expect("family fits ring")));
        }
    }
    for s in sporadics {
        out.push((s.to_string(), sporadic(s).expect("known sporadic").promote(ring).expect("fits ring")));
    }
    out
}

/// Check the maximal graphs: `A^2 = 4I`, connected, cyclotomic, maximal, and
/// pairwise inequivalent within each ring.
pub fn gate_maximal(k_max: usize) -> GateReport {
    let mut rep = GateReport::default();
    for ring in RingId::ALL {
        let mut seen: BTreeMap<Vec<u8>, String> = BTreeMap::new();
        for (name, g) in gate_maximals(ring, k_max) {
            let name = format!("{name} over {}", ring.tag());
            rep.checked += 1;
            if !g.square_is_4i() {
                rep.fail(&name, "A^2 != 4I");
            }
            if !g.is_connected() {
                rep.fail(&name, "not connected");
            }
            match both_oracles(&g) {
                Some(true) => {}
                Some(false) => rep.fail(&name, "not cyclotomic"),
                None => rep.fail(&name, "cyclotomicity oracles disagree"),
            }
            if !matches!(is_maximal(&g), Ok(true)) {
                rep.fail(&name, "not maximal");
            }
            let key = canonical_key(&g, EquivFlags::FULL).as_bytes().to_vec();
            if let Some(prev) = seen.insert(key, name.clone()) {
                rep.fail(&name, &format!("equivalent to {prev}"));
            }
        }
    }
    rep
}

// a few table rows pair a graph with itself, e.g. YB_4 and S_2
fn is_listed_maximal(g: &HGraph) -> bool {
    let key = canonical_key(g, EquivFlags::FULL);
    maximals(g.ring(), g.n()).iter().any(|(_, m)| m.n() == g.n() && canonical_key(m, EquivFlags::FULL) == key)
}

/// Check the excluded graphs: X-named ones are not cyclotomic, Y-named ones are
/// cyclotomic and not maximal unless they coincide with a listed maximal.
pub fn gate_excluded() -> GateReport {
    let mut rep = GateReport::default();
    for e in fixed_entries() {
        let type1 = match e.kind {
            Kind::ExcludedType1 => true,
            Kind::ExcludedType2 => false,
            _ => continue,
        };
        rep.checked += 1;
        let Some(cyc) = both_oracles(&e.graph) else {
            rep.fail(&e.name, "cyclotomicity oracles disagree");
            continue;
        };
        if type1 && cyc {
            rep.fail(&e.name, "type I graph is cyclotomic");
        }
        if !type1 {
            if !cyc {
                rep.fail(&e.name, "type II graph is not cyclotomic");
            } else if is_maximal(&e.graph) != Ok(false) && !is_listed_maximal(&e.graph) {
                rep.fail(&e.name, "type II graph is maximal");
            }
        }
    }
    rep
}

/// Anchors and their primed supergraphs are cyclotomic and not maximal.
pub fn gate_anchors(max_param: usize) -> GateReport {
    let mut rep = GateReport::default();
    let mut items = Vec::new();
    for l in 0..=max_param {
        for r in 2usize.saturating_sub(l)..=max_param - l {
            items.push((format!("P_{l}_{r}"), make_p(l, r)));
            items.push((format!("Pp_{l}_{r}"), make_p_primed(l, r)));
        }
    }
    for r in 1..=max_param {
        items.push((format!("P_{}", 2 * r + 1), make_p_odd(r)));
        items.push((format!("Pp_{}", 2 * r + 1), make_p_odd_primed(r)));
        items.push((format!("P_{}", 2 * r), make_p_charged(r)));
        items.push((format!("Pp_{}", 2 * r), make_p_charged_primed(r)));
    }
    for (name, g) in items {
        rep.checked += 1;
        match g {
            Err(e) => rep.fail(&name, &e.to_string()),
            Ok(g) => {
                if both_oracles(&g) != Some(true) {
                    rep.fail(&name, "not cyclotomic");
                } else if is_maximal(&g) != Ok(false) {
                    rep.fail(&name, "maximal");
                }
            }
        }
    }
    rep
}
