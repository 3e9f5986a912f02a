//! Equivalence of Hermitian matrices: unit switchings, relabelling, Galois
//! conjugation and (optionally) global negation.
//!
//! Canonical form of a connected graph: over all orderings in which every
//! vertex after the first is adjacent to an earlier one, switch each new vertex
//! so the weight from its first earlier neighbour is a fixed unit-orbit
//! representative, and take the lexicographically least sequence of rows
//! `(colour, charge, weights to earlier vertices)`. Colours come from
//! switching-invariant colour refinement and only serve to prune; the key omits
//! them. Disconnected graphs are handled component by component.

use crate::error::{Error, Result};
use crate::graph::HGraph;
use crate::ring::{units, QuadInt, RingId};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EquivFlags {
    pub allow_negation: bool,
    pub allow_galois: bool,
}

impl EquivFlags {
    /// Switchings, permutations and conjugation.
    pub const STRONG: EquivFlags = EquivFlags { allow_negation: false, allow_galois: true };
    /// Strong equivalence together with `A -> -A`.
    pub const FULL: EquivFlags = EquivFlags { allow_negation: true, allow_galois: true };
}

impl Default for EquivFlags {
    fn default() -> Self {
        EquivFlags::FULL
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<CanonicalKey> {
        if !s.len().is_multiple_of(2) {
            return Err(Error::Parse("odd-length hex key".into()));
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<u8>>>()
            .map(CanonicalKey)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<CanonicalKey, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalKey::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// u-switching at `v`: `w(v, x) -> u w(v, x)`, `w(x, v) -> w(x, v) conj(u)`.
pub fn switch(g: &HGraph, v: usize, u: QuadInt) -> Result<HGraph> {
    let u = u.promote(g.ring())?;
    if !u.is_unit() {
        return Err(Error::NotUnit(u.to_string()));
    }
    if v >= g.n() {
        return Err(Error::VertexOutOfRange(v, g.n()));
    }
    let mut h = g.clone();
    for x in 0..g.n() {
        if x != v {
            let w = g.weight(v, x);
            if !w.is_zero() {
                h.set_weight(v, x, u * w)?;
            }
        }
    }
    Ok(h)
}

pub fn galois_conj(g: &HGraph) -> HGraph {
    g.galois_conj()
}

/// The graphs `sigma(+-g)` allowed by `flags`, tagged `(conjugated, negated)`.
fn variants(g: &HGraph, flags: EquivFlags) -> Vec<(HGraph, bool, bool)> {
    let mut out = vec![(g.clone(), false, false)];
    if flags.allow_galois && g.ring() != RingId::Rational {
        out.push((g.galois_conj(), true, false));
    }
    if flags.allow_negation {
        let more: Vec<_> = out.iter().map(|(h, c, _)| (h.negate(), *c, true)).collect();
        out.extend(more);
    }
    out
}

const OFF: i64 = 1 << 19;

fn wcode(w: QuadInt) -> u64 {
    if w.is_zero() {
        return 0;
    }
    assert!(w.a.abs() < OFF && w.b.abs() < OFF, "weight {w} too large to canonicalise");
    1 + ((w.norm() as u64) << 40) + (((w.a + OFF) as u64) << 20) + (w.b + OFF) as u64
}

fn wdecode(c: u64, ring: RingId) -> QuadInt {
    if c == 0 {
        return QuadInt::zero(ring);
    }
    let c = c - 1;
    let mask = (1u64 << 20) - 1;
    QuadInt { a: ((c >> 20) & mask) as i64 - OFF, b: (c & mask) as i64 - OFF, ring }
}

fn zigzag(x: i64) -> u64 {
    ((x << 1) ^ (x >> 63)) as u64
}

fn push_varint(out: &mut Vec<u8>, mut x: u64) {
    loop {
        let b = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(b);
            return;
        }
        out.push(b | 0x80);
    }
}

/// Switching-invariant colour refinement on one component, ranks canonical.
fn refine_colours(g: &HGraph, verts: &[usize]) -> Vec<u64> {
    let n = g.n();
    let mut colour = vec![0u64; n];
    let mut sigs: Vec<(usize, Vec<i64>)> = verts
        .iter()
        .map(|&v| {
            let mut norms: Vec<i64> = g.neighbors(v).map(|u| g.weight(v, u).norm()).collect();
            norms.sort_unstable();
            let mut s = vec![g.charge(v), g.degree(v).unwrap_or(0)];
            s.extend(norms);
            (v, s)
        })
        .collect();
    let mut classes = 0;
    loop {
        let ranks: BTreeMap<&Vec<i64>, u64> = {
            let mut all: Vec<&Vec<i64>> = sigs.iter().map(|(_, s)| s).collect();
            all.sort();
            all.dedup();
            all.into_iter().enumerate().map(|(i, s)| (s, i as u64)).collect()
        };
        let count = ranks.len();
        for (v, s) in &sigs {
            colour[*v] = ranks[s];
        }
        if count == classes || count == verts.len() {
            return colour;
        }
        classes = count;
        sigs = verts
            .iter()
            .map(|&v| {
                let mut nb: Vec<(i64, i64)> =
                    g.neighbors(v).map(|u| (g.weight(v, u).norm(), colour[u] as i64)).collect();
                nb.sort_unstable();
                let mut s = vec![colour[v] as i64];
                for (a, b) in nb {
                    s.push(a);
                    s.push(b);
                }
                (v, s)
            })
            .collect();
    }
}

struct CompSearch<'a> {
    g: &'a HGraph,
    verts: &'a [usize],
    colour: Vec<u64>,
    placed: Vec<bool>,
    order: Vec<usize>,
    sw: Vec<QuadInt>,
    rows: Vec<Vec<u64>>,
    best: Option<Vec<Vec<u64>>>,
    version: u64,
}

impl CompSearch<'_> {
    /// Switch for candidate `c` and its row against the placed prefix.
    fn row_for(&self, c: usize) -> (QuadInt, Vec<u64>) {
        let ring = self.g.ring();
        let mut row = Vec::with_capacity(self.order.len() + 2);
        row.push(self.colour[c]);
        row.push(zigzag(self.g.charge(c)));
        let mut t = None;
        for &j in &self.order {
            let w = self.g.weight(j, c);
            if w.is_zero() {
                row.push(0);
                continue;
            }
            let x = self.sw[j] * w;
            let t = *t.get_or_insert_with(|| x.orbit_rep().1);
            row.push(wcode(x * t));
        }
        // w'(j, c) = s_j w(j, c) conj(s_c) with conj(s_c) = t
        let s = t.map(|t| t.conj()).unwrap_or_else(|| QuadInt::one(ring));
        (s, row)
    }

    fn dfs(&mut self, mut cmp: Ordering) {
        let depth = self.order.len();
        if depth == self.verts.len() {
            if self.best.is_none() || cmp == Ordering::Less {
                self.best = Some(self.rows.clone());
                self.version += 1;
            }
            return;
        }
        let mut cands: Vec<(usize, QuadInt, Vec<u64>)> = Vec::new();
        for &c in self.verts {
            if self.placed[c] {
                continue;
            }
            if depth > 0 && !self.order.iter().any(|&j| !self.g.weight(j, c).is_zero()) {
                continue;
            }
            let (s, row) = self.row_for(c);
            match cands.first().map(|x| row.cmp(&x.2)) {
                Some(Ordering::Greater) => continue,
                Some(Ordering::Less) => cands.clear(),
                _ => {}
            }
            cands.push((c, s, row));
        }
        let row = cands[0].2.clone();
        if cmp == Ordering::Equal {
            if let Some(b) = &self.best {
                match row.cmp(&b[depth]) {
                    Ordering::Greater => return,
                    Ordering::Less => cmp = Ordering::Less,
                    Ordering::Equal => {}
                }
            }
        }
        let version = self.version;
        for (c, s, row) in cands {
            if self.version != version {
                // best now agrees with this prefix
                cmp = Ordering::Equal;
                if let Some(b) = &self.best {
                    if row.cmp(&b[depth]) == Ordering::Greater {
                        return;
                    }
                }
            }
            self.placed[c] = true;
            self.order.push(c);
            self.sw[c] = s;
            self.rows.push(row);
            self.dfs(cmp);
            self.rows.pop();
            self.order.pop();
            self.placed[c] = false;
        }
    }
}

/// Canonical rows of one connected component: charge then weight codes.
fn canon_component(g: &HGraph, verts: &[usize]) -> Vec<Vec<u64>> {
    let mut s = CompSearch {
        g,
        verts,
        colour: refine_colours(g, verts),
        placed: vec![false; g.n()],
        order: Vec::with_capacity(verts.len()),
        sw: vec![QuadInt::one(g.ring()); g.n()],
        rows: Vec::with_capacity(verts.len()),
        best: None,
        version: 0,
    };
    s.dfs(Ordering::Equal);
    s.best.expect("nonempty component").into_iter().map(|mut r| r.split_off(1)).collect()
}

fn component_bytes(rows: &[Vec<u64>]) -> Vec<u8> {
    let mut out = Vec::new();
    push_varint(&mut out, rows.len() as u64);
    for r in rows {
        for &x in r {
            push_varint(&mut out, x);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// A representative of the class determined by the key alone.
    pub graph: HGraph,
}

pub fn canonical_form(g: &HGraph, flags: EquivFlags) -> CanonicalForm {
    let comps = g.components();
    let mut best: Option<(Vec<u8>, Vec<Vec<Vec<u64>>>)> = None;
    for (h, _, _) in variants(g, flags) {
        let mut parts: Vec<(Vec<u8>, Vec<Vec<u64>>)> = comps
            .iter()
            .map(|c| {
                let rows = canon_component(&h, c);
                (component_bytes(&rows), rows)
            })
            .collect();
        parts.sort();
        let mut bytes = vec![match g.ring() {
            RingId::Rational => 0u8,
            RingId::Gaussian => 1,
            RingId::Eisenstein => 2,
        }];
        push_varint(&mut bytes, g.n() as u64);
        push_varint(&mut bytes, parts.len() as u64);
        for (b, _) in &parts {
            bytes.extend_from_slice(b);
        }
        if best.as_ref().is_none_or(|(b, _)| bytes < *b) {
            best = Some((bytes, parts.into_iter().map(|p| p.1).collect()));
        }
    }
    let (bytes, comps) = best.expect("at least one variant");
    let ring = g.ring();
    let mut charges = Vec::with_capacity(g.n());
    let mut edges = Vec::new();
    let mut base = 0;
    for rows in &comps {
        for (k, r) in rows.iter().enumerate() {
            let z = r[0];
            charges.push(((z >> 1) as i64) ^ -((z & 1) as i64));
            for (j, &c) in r[1..].iter().enumerate() {
                if c != 0 {
                    edges.push((base + j, base + k, wdecode(c, ring)));
                }
            }
        }
        base += rows.len();
    }
    let graph = HGraph::from_edges(ring, charges, &edges).expect("decoded rows form a graph");
    CanonicalForm { key: CanonicalKey(bytes), graph }
}

pub fn canonical_key(g: &HGraph, flags: EquivFlags) -> CanonicalKey {
    canonical_form(g, flags).key
}

/// Bring two graphs over a common ring, using the smallest ring that holds
/// each one's entries.
pub fn common_ring(a: &HGraph, b: &HGraph) -> Result<(HGraph, HGraph)> {
    let ring = a
        .ring()
        .join(b.ring())
        .or_else(|| a.minimal_ring().join(b.ring()))
        .or_else(|| a.ring().join(b.minimal_ring()))
        .or_else(|| a.minimal_ring().join(b.minimal_ring()))
        .ok_or(Error::RingMismatch(a.ring(), b.ring()))?;
    Ok((demote_or_promote(a, ring)?, demote_or_promote(b, ring)?))
}

fn demote_or_promote(g: &HGraph, ring: RingId) -> Result<HGraph> {
    if g.ring() == ring {
        return Ok(g.clone());
    }
    if g.minimal_ring() == RingId::Rational {
        let mut h = HGraph::with_charges(ring, g.charges().to_vec());
        for (u, v, w) in g.edges() {
            h.set_weight(u, v, QuadInt::int(w.a, ring))?;
        }
        return Ok(h);
    }
    g.promote(ring)
}

pub fn are_equivalent(a: &HGraph, b: &HGraph, flags: EquivFlags) -> Result<bool> {
    let (a, b) = common_ring(a, b)?;
    if a.n() != b.n() {
        return Ok(false);
    }
    Ok(canonical_key(&a, flags) == canonical_key(&b, flags))
}

/// Witness that `h` is equivalent to an induced subgraph of `g`:
/// `g(map[u], map[v]) = s_u h'(u, v) conj(s_v)` where `h'` is `h` after the
/// recorded conjugation and negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
    pub units: Vec<QuadInt>,
    pub conjugated: bool,
    pub negated: bool,
}

struct EmbedSearch<'a> {
    g: &'a HGraph,
    h: &'a HGraph,
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
    gdeg: Vec<i64>,
    hdeg: Vec<i64>,
    map: Vec<usize>,
    sw: Vec<QuadInt>,
    used: Vec<bool>,
    units: Vec<QuadInt>,
}

impl EmbedSearch<'_> {
    fn consistent(&self, depth: usize, x: usize, s: QuadInt) -> bool {
        let u = self.order[depth];
        for &v in &self.order[..depth] {
            let want = self.sw[v] * self.h.weight(v, u) * s.conj();
            if self.g.weight(self.map[v], x) != want {
                return false;
            }
        }
        true
    }

    fn go(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        let cands: Vec<usize> = match self.parent[u] {
            Some(p) => self.g.neighbors(self.map[p]).collect(),
            None => (0..self.g.n()).collect(),
        };
        for x in cands {
            if self.used[x] || self.g.charge(x) != self.h.charge(u) || self.gdeg[x] < self.hdeg[u] {
                continue;
            }
            let s = match self.parent[u] {
                None => QuadInt::one(self.g.ring()),
                Some(p) => {
                    // g(map p, x) = s_p h(p, u) conj(s_u)
                    let base = self.sw[p] * self.h.weight(p, u);
                    let target = self.g.weight(self.map[p], x);
                    match self.units.iter().find(|&&c| base * c == target) {
                        Some(c) => c.conj(),
                        None => continue,
                    }
                }
            };
            if !self.consistent(depth, x, s) {
                continue;
            }
            self.used[x] = true;
            self.map[u] = x;
            self.sw[u] = s;
            if self.go(depth + 1) {
                return true;
            }
            self.used[x] = false;
        }
        false
    }
}

/// Vertex order for embedding `h`: each component from its highest-degree
/// vertex, then greedily the vertex with most placed neighbours.
fn embed_order(h: &HGraph) -> (Vec<usize>, Vec<Option<usize>>) {
    let deg = h.degrees();
    let n = h.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    while order.len() < n {
        let start = (0..n).filter(|&v| !placed[v]).max_by_key(|&v| (deg[v], std::cmp::Reverse(v))).unwrap();
        placed[start] = true;
        order.push(start);
        loop {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .map(|v| (h.neighbors(v).filter(|&u| placed[u]).count(), deg[v], std::cmp::Reverse(v)))
                .filter(|t| t.0 > 0)
                .max();
            let Some((_, _, std::cmp::Reverse(v))) = next else { break };
            parent[v] = order.iter().copied().find(|&u| !h.weight(u, v).is_zero());
            placed[v] = true;
            order.push(v);
        }
    }
    (order, parent)
}

/// Find an induced subgraph of `g` equivalent to `h`.
pub fn find_embedding(g: &HGraph, h: &HGraph, flags: EquivFlags) -> Option<Embedding> {
    let (g, h) = common_ring(g, h).ok()?;
    if h.n() > g.n() {
        return None;
    }
    let (order, parent) = embed_order(&h);
    let gdeg = g.degrees();
    for (hv, conjugated, negated) in variants(&h, flags) {
        let mut s = EmbedSearch {
            g: &g,
            h: &hv,
            order: order.clone(),
            parent: parent.clone(),
            gdeg: gdeg.clone(),
            hdeg: hv.degrees(),
            map: vec![0; hv.n()],
            sw: vec![QuadInt::one(g.ring()); hv.n()],
            used: vec![false; g.n()],
            units: units(g.ring()),
        };
        if s.go(0) {
            return Some(Embedding { map: s.map, units: s.sw, conjugated, negated });
        }
    }
    None
}

/// Whether some induced subgraph of `g` is equivalent to `h`.
pub fn contains_up_to_equiv(g: &HGraph, h: &HGraph, flags: EquivFlags) -> bool {
    find_embedding(g, h, flags).is_some()
}
