//! Hermitian matrices over Z, Z[i], Z[w] viewed as charged weighted graphs.
//!
//! Entry `(u, v)` is the weight `w(u, v)`; `w(v, u) = conj(w(u, v))`. Diagonal
//! entries are the (rational integer) charges.

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::ring::{QuadInt, RingId};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct HGraph {
    ring: RingId,
    n: usize,
    charges: Vec<i64>,
    /// Dense row-major off-diagonal weights; the diagonal is kept zero.
    adj: Vec<QuadInt>,
}

/// On-disk form: `{"ring", "n", "charges", "edges": [[u, v, [a, b]], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub ring: RingId,
    pub n: usize,
    pub charges: Vec<i64>,
    pub edges: Vec<(usize, usize, [i64; 2])>,
}

impl TryFrom<GraphFile> for HGraph {
    type Error = Error;

    fn try_from(f: GraphFile) -> Result<HGraph> {
        if f.charges.len() != f.n {
            return Err(Error::Parse(format!("n = {} but {} charges", f.n, f.charges.len())));
        }
        let mut g = HGraph::with_charges(f.ring, f.charges);
        for (u, v, [a, b]) in f.edges {
            if u >= v {
                return Err(Error::BadEdge(u, v));
            }
            if v >= f.n {
                return Err(Error::VertexOutOfRange(v, f.n));
            }
            if !g.weight(u, v).is_zero() {
                return Err(Error::DuplicateEdge(u, v));
            }
            let w = QuadInt::new(a, b, f.ring)?;
            if w.is_zero() {
                return Err(Error::Parse(format!("zero weight on edge {u}-{v}")));
            }
            g.set_weight(u, v, w)?;
        }
        Ok(g)
    }
}

impl From<HGraph> for GraphFile {
    fn from(g: HGraph) -> GraphFile {
        GraphFile {
            ring: g.ring,
            n: g.n,
            edges: g.edges().into_iter().map(|(u, v, w)| (u, v, [w.a, w.b])).collect(),
            charges: g.charges,
        }
    }
}

impl HGraph {
    /// `n` uncharged isolated vertices.
    pub fn empty(ring: RingId, n: usize) -> HGraph {
        HGraph::with_charges(ring, vec![0; n])
    }

    pub fn with_charges(ring: RingId, charges: Vec<i64>) -> HGraph {
        let n = charges.len();
        HGraph { ring, n, charges, adj: vec![QuadInt::zero(ring); n * n] }
    }

    /// Build from charges and `(u, v, w(u, v))` triples with `u != v`.
    pub fn from_edges(ring: RingId, charges: Vec<i64>, edges: &[(usize, usize, QuadInt)]) -> Result<HGraph> {
        let mut g = HGraph::with_charges(ring, charges);
        for &(u, v, w) in edges {
            if !g.weight(u.min(v), u.max(v)).is_zero() {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_weight(u, v, w)?;
        }
        Ok(g)
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn charges(&self) -> &[i64] {
        &self.charges
    }

    pub fn charge(&self, v: usize) -> i64 {
        self.charges[v]
    }

    pub fn is_charged(&self) -> bool {
        self.charges.iter().any(|&c| c != 0)
    }

    /// `w(u, v)` for `u != v`; zero when there is no edge.
    pub fn weight(&self, u: usize, v: usize) -> QuadInt {
        self.adj[u * self.n + v]
    }

    /// Matrix entry, including the diagonal.
    pub fn entry(&self, u: usize, v: usize) -> QuadInt {
        if u == v {
            QuadInt::int(self.charges[u], self.ring)
        } else {
            self.adj[u * self.n + v]
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v, self.n))
        }
    }

    /// Set `w(u, v) = w` (and `w(v, u) = conj w`). A zero weight removes the edge.
    pub fn set_weight(&mut self, u: usize, v: usize, w: QuadInt) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::BadEdge(u, v));
        }
        let w = w.promote(self.ring)?;
        self.adj[u * self.n + v] = w;
        self.adj[v * self.n + u] = w.conj();
        Ok(())
    }

    pub fn set_charge(&mut self, v: usize, c: i64) -> Result<()> {
        self.check_vertex(v)?;
        self.charges[v] = c;
        Ok(())
    }

    /// Edges `(u, v, w(u, v))` with `u < v`, in row order.
    pub fn edges(&self) -> Vec<(usize, usize, QuadInt)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                let w = self.weight(u, v);
                if !w.is_zero() {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| u != v && !self.weight(v, u).is_zero())
    }

    /// `charge^2 + sum of norms of incident weights`.
    pub fn degree(&self, v: usize) -> Result<i64> {
        self.check_vertex(v)?;
        Ok(self.degree_unchecked(v))
    }

    fn degree_unchecked(&self, v: usize) -> i64 {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        self.charges[v] * self.charges[v] + row.iter().map(|w| w.norm()).sum::<i64>()
    }

    pub fn degrees(&self) -> Vec<i64> {
        (0..self.n).map(|v| self.degree_unchecked(v)).collect()
    }

    pub fn max_degree(&self) -> i64 {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in 0..self.n {
                    if !seen[u] && u != v && !self.weight(v, u).is_zero() {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected, as does a single vertex.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Restriction to `subset`, reindexed in the order given.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<HGraph> {
        let mut seen = BTreeSet::new();
        for &v in subset {
            self.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        Ok(self.induced_unchecked(subset))
    }

    pub(crate) fn induced_unchecked(&self, subset: &[usize]) -> HGraph {
        let m = subset.len();
        let mut adj = Vec::with_capacity(m * m);
        for &u in subset {
            for &v in subset {
                adj.push(self.adj[u * self.n + v]);
            }
        }
        HGraph { ring: self.ring, n: m, charges: subset.iter().map(|&v| self.charges[v]).collect(), adj }
    }

    /// Graph with vertex `i` of the result being vertex `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<HGraph> {
        if perm.len() != self.n {
            return Err(Error::BadParameter("permutation length differs from n".into()));
        }
        self.induced_subgraph(perm)
    }

    pub fn remove_vertex(&self, v: usize) -> Result<HGraph> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        Ok(self.induced_unchecked(&keep))
    }

    /// Append a vertex with the given charge; `incident` lists `(u, w(u, new))`.
    pub fn attach_vertex(&self, charge: i64, incident: &[(usize, QuadInt)]) -> Result<HGraph> {
        let n = self.n + 1;
        let mut adj = vec![QuadInt::zero(self.ring); n * n];
        for u in 0..self.n {
            adj[u * n..u * n + self.n].copy_from_slice(&self.adj[u * self.n..(u + 1) * self.n]);
        }
        let mut charges = self.charges.clone();
        charges.push(charge);
        let mut g = HGraph { ring: self.ring, n, charges, adj };
        for &(u, w) in incident {
            self.check_vertex(u)?;
            if w.ring != self.ring && w.promote(self.ring).is_err() {
                return Err(Error::RingMismatch(self.ring, w.ring));
            }
            if w.is_zero() {
                return Err(Error::BadParameter(format!("zero weight to vertex {u}")));
            }
            if !g.weight(u, self.n).is_zero() {
                return Err(Error::DuplicateVertex(u));
            }
            g.set_weight(u, self.n, w)?;
        }
        Ok(g)
    }

    /// Same matrix over a ring containing this one.
    pub fn promote(&self, ring: RingId) -> Result<HGraph> {
        if ring == self.ring {
            return Ok(self.clone());
        }
        let adj = self.adj.iter().map(|w| w.promote(ring)).collect::<Result<Vec<_>>>()?;
        Ok(HGraph { ring, n: self.n, charges: self.charges.clone(), adj })
    }

    /// Smallest ring holding every entry.
    pub fn minimal_ring(&self) -> RingId {
        if self.adj.iter().all(|w| w.b == 0) {
            RingId::Rational
        } else {
            self.ring
        }
    }

    /// `-A`
    pub fn negate(&self) -> HGraph {
        HGraph {
            ring: self.ring,
            n: self.n,
            charges: self.charges.iter().map(|c| -c).collect(),
            adj: self.adj.iter().map(|&w| -w).collect(),
        }
    }

    /// Entrywise complex conjugation.
    pub fn galois_conj(&self) -> HGraph {
        HGraph {
            ring: self.ring,
            n: self.n,
            charges: self.charges.clone(),
            adj: self.adj.iter().map(|w| w.conj()).collect(),
        }
    }

    /// Block-diagonal sum, `self` first.
    pub fn disjoint_union(&self, o: &HGraph) -> Result<HGraph> {
        let ring = self.ring.join(o.ring).ok_or(Error::RingMismatch(self.ring, o.ring))?;
        let a = self.promote(ring)?;
        let b = o.promote(ring)?;
        let mut charges = a.charges.clone();
        charges.extend_from_slice(&b.charges);
        let mut g = HGraph::with_charges(ring, charges);
        for (u, v, w) in a.edges() {
            g.set_weight(u, v, w)?;
        }
        for (u, v, w) in b.edges() {
            g.set_weight(u + a.n, v + a.n, w)?;
        }
        Ok(g)
    }

    /// Exact test `A^2 = 4I`.
    pub fn square_is_4i(&self) -> bool {
        let n = self.n;
        for u in 0..n {
            for v in u..n {
                let mut s = QuadInt::zero(self.ring);
                for k in 0..n {
                    let x = self.entry(u, k);
                    let y = self.entry(k, v);
                    if !x.is_zero() && !y.is_zero() {
                        s = s + x * y;
                    }
                }
                let want = if u == v { 4 } else { 0 };
                if s != QuadInt::int(want, self.ring) {
                    return false;
                }
            }
        }
        true
    }

    /// `det(xI - A)`, division-free (Berkowitz).
    ///
    /// Panics if a coefficient has a nonzero `t` component, which can only
    /// happen if the matrix is not Hermitian.
    pub fn charpoly(&self) -> IntPoly {
        if let Some(c) = self.charpoly_i128() {
            return IntPoly::from_i128s(&c);
        }
        let c = berkowitz::<BigInt>(self).expect("BigInt arithmetic does not overflow");
        IntPoly::new(c)
    }

    /// Characteristic polynomial with `i128` coefficients, lowest degree
    /// first; `None` if an intermediate overflows.
    pub fn charpoly_i128(&self) -> Option<Vec<i128>> {
        berkowitz::<i128>(self)
    }

    /// Graphviz rendering using the arrowhead conventions for weights:
    /// one arrowhead for `t`, two for `1+i`, three for `1+w`, dashed for
    /// negatives, a label for anything else.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(s, "  node [shape=circle, width=0.3, fixedsize=true, label=\"\"];");
        for v in 0..self.n {
            let label = match self.charges[v] {
                0 => String::new(),
                1 => "+".into(),
                -1 => "-".into(),
                c => c.to_string(),
            };
            let _ = writeln!(s, "  v{v} [xlabel=\"{v}\", label=\"{label}\"];");
        }
        for (u, v, w) in self.edges() {
            let (a, b, attrs) = match dot_style(w) {
                Some(st) => (u, v, st),
                None => match dot_style(w.conj()) {
                    Some(st) => (v, u, st),
                    None => (u, v, format!("dir=forward, label=\"{w}\"")),
                },
            };
            let _ = writeln!(s, "  v{a} -> v{b} [{attrs}];");
        }
        s.push_str("}\n");
        s
    }
}

fn dot_style(w: QuadInt) -> Option<String> {
    let heads = match (w.ring, w.a.abs(), w.b.abs()) {
        (_, 1, 0) | (_, 2, 0) => 0,
        (RingId::Rational, _, _) => return None,
        (_, 0, 1) => 1,
        (RingId::Gaussian, 1, 1) if w.a == w.b => 2,
        (RingId::Eisenstein, 1, 1) if w.a == w.b => 3,
        _ => return None,
    };
    let neg = w.a < 0 || (w.a == 0 && w.b < 0);
    let mut attrs =
        if heads == 0 { "dir=none".to_string() } else { format!("dir=forward, arrowhead={}", "normal".repeat(heads)) };
    if neg {
        attrs.push_str(", style=dashed");
    }
    if w.a.abs() == 2 {
        attrs.push_str(", label=\"2\"");
    }
    Some(attrs)
}

/// Integer coordinate types Berkowitz can run over.
trait Coord: Clone {
    fn from_i64(x: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

impl Coord for i128 {
    fn from_i64(x: i64) -> i128 {
        x as i128
    }
    fn add(&self, o: &i128) -> Option<i128> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &i128) -> Option<i128> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &i128) -> Option<i128> {
        self.checked_mul(*o)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Coord for BigInt {
    fn from_i64(x: i64) -> BigInt {
        BigInt::from(x)
    }
    fn add(&self, o: &BigInt) -> Option<BigInt> {
        Some(self + o)
    }
    fn sub(&self, o: &BigInt) -> Option<BigInt> {
        Some(self - o)
    }
    fn mul(&self, o: &BigInt) -> Option<BigInt> {
        Some(self * o)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

#[derive(Clone)]
struct Q<T> {
    a: T,
    b: T,
}

impl<T: Coord> Q<T> {
    fn zero() -> Self {
        Q { a: T::from_i64(0), b: T::from_i64(0) }
    }
    fn of(x: QuadInt) -> Self {
        Q { a: T::from_i64(x.a), b: T::from_i64(x.b) }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(Q { a: self.a.add(&o.a)?, b: self.b.add(&o.b)? })
    }
    fn neg(&self) -> Option<Self> {
        Q::zero().sub(self)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(Q { a: self.a.sub(&o.a)?, b: self.b.sub(&o.b)? })
    }
    fn mul(&self, o: &Self, ring: RingId) -> Option<Self> {
        if self.is_zero() || o.is_zero() {
            return Some(Q::zero());
        }
        let ac = self.a.mul(&o.a)?;
        match ring {
            RingId::Rational => Some(Q { a: ac, b: T::from_i64(0) }),
            RingId::Gaussian => {
                let bd = self.b.mul(&o.b)?;
                let ad = self.a.mul(&o.b)?;
                let bc = self.b.mul(&o.a)?;
                Some(Q { a: ac.sub(&bd)?, b: ad.add(&bc)? })
            }
            RingId::Eisenstein => {
                let bd = self.b.mul(&o.b)?;
                let ad = self.a.mul(&o.b)?;
                let bc = self.b.mul(&o.a)?;
                Some(Q { a: ac.sub(&bd)?, b: ad.add(&bc)?.add(&bd)? })
            }
        }
    }
}

/// Coefficients of `det(xI - A)`, lowest degree first.
fn berkowitz<T: Coord>(g: &HGraph) -> Option<Vec<T>> {
    let n = g.n;
    let ring = g.ring;
    let e = |u: usize, v: usize| Q::<T>::of(g.entry(u, v));
    // p holds the characteristic polynomial of the leading r x r block,
    // highest degree first.
    let mut p: Vec<Q<T>> = vec![Q { a: T::from_i64(1), b: T::from_i64(0) }];
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R C, -R M C, ..., -R M^(r-1) C
        let mut t = Vec::with_capacity(r + 2);
        t.push(Q { a: T::from_i64(1), b: T::from_i64(0) });
        t.push(e(r, r).neg()?);
        let mut col: Vec<Q<T>> = (0..r).map(|i| e(i, r)).collect();
        for k in 0..r {
            let mut dot = Q::zero();
            for (j, c) in col.iter().enumerate() {
                let rj = e(r, j);
                if !rj.is_zero() {
                    dot = dot.add(&rj.mul(c, ring)?)?;
                }
            }
            t.push(dot.neg()?);
            if k + 1 < r {
                let mut next = Vec::with_capacity(r);
                for i in 0..r {
                    let mut s = Q::zero();
                    for (j, c) in col.iter().enumerate() {
                        let mij = e(i, j);
                        if !mij.is_zero() {
                            s = s.add(&mij.mul(c, ring)?)?;
                        }
                    }
                    next.push(s);
                }
                col = next;
            }
        }
        let mut np = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = Q::zero();
            for j in 0..=i.min(r) {
                let tij = &t[i - j];
                if !tij.is_zero() && !p[j].is_zero() {
                    s = s.add(&tij.mul(&p[j], ring)?)?;
                }
            }
            np.push(s);
        }
        p = np;
    }
    let mut out = Vec::with_capacity(n + 1);
    for q in p.into_iter().rev() {
        assert!(q.b.is_zero(), "characteristic polynomial has a non-rational coefficient");
        out.push(q.a);
    }
    Some(out)
}

/// One-vertex extensions of `g`: a charge and the incident weights
/// `(u, w(u, new))`, with at least one edge, the new vertex of degree at most 4
/// and no existing vertex pushed past degree 4.
///
/// With `reduce_switching`, the first incident weight is restricted to its
/// unit-orbit representative; this loses nothing up to switching at the new
/// vertex provided `weights` is closed under multiplication by units.
pub fn enumerate_attachments(
    g: &HGraph,
    charges: &[i64],
    weights: &[QuadInt],
    reduce_switching: bool,
) -> Vec<(i64, Vec<(usize, QuadInt)>)> {
    let degs = g.degrees();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for &c in charges {
        let budget = 4 - c * c;
        if budget < 1 {
            continue;
        }
        rec(g, &degs, weights, reduce_switching, 0, budget, c, &mut cur, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn rec(
    g: &HGraph,
    degs: &[i64],
    weights: &[QuadInt],
    reduce: bool,
    v: usize,
    budget: i64,
    charge: i64,
    cur: &mut Vec<(usize, QuadInt)>,
    out: &mut Vec<(i64, Vec<(usize, QuadInt)>)>,
) {
    if v == g.n() {
        if !cur.is_empty() {
            out.push((charge, cur.clone()));
        }
        return;
    }
    rec(g, degs, weights, reduce, v + 1, budget, charge, cur, out);
    let room = budget.min(4 - degs[v]);
    for &w in weights {
        let nw = w.norm();
        if nw > room {
            continue;
        }
        if reduce && cur.is_empty() && w.orbit_rep().0 != w {
            continue;
        }
        cur.push((v, w));
        rec(g, degs, weights, reduce, v + 1, budget - nw, charge, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::elements_of_norm_at_most;

    fn z(a: i64) -> QuadInt {
        QuadInt::int(a, RingId::Rational)
    }

    fn triangle() -> HGraph {
        HGraph::from_edges(RingId::Rational, vec![0; 3], &[(0, 1, z(1)), (1, 2, z(1)), (0, 2, z(1))]).unwrap()
    }

    #[test]
    fn degree_examples() {
        let s1 = HGraph::with_charges(RingId::Rational, vec![2]);
        assert_eq!(s1.degree(0).unwrap(), 4);
        let e = HGraph::from_edges(RingId::Rational, vec![0, 0], &[(0, 1, z(1))]).unwrap();
        assert_eq!(e.degree(1).unwrap(), 1);
        assert!(e.degree(2).is_err());
    }

    #[test]
    fn charpoly_examples() {
        let s2 = HGraph::from_edges(RingId::Rational, vec![0, 0], &[(0, 1, z(2))]).unwrap();
        assert_eq!(s2.charpoly(), IntPoly::from_i64s(&[-4, 0, 1]));
        let s1 = HGraph::with_charges(RingId::Rational, vec![2]);
        assert_eq!(s1.charpoly(), IntPoly::from_i64s(&[-2, 1]));
        assert_eq!(triangle().charpoly(), IntPoly::from_i64s(&[-2, -3, 0, 1]));
        assert_eq!(HGraph::empty(RingId::Gaussian, 0).charpoly(), IntPoly::one());
    }

    #[test]
    fn charpoly_over_extension_rings() {
        let i = QuadInt::tau(RingId::Gaussian).unwrap();
        let one = QuadInt::one(RingId::Gaussian);
        // triangle with gain i: eigenvalues 2cos((theta + 2 pi k)/3), theta = pi/2
        let g = HGraph::from_edges(RingId::Gaussian, vec![0; 3], &[(0, 1, one), (1, 2, one), (2, 0, i)]).unwrap();
        assert_eq!(g.charpoly(), IntPoly::from_i64s(&[0, -3, 0, 1]));
        let w = QuadInt::tau(RingId::Eisenstein).unwrap();
        let h = HGraph::from_edges(RingId::Eisenstein, vec![1, -1], &[(0, 1, w + w)]).unwrap();
        // [[1, 2w],[2 conj w, -1]]: x^2 - 1 - 4
        assert_eq!(h.charpoly(), IntPoly::from_i64s(&[-5, 0, 1]));
    }

    #[test]
    fn bigint_fallback_agrees() {
        let ring = RingId::Eisenstein;
        let ws = elements_of_norm_at_most(ring, 7);
        let mut g = HGraph::with_charges(ring, (0..9).map(|k| k % 5 - 2).collect());
        for u in 0..9 {
            for v in u + 1..9 {
                g.set_weight(u, v, ws[(u * 7 + v * 3) % ws.len()]).unwrap();
            }
        }
        let small = IntPoly::from_i128s(&g.charpoly_i128().unwrap());
        let big = IntPoly::new(berkowitz::<BigInt>(&g).unwrap());
        assert_eq!(small, big);
        assert_eq!(big.coeff(8), BigInt::from(-g.charges().iter().sum::<i64>()));
    }

    #[test]
    fn connectivity() {
        let s2 = HGraph::from_edges(RingId::Rational, vec![0, 0], &[(0, 1, z(2))]).unwrap();
        assert!(s2.is_connected());
        let two = HGraph::from_edges(RingId::Rational, vec![0; 4], &[(0, 1, z(1)), (2, 3, z(1))]).unwrap();
        assert!(!two.is_connected());
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(HGraph::empty(RingId::Rational, 1).is_connected());
    }

    #[test]
    fn induced_subgraphs() {
        let t = triangle();
        assert_eq!(t.induced_subgraph(&[0, 1, 2]).unwrap(), t);
        assert_eq!(t.induced_subgraph(&[1]).unwrap(), HGraph::empty(RingId::Rational, 1));
        assert_eq!(t.induced_subgraph(&[0, 0]), Err(Error::DuplicateVertex(0)));
        assert_eq!(t.induced_subgraph(&[5]), Err(Error::VertexOutOfRange(5, 3)));
    }

    #[test]
    fn square_check() {
        let s2 = HGraph::from_edges(RingId::Rational, vec![0, 0], &[(0, 1, z(2))]).unwrap();
        assert!(s2.square_is_4i());
        let e = HGraph::from_edges(RingId::Rational, vec![0, 0], &[(0, 1, z(1))]).unwrap();
        assert!(!e.square_is_4i());
    }

    #[test]
    fn attaching() {
        let one = HGraph::empty(RingId::Rational, 1);
        let e = one.attach_vertex(0, &[(0, z(1))]).unwrap();
        assert_eq!(e.edges(), vec![(0, 1, z(1))]);
        assert!(!one.attach_vertex(0, &[]).unwrap().is_connected());
        let s1 = HGraph::with_charges(RingId::Rational, vec![2]);
        let g = s1.attach_vertex(1, &[(0, z(1))]).unwrap();
        assert_eq!(g.charges(), &[2, 1]);
        let i = QuadInt::tau(RingId::Gaussian).unwrap();
        assert_eq!(one.attach_vertex(0, &[(0, i)]), Err(Error::RingMismatch(RingId::Rational, RingId::Gaussian)));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let i = QuadInt::tau(RingId::Gaussian).unwrap();
        let g = HGraph::from_edges(RingId::Gaussian, vec![1, 0, -1], &[(0, 1, i), (2, 1, i + i)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"ring":"Zi","n":3,"charges":[1,0,-1],"edges":[[0,1,[0,1]],[1,2,[0,-2]]]}"#);
        assert_eq!(serde_json::from_str::<HGraph>(&s).unwrap(), g);
        for bad in [
            r#"{"ring":"Zi","n":2,"charges":[0,0],"edges":[[1,0,[1,0]]]}"#,
            r#"{"ring":"Zi","n":2,"charges":[0,0],"edges":[[0,1,[1,0]],[0,1,[1,0]]]}"#,
            r#"{"ring":"Zi","n":2,"charges":[0],"edges":[]}"#,
            r#"{"ring":"Z","n":2,"charges":[0,0],"edges":[[0,1,[1,1]]]}"#,
            r#"{"ring":"Zi","n":2,"charges":[0,0],"edges":[[0,2,[1,0]]]}"#,
            r#"{"ring":"Zi","n":2,"charges":[0,0],"edges":[[0,1,[0,0]]]}"#,
            r#"{"ring":"Q","n":1,"charges":[0],"edges":[]}"#,
        ] {
            assert!(serde_json::from_str::<HGraph>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn dot_output_uses_arrowheads() {
        let ring = RingId::Gaussian;
        let i = QuadInt::tau(ring).unwrap();
        let one = QuadInt::one(ring);
        let g = HGraph::from_edges(ring, vec![0, 1, 0], &[(0, 1, one + i), (2, 1, -i)]).unwrap();
        let d = g.to_dot("g");
        assert!(d.contains("v0 -> v1 [dir=forward, arrowhead=normalnormal]"));
        assert!(d.contains("v1 -> v2 [dir=forward, arrowhead=normal]"));
    }

    #[test]
    fn attachment_enumeration_respects_degrees() {
        let ring = RingId::Gaussian;
        let ws = elements_of_norm_at_most(ring, 4);
        let e = HGraph::from_edges(ring, vec![0, 0], &[(0, 1, QuadInt::one(ring))]).unwrap();
        let all = enumerate_attachments(&e, &[0, 1, -1, 2, -2], &ws, false);
        let red = enumerate_attachments(&e, &[0, 1, -1, 2, -2], &ws, true);
        assert_eq!(red.len() * 4, all.len());
        for (c, inc) in &all {
            let h = e.attach_vertex(*c, inc).unwrap();
            assert!(h.max_degree() <= 4);
            assert!(!inc.is_empty());
        }
        // charge +-2 leaves no room for an edge
        assert!(all.iter().all(|(c, _)| c.abs() < 2));
    }
}
