//! Exact Gram vectors: a pivoted LDL* factorisation of `A + 2I` over the
//! fraction field of the ring, and checks of linear identities among them.

use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::HGraph;
use crate::ring::{units, QuadInt, RingId};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `a + b t` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElt {
    pub a: BigRational,
    pub b: BigRational,
    pub ring: RingId,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl FieldElt {
    pub fn zero(ring: RingId) -> FieldElt {
        FieldElt { a: q(0), b: q(0), ring }
    }

    pub fn rational(x: BigRational, ring: RingId) -> FieldElt {
        FieldElt { a: x, b: q(0), ring }
    }

    pub fn from_quad(x: QuadInt) -> FieldElt {
        FieldElt { a: q(x.a), b: q(x.b), ring: x.ring }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> FieldElt {
        match self.ring {
            RingId::Rational => self.clone(),
            RingId::Gaussian => FieldElt { a: self.a.clone(), b: -&self.b, ring: self.ring },
            RingId::Eisenstein => FieldElt { a: &self.a + &self.b, b: -&self.b, ring: self.ring },
        }
    }

    /// `x conj(x)`
    pub fn norm(&self) -> BigRational {
        let (a, b) = (&self.a, &self.b);
        match self.ring {
            RingId::Rational => a * a,
            RingId::Gaussian => a * a + b * b,
            RingId::Eisenstein => a * a + a * b + b * b,
        }
    }

    /// Real part when the element is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn scale(&self, c: &BigRational) -> FieldElt {
        FieldElt { a: &self.a * c, b: &self.b * c, ring: self.ring }
    }
}

impl Add for &FieldElt {
    type Output = FieldElt;
    fn add(self, o: &FieldElt) -> FieldElt {
        FieldElt { a: &self.a + &o.a, b: &self.b + &o.b, ring: self.ring }
    }
}

impl Sub for &FieldElt {
    type Output = FieldElt;
    fn sub(self, o: &FieldElt) -> FieldElt {
        FieldElt { a: &self.a - &o.a, b: &self.b - &o.b, ring: self.ring }
    }
}

impl Neg for &FieldElt {
    type Output = FieldElt;
    fn neg(self) -> FieldElt {
        FieldElt { a: -&self.a, b: -&self.b, ring: self.ring }
    }
}

impl Mul for &FieldElt {
    type Output = FieldElt;
    fn mul(self, o: &FieldElt) -> FieldElt {
        let (a, b, c, d) = (&self.a, &self.b, &o.a, &o.b);
        let (x, y) = match self.ring {
            RingId::Rational => (a * c, q(0)),
            RingId::Gaussian => (a * c - b * d, a * d + b * c),
            RingId::Eisenstein => (a * c - b * d, a * d + b * c + b * d),
        };
        FieldElt { a: x, b: y, ring: self.ring }
    }
}

impl fmt::Display for FieldElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.ring {
            RingId::Gaussian => "i",
            _ => "w",
        };
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({})+({}){t}", self.a, self.b)
        }
    }
}

pub type Vector = Vec<FieldElt>;

/// Coordinates with respect to an orthogonal basis with squared lengths `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramSpace {
    pub ring: RingId,
    pub metric: Vec<BigRational>,
}

impl GramSpace {
    /// `<x, y> = sum d_k x_k conj(y_k)`, linear in `x`.
    pub fn inner(&self, x: &[FieldElt], y: &[FieldElt]) -> FieldElt {
        let mut s = FieldElt::zero(self.ring);
        for ((d, a), b) in self.metric.iter().zip(x).zip(y) {
            s = &s + &(a * &b.conj()).scale(d);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.metric.len()
    }
}

pub fn combine(ring: RingId, terms: &[(FieldElt, &Vector)]) -> Vector {
    let dim = terms.first().map(|t| t.1.len()).unwrap_or(0);
    let mut out = vec![FieldElt::zero(ring); dim];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o = &*o + &(c * x);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramDecomposition {
    pub rank: usize,
    /// Pivot vertex chosen at each step.
    pub pivots: Vec<usize>,
    /// Diagonal of the factorisation; all positive.
    pub d: Vec<BigRational>,
    /// `l[k][i]`: entry of the `k`-th column of the unit lower factor at row `i`.
    pub l: Vec<Vec<FieldElt>>,
    pub space: GramSpace,
    /// One vector per vertex, `vectors[i][k] = l[k][i]`.
    pub vectors: Vec<Vector>,
}

impl GramDecomposition {
    /// Matrix with entries `<v_i, v_j>`.
    pub fn reassemble(&self) -> Vec<Vec<FieldElt>> {
        self.vectors.iter().map(|x| self.vectors.iter().map(|y| self.space.inner(x, y)).collect()).collect()
    }

    /// Exact check `L D L* = A + 2I`.
    pub fn reproduces(&self, g: &HGraph) -> bool {
        let m = self.reassemble();
        (0..g.n()).all(|i| {
            (0..g.n()).all(|j| {
                let mut want = FieldElt::from_quad(g.entry(i, j));
                if i == j {
                    want.a += q(2);
                }
                m[i][j] == want
            })
        })
    }

    pub fn inner(&self, i: usize, j: usize) -> FieldElt {
        self.space.inner(&self.vectors[i], &self.vectors[j])
    }
}

/// Pivoted LDL* of `A + 2I`. Pivots on the largest remaining diagonal entry
/// (smallest index on ties); fails if the matrix is not positive semidefinite.
pub fn gram_decompose(g: &HGraph) -> Result<GramDecomposition> {
    let n = g.n();
    let ring = g.ring();
    let mut w: Vec<Vec<FieldElt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut x = FieldElt::from_quad(g.entry(i, j));
                    if i == j {
                        x.a += q(2);
                    }
                    x
                })
                .collect()
        })
        .collect();
    let mut active = vec![true; n];
    let mut pivots = Vec::new();
    let mut d = Vec::new();
    let mut l: Vec<Vec<FieldElt>> = Vec::new();
    loop {
        let mut best: Option<(usize, BigRational)> = None;
        for i in (0..n).filter(|&i| active[i]) {
            let x = w[i][i].as_rational().cloned().ok_or(Error::NotPsd)?;
            if x.is_negative() {
                return Err(Error::NotPsd);
            }
            if best.as_ref().is_none_or(|(_, b)| x > *b) {
                best = Some((i, x));
            }
        }
        let Some((p, dp)) = best else { break };
        if dp.is_zero() {
            // PSD forces the remaining block to vanish
            for i in (0..n).filter(|&i| active[i]) {
                for j in (0..n).filter(|&j| active[j]) {
                    if !w[i][j].is_zero() {
                        return Err(Error::NotPsd);
                    }
                }
            }
            break;
        }
        let inv = dp.recip();
        let mut col = vec![FieldElt::zero(ring); n];
        for i in (0..n).filter(|&i| active[i]) {
            col[i] = w[i][p].scale(&inv);
        }
        active[p] = false;
        for i in (0..n).filter(|&i| active[i]) {
            for j in (0..n).filter(|&j| active[j]) {
                let t = (&col[i] * &col[j].conj()).scale(&dp);
                w[i][j] = &w[i][j] - &t;
            }
        }
        pivots.push(p);
        d.push(dp);
        l.push(col);
    }
    let rank = d.len();
    let vectors = (0..n).map(|i| (0..rank).map(|k| l[k][i].clone()).collect()).collect();
    Ok(GramDecomposition { rank, pivots, d: d.clone(), l, space: GramSpace { ring, metric: d }, vectors })
}

/// `2v = sum <v, x_j> x_j` for four pairwise orthogonal `x_j` of squared
/// length 2 and a `v` of squared length 2 with `|<v, x_j>| = 1`. The
/// hypotheses are checked first.
pub fn verify_lemma41(space: &GramSpace, xs: &[Vector], v: &Vector) -> Result<bool> {
    if xs.len() != 4 {
        return Err(Error::Hypothesis(format!("need four vectors, got {}", xs.len())));
    }
    let two = FieldElt::rational(q(2), space.ring);
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            let want = if i == j { two.clone() } else { FieldElt::zero(space.ring) };
            if space.inner(x, y) != want {
                return Err(Error::Hypothesis(format!("<x_{}, x_{}> is not {}", i + 1, j + 1, want)));
            }
        }
        if !space.inner(v, x).norm().is_one() {
            return Err(Error::Hypothesis(format!("|<v, x_{}>| is not 1", i + 1)));
        }
    }
    if space.inner(v, v) != two {
        return Err(Error::Hypothesis("<v, v> is not 2".into()));
    }
    Ok(four_vector_identity(space, xs, v))
}

/// Only the conclusion of [`verify_lemma41`], without its hypotheses.
pub fn four_vector_identity(space: &GramSpace, xs: &[Vector], v: &Vector) -> bool {
    let terms: Vec<(FieldElt, &Vector)> = xs.iter().map(|x| (space.inner(v, x), x)).collect();
    let rhs = combine(space.ring, &terms);
    let lhs: Vector = v.iter().map(|c| c.scale(&q(2))).collect();
    lhs == rhs
}

/// Uncharged vertices with exactly four neighbours, all uncharged, pairwise
/// non-adjacent and joined by unit weights: the configurations where the
/// four-vector identity applies to Gram vectors.
pub fn four_vector_sites(g: &HGraph) -> Vec<(usize, [usize; 4])> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        if g.charge(v) != 0 {
            continue;
        }
        let nb: Vec<usize> = g.neighbors(v).collect();
        if nb.len() != 4 || nb.iter().any(|&u| !g.weight(v, u).is_unit() || g.charge(u) != 0) {
            continue;
        }
        let independent = nb.iter().all(|&a| nb.iter().all(|&b| a == b || g.weight(a, b).is_zero()));
        if independent {
            out.push((v, [nb[0], nb[1], nb[2], nb[3]]));
        }
    }
    out
}

/// Check the four-vector identity at every site of a cyclotomic graph.
/// Returns how many sites were checked.
pub fn verify_four_vector_sites(g: &HGraph) -> Result<usize> {
    let dec = gram_decompose(g)?;
    let sites = four_vector_sites(g);
    for (v, nb) in &sites {
        let xs: Vec<Vector> = nb.iter().map(|&u| dec.vectors[u].clone()).collect();
        if !verify_lemma41(&dec.space, &xs, &dec.vectors[*v])? {
            return Ok(0);
        }
    }
    Ok(sites.len())
}

/// Unit `x` with `v_i = x v_j`, if any.
pub fn switch_equivalent(dec: &GramDecomposition, i: usize, j: usize) -> Option<QuadInt> {
    units(dec.space.ring).into_iter().find(|&u| {
        let x = FieldElt::from_quad(u);
        dec.vectors[j].iter().map(|c| &x * c).eq(dec.vectors[i].iter().cloned())
    })
}

type C64 = num_complex::Complex64;

fn to_c64(x: &FieldElt) -> C64 {
    let a = x.a.to_f64().unwrap_or(f64::NAN);
    let b = x.b.to_f64().unwrap_or(f64::NAN);
    match x.ring {
        RingId::Rational => C64::new(a, 0.0),
        RingId::Gaussian => C64::new(a, b),
        RingId::Eisenstein => C64::new(a + b / 2.0, b * 3f64.sqrt() / 2.0),
    }
}

fn quad_c64(x: QuadInt) -> C64 {
    to_c64(&FieldElt::from_quad(x))
}

// Gram data of `2I + sign A` in floating point, for the Schur-complement test.
struct Side {
    sign: f64,
    pivots: Vec<usize>,
    metric: Vec<f64>,
    vectors: Vec<Vec<C64>>,
}

impl Side {
    fn new(g: &HGraph, negate: bool) -> Option<Side> {
        let dec = gram_decompose(&if negate { g.negate() } else { g.clone() }).ok()?;
        Some(Side {
            sign: if negate { -1.0 } else { 1.0 },
            pivots: dec.pivots,
            metric: dec.d.iter().map(|d| d.to_f64().unwrap_or(f64::NAN)).collect(),
            vectors: dec.vectors.iter().map(|v| v.iter().map(to_c64).collect()).collect(),
        })
    }

    // Excess of the smallest achievable squared length over the diagonal entry,
    // or infinity when the new column is outside the span.
    fn excess(&self, charge: i64, column: &[C64]) -> f64 {
        let r = self.pivots.len();
        let mut y = vec![C64::new(0.0, 0.0); r];
        for (j, &p) in self.pivots.iter().enumerate() {
            let mut s = column[p];
            for k in 0..j {
                s -= self.vectors[p][k] * y[k] * self.metric[k];
            }
            y[j] = s / self.metric[j];
        }
        let mut worst: f64 = 0.0;
        for (i, v) in self.vectors.iter().enumerate() {
            let s: C64 = (0..r).map(|k| v[k] * y[k] * self.metric[k]).sum();
            worst = worst.max((s - column[i]).norm());
        }
        if worst > FILTER_EPS {
            return f64::INFINITY;
        }
        let len: f64 = (0..r).map(|k| self.metric[k] * y[k].norm_sqr()).sum();
        len - (2.0 + self.sign * charge as f64)
    }
}

const FILTER_EPS: f64 = 1e-6;

/// Necessary condition for a one-vertex extension of a cyclotomic graph to be
/// cyclotomic: both `2I + A'` and `2I - A'` stay positive semidefinite, tested
/// through Schur complements against the Gram vectors of the parent. Uses
/// floating point with a tolerance, so it may pass a few non-cyclotomic
/// extensions but never rejects a cyclotomic one by more than rounding.
pub struct ExtensionFilter {
    n: usize,
    plus: Side,
    minus: Side,
}

impl ExtensionFilter {
    /// `None` when `g` is not cyclotomic.
    pub fn new(g: &HGraph) -> Option<ExtensionFilter> {
        Some(ExtensionFilter { n: g.n(), plus: Side::new(g, false)?, minus: Side::new(g, true)? })
    }

    /// `incident` lists `(u, w(u, new))`.
    pub fn admits(&self, charge: i64, incident: &[(usize, QuadInt)]) -> bool {
        let mut col = vec![C64::new(0.0, 0.0); self.n];
        for &(u, w) in incident {
            col[u] = quad_c64(w);
        }
        if self.plus.excess(charge, &col) > FILTER_EPS {
            return false;
        }
        for c in col.iter_mut() {
            *c = -*c;
        }
        self.minus.excess(charge, &col) <= FILTER_EPS
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnchorFamily {
    /// `P_{l,r}` inside `P'_{l,r}`.
    Lr(usize, usize),
    /// `P_{2r+1}` inside `P'_{2r+1}`.
    Odd(usize),
    /// `P_{2r}` inside `P'_{2r}`.
    Charged(usize),
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Check that every hollow vertex of the primed anchor has the expected Gram
/// vector in terms of the solid ones.
pub fn verify_hollow_identities(family: AnchorFamily) -> Result<bool> {
    let (g, expected) = match family {
        AnchorFamily::Lr(l, r) => (catalog::make_p_primed(l, r)?, hollow_lr(l, r)),
        AnchorFamily::Odd(r) => (catalog::make_p_odd_primed(r)?, hollow_odd(r)),
        AnchorFamily::Charged(r) => (catalog::make_p_charged_primed(r)?, hollow_charged(r)),
    };
    let dec = gram_decompose(&g)?;
    let ring = g.ring();
    for (target, terms) in expected {
        let coeffs: Vec<(FieldElt, &Vector)> = terms
            .iter()
            .map(|&(c, v)| (FieldElt::from_quad(c.promote(ring).expect("coefficient fits ring")), &dec.vectors[v]))
            .collect();
        if combine(ring, &coeffs) != dec.vectors[target] {
            return Ok(false);
        }
    }
    Ok(true)
}

type Identity = (usize, Vec<(QuadInt, usize)>);

fn zc(n: i64) -> QuadInt {
    QuadInt::int(n, RingId::Rational)
}

fn hollow_lr(l: usize, r: usize) -> Vec<Identity> {
    let top = |c: i64| catalog::p_primed_index(l, c, false);
    let bot = |c: i64| catalog::p_primed_index(l, c, true);
    let mut out = Vec::new();
    // v'_{-t} = v_{-t} + 2 sum_{j<t} (-1)^{t+j} v_{-j} + (-1)^t (v_0 + v'_0)
    for t in 1..=l {
        let mut terms = vec![(zc(1), top(-(t as i64)))];
        for j in 1..t {
            terms.push((zc(2 * sign(t + j)), top(-(j as i64))));
        }
        terms.push((zc(sign(t)), top(0)));
        terms.push((zc(sign(t)), bot(0)));
        out.push((bot(-(t as i64)), terms));
    }
    // v'_t = -v_t - 2 sum_{j<t} (-1)^{t+j} v_j - (-1)^t (v_0 - v'_0)
    for t in 1..=r {
        let mut terms = vec![(zc(-1), top(t as i64))];
        for j in 1..t {
            terms.push((zc(-2 * sign(t + j)), top(j as i64)));
        }
        terms.push((zc(-sign(t)), top(0)));
        terms.push((zc(sign(t)), bot(0)));
        out.push((bot(t as i64), terms));
    }
    out
}

fn hollow_odd(r: usize) -> Vec<Identity> {
    let one_i = QuadInt::new(1, 1, RingId::Gaussian).expect("1+i");
    let mut out = Vec::new();
    // v'_t = -v_t - 2 sum_{j<t} (-1)^{t+j} v_j - (-1)^t (1+i) v_0
    for t in 1..=r {
        let mut terms = vec![(zc(-1), catalog::p_odd_index(t, false))];
        for j in 1..t {
            terms.push((zc(-2 * sign(t + j)), catalog::p_odd_index(j, false)));
        }
        terms.push((QuadInt::int(-sign(t), RingId::Gaussian) * one_i, 0));
        out.push((catalog::p_odd_index(t, true), terms));
    }
    out
}

fn hollow_charged(r: usize) -> Vec<Identity> {
    let mut out = Vec::new();
    // v'_t = -v_t - 2 sum_{j<t} (-1)^{t+j} v_j
    for t in 1..=r {
        let mut terms = vec![(zc(-1), catalog::p_charged_index(t, false))];
        for j in 1..t {
            terms.push((zc(-2 * sign(t + j)), catalog::p_charged_index(j, false)));
        }
        out.push((catalog::p_charged_index(t, true), terms));
    }
    out
}
