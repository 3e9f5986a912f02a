//! Dense integer polynomials: Sturm root counting, cyclotomic polynomials,
//! the transform `z^n chi(z + 1/z)`, cyclotomic trial division and Mahler measure.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn from_i128s(c: &[i128]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::from_i64s(&[1])
    }

    /// `x - c`
    pub fn linear_root(c: i64) -> IntPoly {
        IntPoly::from_i64s(&[-c, 1])
    }

    pub fn monomial(c: i64, k: usize) -> IntPoly {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        IntPoly::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        IntPoly::new(v)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut r = IntPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// `p(x + c)`
    pub fn taylor_shift(&self, c: i64) -> IntPoly {
        let c = BigInt::from(c);
        let mut v = self.coeffs.clone();
        let n = v.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &v[j + 1] * &c;
                v[j] += t;
            }
        }
        IntPoly::new(v)
    }

    /// `p(-x)`
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// Quotient and remainder by a divisor whose leading coefficient is a unit.
    pub fn div_rem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        let lc = d.lead();
        assert!(lc.abs().is_one(), "divisor must have leading coefficient +-1");
        if self.coeffs.len() < d.coeffs.len() {
            return (IntPoly::zero(), self.clone());
        }
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &lc;
            if t.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k + j] -= &t * c;
            }
            q[k] = t;
        }
        r.truncate(dd);
        (IntPoly::new(q), IntPoly::new(r))
    }

    /// `self / d` when the division is exact over the integers.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = RatPoly::from_int(self).div_rem(&RatPoly::from_int(d));
        if !r.is_zero() {
            return None;
        }
        q.to_int_exact()
    }

    /// Largest `k` with `x^k | p`, and the quotient.
    pub fn strip_x(&self) -> (usize, IntPoly) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, IntPoly::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    /// Coefficients as `i128` if they all fit.
    pub fn to_i128s(&self) -> Option<Vec<i128>> {
        self.coeffs.iter().map(|c| c.to_i128()).collect()
    }

    /// Parse a human-readable polynomial in one variable, e.g.
    /// `z^10+z^9-z^7-3*z + 1` or `x^2 - 4`. Any single letter is accepted.
    pub fn parse(s: &str) -> Result<IntPoly> {
        let bad = |m: &str| Error::Parse(format!("cannot read polynomial {s:?}: {m}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad("empty"));
        }
        let var = t.chars().find(|c| c.is_ascii_alphabetic());
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coef, deg) = match var.and_then(|v| body.find(v).map(|p| (v, p))) {
                None => (body.parse::<BigInt>().map_err(|_| bad(body))?, 0usize),
                Some((v, p)) => {
                    let c = body[..p].trim_end_matches('*');
                    let c = if c.is_empty() { BigInt::one() } else { c.parse::<BigInt>().map_err(|_| bad(body))? };
                    let rest = &body[p + v.len_utf8()..];
                    let d = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').and_then(|e| e.parse::<usize>().ok()).ok_or_else(|| bad(body))?
                    };
                    (c, d)
                }
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigInt::zero());
            }
            if neg {
                coeffs[deg] -= coef;
            } else {
                coeffs[deg] += coef;
            }
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Int(i64),
    Str(String),
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<CoeffRepr> = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(x) => CoeffRepr::Int(x),
                None => CoeffRepr::Str(c.to_string()),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<IntPoly, D::Error> {
        let v: Vec<CoeffRepr> = Vec::deserialize(d)?;
        let mut out = Vec::with_capacity(v.len());
        for c in v {
            out.push(match c {
                CoeffRepr::Int(x) => BigInt::from(x),
                CoeffRepr::Str(s) => s.parse().map_err(serde::de::Error::custom)?,
            });
        }
        Ok(IntPoly::new(out))
    }
}

/// Polynomial over Q, used for gcds and Sturm sequences.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RatPoly {
    c: Vec<BigRational>,
}

impl RatPoly {
    fn new(mut c: Vec<BigRational>) -> RatPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        RatPoly { c }
    }

    pub(crate) fn from_int(p: &IntPoly) -> RatPoly {
        RatPoly::new(p.coeffs.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero());
        if self.c.len() < d.c.len() {
            return (RatPoly::new(Vec::new()), self.clone());
        }
        let dd = d.degree();
        let inv = d.c[dd].recip();
        let mut r = self.c.clone();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &inv;
            if t.is_zero() {
                continue;
            }
            for (j, c) in d.c.iter().enumerate() {
                r[k + j] -= &t * c;
            }
            q[k] = t;
        }
        r.truncate(dd);
        (RatPoly::new(q), RatPoly::new(r))
    }

    fn monic(&self) -> RatPoly {
        match self.c.last() {
            None => self.clone(),
            Some(l) => {
                let inv = l.recip();
                RatPoly::new(self.c.iter().map(|x| x * &inv).collect())
            }
        }
    }

    fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.c.iter().enumerate().skip(1).map(|(k, x)| x * BigRational::from_integer(BigInt::from(k))).collect(),
        )
    }

    fn sub(&self, o: &RatPoly) -> RatPoly {
        let n = self.c.len().max(o.c.len());
        let z = BigRational::zero();
        RatPoly::new((0..n).map(|k| self.c.get(k).unwrap_or(&z) - o.c.get(k).unwrap_or(&z)).collect())
    }

    fn gcd(&self, o: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Positive multiple with coprime integer coefficients (signs preserved).
    fn primitive(&self) -> IntPoly {
        let mut l = BigInt::one();
        for x in &self.c {
            l = l.lcm(x.denom());
        }
        let v: Vec<BigInt> = self.c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for x in &v {
            g = g.gcd(x);
        }
        if g.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(v.into_iter().map(|x| x / &g).collect())
    }

    fn to_int_exact(&self) -> Option<IntPoly> {
        if self.c.iter().all(|x| x.is_integer()) {
            Some(IntPoly::new(self.c.iter().map(|x| x.to_integer()).collect()))
        } else {
            None
        }
    }
}

/// Square-free factorisation (Yun): pairs `(f_i, i)` with `p = lc * prod f_i^i`,
/// each `f_i` a primitive integer polynomial of positive degree.
pub fn square_free_decomposition(p: &IntPoly) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let f = RatPoly::from_int(p).monic();
    let df = f.derivative();
    let mut a = f.gcd(&df);
    let mut b = f.div_rem(&a).0;
    let mut c = df.div_rem(&a).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1u32;
    loop {
        a = b.gcd(&d);
        if a.degree() > 0 {
            out.push((a.primitive(), i));
        }
        b = b.div_rem(&a).0;
        if b.degree() == 0 {
            break;
        }
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Sign of `p(x)` for rational `x = num/den`, `den > 0`, computed in integers.
fn sign_at(p: &IntPoly, x: &BigRational) -> i8 {
    let (num, den) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in p.coeffs.iter().rev() {
        acc = acc * num + c * &dpow;
        dpow *= den;
    }
    // acc = den^deg * p(x) up to a positive factor
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of a square-free polynomial, each member scaled to a primitive
/// integer polynomial by a positive factor.
struct Sturm {
    chain: Vec<IntPoly>,
}

impl Sturm {
    fn new(f: &IntPoly) -> Sturm {
        let mut chain = vec![f.clone()];
        let d = f.derivative();
        if d.is_zero() {
            return Sturm { chain };
        }
        chain.push(d);
        let (mut a, mut b) = (RatPoly::from_int(f), RatPoly::from_int(&chain[1]));
        loop {
            let r = a.div_rem(&b).1;
            if r.is_zero() {
                break;
            }
            let neg = RatPoly::new(r.c.iter().map(|x| -x).collect());
            chain.push(neg.primitive());
            a = b;
            b = neg;
        }
        Sturm { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for p in &self.chain {
            let s = sign_at(p, x);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Roots in `(a, b]`; requires `f(a) != 0` or tolerates it when `a` is not
    /// a root (the count is then exact for half-open intervals).
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Strict upper bound on the absolute value of every root.
fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lc = BigRational::from_integer(p.lead().abs());
    let mut m = BigRational::zero();
    for c in &p.coeffs[..p.coeffs.len() - 1] {
        let r = BigRational::from_integer(c.abs()) / &lc;
        if r > m {
            m = r;
        }
    }
    m + rat(1)
}

/// Roots of the square-free `f` in the interval, counted once each.
fn count_square_free_in(f: &IntPoly, lo: &BigRational, hi: &BigRational, closed: bool) -> usize {
    let mut f = f.clone();
    let mut n = 0;
    for e in [lo, hi] {
        if sign_at(&f, e) == 0 {
            if closed {
                n += 1;
            }
            let lin = RatPoly::new(vec![-e.clone(), rat(1)]);
            f = RatPoly::from_int(&f).div_rem(&lin).0.primitive();
        }
    }
    if f.degree() == 0 {
        return n;
    }
    // f is nonzero at both endpoints so (lo, hi] and (lo, hi) agree
    n + Sturm::new(&f).count(lo, hi)
}

/// Real roots of `p` in `[lo, hi]` (or `(lo, hi)`), with multiplicity.
pub fn count_real_roots_in(p: &IntPoly, lo: &BigRational, hi: &BigRational, closed: bool) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::BadParameter("need lo < hi".into()));
    }
    Ok(square_free_decomposition(p).iter().map(|(f, m)| *m as usize * count_square_free_in(f, lo, hi, closed)).sum())
}

/// Total number of real roots with multiplicity.
pub fn count_real_roots(p: &IntPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(0);
    }
    let b = cauchy_bound(p);
    count_real_roots_in(p, &-b.clone(), &b, true)
}

/// Roots `<= t`, with multiplicity.
pub fn count_roots_at_most(p: &IntPoly, t: &BigRational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(0);
    }
    let b = cauchy_bound(p) + t.abs();
    count_real_roots_in(p, &-b, t, true)
}

/// Multiplicity of the integer root `r` of `p`.
pub fn root_multiplicity(p: &IntPoly, r: i64) -> usize {
    if p.is_zero() {
        return 0;
    }
    let lin = IntPoly::linear_root(r);
    let mut q = p.clone();
    let mut m = 0;
    loop {
        let (d, rem) = q.div_rem_monic(&lin);
        if !rem.is_zero() || q.degree() == 0 {
            return m;
        }
        q = d;
        m += 1;
    }
}

pub fn euler_phi(mut k: u64) -> u64 {
    let mut r = k;
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d) {
            while k.is_multiple_of(d) {
                k /= d;
            }
            r -= r / d;
        }
        d += 1;
    }
    if k > 1 {
        r -= r / k;
    }
    r
}

type PhiCache = Mutex<HashMap<u64, Arc<IntPoly>>>;

fn phi_cache() -> &'static PhiCache {
    static CACHE: OnceLock<PhiCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `k`-th cyclotomic polynomial.
pub fn cyclotomic_poly(k: u64) -> Result<Arc<IntPoly>> {
    if k == 0 {
        return Err(Error::BadParameter("cyclotomic index must be positive".into()));
    }
    if let Some(p) = phi_cache().lock().unwrap().get(&k) {
        return Ok(p.clone());
    }
    let mut num = IntPoly::monomial(1, k as usize).sub(&IntPoly::one());
    for d in 1..k {
        if k.is_multiple_of(d) {
            let phi = cyclotomic_poly(d)?;
            num = num.div_rem_monic(&phi).0;
        }
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(k, p.clone());
    Ok(p)
}

/// `z^n chi(z + 1/z)` for monic `chi` of degree `n`.
pub fn resolvent(chi: &IntPoly) -> Result<IntPoly> {
    if !chi.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = chi.degree();
    let s = IntPoly::from_i64s(&[1, 0, 1]);
    let mut out = IntPoly::zero();
    let mut spow = IntPoly::one();
    for (j, c) in chi.coeffs.iter().enumerate() {
        // c_j (z^2+1)^j z^(n-j)
        let mut term = spow.scale(c).coeffs;
        let mut shifted = vec![BigInt::zero(); n - j];
        shifted.append(&mut term);
        out = out.add(&IntPoly::new(shifted));
        spow = spow.mul(&s);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloFactorization {
    /// `(k, multiplicity)` for each `Phi_k` found, increasing `k`.
    pub factors: Vec<(u64, u32)>,
    pub leftover: IntPoly,
}

impl CycloFactorization {
    pub fn expand(&self) -> IntPoly {
        let mut p = self.leftover.clone();
        for &(k, m) in &self.factors {
            p = p.mul(&cyclotomic_poly(k).expect("k >= 1").pow(m));
        }
        p
    }

    /// True when the input was `+-1` times a product of cyclotomic polynomials.
    pub fn is_complete(&self) -> bool {
        self.leftover.degree() == 0 && self.leftover.lead().abs().is_one()
    }
}

/// Divide out every `Phi_k` with `phi(k) <= deg p`, to full multiplicity.
pub fn cyclotomic_product_factor(p: &IntPoly) -> Result<CycloFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rest = p.clone();
    let mut factors = Vec::new();
    let deg = p.degree() as u64;
    // phi(k) >= sqrt(k/2), so phi(k) <= deg forces k <= 2 deg^2
    let kmax = 2 * deg * deg;
    let mut k = 1;
    while k <= kmax.max(2) && rest.degree() > 0 {
        if euler_phi(k) as usize <= rest.degree() {
            let phi = cyclotomic_poly(k)?;
            let mut m = 0;
            loop {
                let (q, r) = rest.div_rem_monic(&phi);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            if m > 0 {
                factors.push((k, m));
            }
        }
        k += 1;
    }
    Ok(CycloFactorization { factors, leftover: rest })
}

/// Isolating intervals `(a, b]` for the real roots of a square-free `f`.
fn isolate(f: &IntPoly) -> Vec<(BigRational, BigRational)> {
    let s = Sturm::new(f);
    let b = cauchy_bound(f);
    let mut todo = vec![(-b.clone(), b)];
    let mut out = Vec::new();
    while let Some((lo, hi)) = todo.pop() {
        match s.count(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / rat(2);
                todo.push((lo, mid.clone()));
                todo.push((mid, hi));
            }
        }
    }
    out.sort();
    out
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Product over the real roots of `f^m` (square-free `f`, all roots real) of
/// `g(root)`, for `g` non-decreasing in `|x|`. Refines until the enclosure is
/// narrower than `tol`.
fn root_product(parts: &[(IntPoly, u32)], g: impl Fn(f64) -> f64, tol: f64) -> f64 {
    let mut roots: Vec<(Sturm, u32, BigRational, BigRational)> = Vec::new();
    for (f, m) in parts {
        for (a, b) in isolate(f) {
            roots.push((Sturm::new(f), *m, a, b));
        }
    }
    let bounds = |roots: &[(Sturm, u32, BigRational, BigRational)]| {
        let (mut lo, mut hi) = (1.0f64, 1.0f64);
        for (_, m, a, b) in roots {
            let (fa, fb) = (to_f64(a), to_f64(b));
            let min_abs = if fa <= 0.0 && fb >= 0.0 { 0.0 } else { fa.abs().min(fb.abs()) };
            let max_abs = fa.abs().max(fb.abs());
            lo *= g(min_abs).powi(*m as i32);
            hi *= g(max_abs).powi(*m as i32);
        }
        (lo, hi)
    };
    for _ in 0..400 {
        let (lo, hi) = bounds(&roots);
        if hi - lo < tol {
            return (lo + hi) / 2.0;
        }
        for (s, _, a, b) in roots.iter_mut() {
            // intervals that cannot affect the product need no refinement
            if g(to_f64(a).abs().max(to_f64(b).abs())) == 1.0 {
                continue;
            }
            let mid = (&*a + &*b) / rat(2);
            if s.count(a, &mid) == 1 {
                *b = mid;
            } else {
                *a = mid;
            }
        }
    }
    let (lo, hi) = bounds(&roots);
    (lo + hi) / 2.0
}

/// Mahler measure `|lc| prod max(1, |root|)` within `tol`.
///
/// Cyclotomic factors are removed first (exactly 1.0 for a monic product of
/// cyclotomics). The remainder must either have only real roots, or be
/// palindromic of even degree with a real-rooted trace polynomial, which covers
/// transforms `z^n chi(z + 1/z)` of Hermitian characteristic polynomials.
pub fn mahler_measure(p: &IntPoly, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::BadTolerance);
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let left = cyclotomic_product_factor(p)?.leftover;
    let lc = left.lead().abs().to_f64().unwrap_or(f64::INFINITY);
    if left.degree() == 0 {
        return Ok(lc);
    }
    let (_, left) = left.strip_x();
    if left.degree() == 0 {
        return Ok(lc);
    }
    let d = left.degree();
    let c = &left.coeffs;
    let palindromic = (0..=d).all(|j| c[j] == c[d - j]);
    if palindromic && d % 2 == 0 {
        let t = trace_polynomial(&left);
        if count_real_roots(&t)? != t.degree() {
            return Err(Error::Unsupported("non-real roots off the unit circle".into()));
        }
        let g = |x: f64| if x > 2.0 { (x + (x * x - 4.0).sqrt()) / 2.0 } else { 1.0 };
        let parts = square_free_decomposition(&t);
        return Ok(lc * root_product(&parts, g, tol / lc.max(1.0)));
    }
    if count_real_roots(&left)? != d {
        return Err(Error::Unsupported("polynomial has non-real roots".into()));
    }
    let parts = square_free_decomposition(&left);
    Ok(lc * root_product(&parts, |x| x.max(1.0), tol / lc.max(1.0)))
}

/// For palindromic `p` of degree `2m`, the degree-`m` `T` with
/// `p(z) = z^m T(z + 1/z)`.
fn trace_polynomial(p: &IntPoly) -> IntPoly {
    let m = p.degree() / 2;
    let x = IntPoly::from_i64s(&[0, 1]);
    let mut d_prev = IntPoly::from_i64s(&[2]);
    let mut d_cur = x.clone();
    let mut t = IntPoly::new(vec![p.coeffs[m].clone()]);
    for j in 1..=m {
        t = t.add(&d_cur.scale(&p.coeffs[m + j]));
        let next = x.mul(&d_cur).sub(&d_prev);
        d_prev = d_cur;
        d_cur = next;
    }
    t
}

/// Exact test that a real-rooted monic polynomial has every root in [-2, 2].
///
/// For real-rooted input Descartes' rule is exact: all roots are `<= 2` iff
/// `p(x + 2)` has no sign changes, and `>= -2` iff `p(x - 2)` alternates.
/// Only valid when the caller knows the roots are real (Hermitian matrices).
pub fn real_rooted_in_pm2(p: &[i128]) -> bool {
    fn shift(p: &[i128], c: i128) -> Option<Vec<i128>> {
        let mut v = p.to_vec();
        let n = v.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                v[j] = v[j].checked_add(v[j + 1].checked_mul(c)?)?;
            }
        }
        Some(v)
    }
    let n = p.len().saturating_sub(1);
    let (up, down) = match (shift(p, 2), shift(p, -2)) {
        (Some(u), Some(d)) => (u, d),
        _ => {
            let q = IntPoly::from_i128s(p);
            let up = q.taylor_shift(2);
            let down = q.taylor_shift(-2);
            let ok_up = up.coeffs.iter().all(|c| !c.is_negative());
            let ok_down = down.coeffs.iter().enumerate().all(|(k, c)| {
                let s = if (n - k).is_multiple_of(2) { c.clone() } else { -c };
                !s.is_negative()
            });
            return ok_up && ok_down;
        }
    };
    up.iter().all(|&c| c >= 0)
        && down.iter().enumerate().all(|(k, &c)| if (n - k).is_multiple_of(2) { c >= 0 } else { c <= 0 })
}
