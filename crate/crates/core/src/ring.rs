//! Arithmetic in Z, Z[i] and Z[w], where w = 1/2 + sqrt(-3)/2 is a primitive
//! sixth root of unity (w^2 = w - 1).
//!
//! Elements are stored on the basis {1, t} with t = i or t = w. Coordinates are
//! `i64` with checked arithmetic; entries of the matrices handled here have norm
//! at most 4, and everything that can grow (characteristic polynomials, Sturm
//! chains) is computed in wider or arbitrary-precision types elsewhere.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingId {
    #[serde(rename = "Z")]
    Rational,
    #[serde(rename = "Zi")]
    Gaussian,
    #[serde(rename = "Zw")]
    Eisenstein,
}

impl RingId {
    pub const ALL: [RingId; 3] = [RingId::Rational, RingId::Gaussian, RingId::Eisenstein];

    pub fn tag(self) -> &'static str {
        match self {
            RingId::Rational => "Z",
            RingId::Gaussian => "Zi",
            RingId::Eisenstein => "Zw",
        }
    }

    pub fn parse(s: &str) -> Result<RingId> {
        match s {
            "Z" | "rational" | "Rational" => Ok(RingId::Rational),
            "Zi" | "gaussian" | "Gaussian" => Ok(RingId::Gaussian),
            "Zw" | "eisenstein" | "Eisenstein" => Ok(RingId::Eisenstein),
            _ => Err(Error::Parse(format!("unknown ring {s:?}"))),
        }
    }

    /// Smallest ring containing both, if any. Z embeds into the other two.
    pub fn join(self, other: RingId) -> Option<RingId> {
        match (self, other) {
            (a, b) if a == b => Some(a),
            (RingId::Rational, b) => Some(b),
            (a, RingId::Rational) => Some(a),
            _ => None,
        }
    }

    /// Name of the generator when printing.
    fn symbol(self) -> &'static str {
        match self {
            RingId::Rational => "",
            RingId::Gaussian => "i",
            RingId::Eisenstein => "w",
        }
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `a + b*t` in the given ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
    pub ring: RingId,
}

impl QuadInt {
    pub fn new(a: i64, b: i64, ring: RingId) -> Result<QuadInt> {
        if ring == RingId::Rational && b != 0 {
            return Err(Error::NotInRing(format!("{a}+{b}t"), ring));
        }
        Ok(QuadInt { a, b, ring })
    }

    pub fn int(a: i64, ring: RingId) -> QuadInt {
        QuadInt { a, b: 0, ring }
    }

    pub fn zero(ring: RingId) -> QuadInt {
        QuadInt::int(0, ring)
    }

    pub fn one(ring: RingId) -> QuadInt {
        QuadInt::int(1, ring)
    }

    /// The generator `i` or `w`. Errors for Z.
    pub fn tau(ring: RingId) -> Result<QuadInt> {
        QuadInt::new(0, 1, ring)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 0
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    fn same_ring(&self, o: &QuadInt) -> Result<()> {
        if self.ring == o.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring, o.ring))
        }
    }

    pub fn try_add(self, o: QuadInt) -> Result<QuadInt> {
        self.same_ring(&o)?;
        Ok(QuadInt {
            a: self.a.checked_add(o.a).ok_or(Error::Overflow)?,
            b: self.b.checked_add(o.b).ok_or(Error::Overflow)?,
            ring: self.ring,
        })
    }

    pub fn try_sub(self, o: QuadInt) -> Result<QuadInt> {
        self.try_add(o.try_neg()?)
    }

    pub fn try_neg(self) -> Result<QuadInt> {
        Ok(QuadInt {
            a: self.a.checked_neg().ok_or(Error::Overflow)?,
            b: self.b.checked_neg().ok_or(Error::Overflow)?,
            ring: self.ring,
        })
    }

    pub fn try_mul(self, o: QuadInt) -> Result<QuadInt> {
        self.same_ring(&o)?;
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        let (x, y) = match self.ring {
            RingId::Rational => (a * c, 0),
            RingId::Gaussian => (a * c - b * d, a * d + b * c),
            // w^2 = w - 1
            RingId::Eisenstein => (a * c - b * d, a * d + b * c + b * d),
        };
        Ok(QuadInt {
            a: i64::try_from(x).map_err(|_| Error::Overflow)?,
            b: i64::try_from(y).map_err(|_| Error::Overflow)?,
            ring: self.ring,
        })
    }

    /// Complex conjugation, which is the nontrivial Galois automorphism.
    pub fn conj(self) -> QuadInt {
        match self.ring {
            RingId::Rational => self,
            RingId::Gaussian => QuadInt { a: self.a, b: -self.b, ring: self.ring },
            // conj(w) = 1 - w
            RingId::Eisenstein => QuadInt { a: self.a + self.b, b: -self.b, ring: self.ring },
        }
    }

    /// `x * conj(x)` as a rational integer.
    pub fn norm(&self) -> i64 {
        let (a, b) = (self.a, self.b);
        match self.ring {
            RingId::Rational => a * a,
            RingId::Gaussian => a * a + b * b,
            RingId::Eisenstein => a * a + a * b + b * b,
        }
    }

    /// Same element viewed in a larger ring.
    pub fn promote(self, ring: RingId) -> Result<QuadInt> {
        if self.ring == ring {
            return Ok(self);
        }
        if self.ring == RingId::Rational {
            return Ok(QuadInt::int(self.a, ring));
        }
        if self.b == 0 {
            // rational-valued elements move freely
            return Ok(QuadInt::int(self.a, ring));
        }
        Err(Error::RingMismatch(self.ring, ring))
    }

    /// The member of the unit orbit `{u x}` minimising `(norm, a, b)`, together
    /// with the unit `u` that maps `x` onto it. Zero maps to itself with `u = 1`.
    pub fn orbit_rep(self) -> (QuadInt, QuadInt) {
        let mut best = (self, QuadInt::one(self.ring));
        for u in units(self.ring) {
            let y = u * self;
            if (y.a, y.b) < (best.0.a, best.0.b) {
                best = (y, u);
            }
        }
        best
    }

    /// Multiplicative inverse of a unit.
    pub fn unit_inverse(self) -> Result<QuadInt> {
        if !self.is_unit() {
            return Err(Error::NotUnit(self.to_string()));
        }
        Ok(self.conj())
    }

    /// Parse strings such as `2`, `-i`, `1+i`, `3-2w`, `-1-w`.
    pub fn parse(s: &str, ring: RingId) -> Result<QuadInt> {
        let bad = || Error::Parse(format!("cannot read {s:?} as an element of {ring}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let mut a = 0i64;
        let mut b = 0i64;
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if rest.len() == t.len() => (1, rest),
                _ => return Err(bad()),
            };
            let end = body[1.min(body.len())..].find(['+', '-']).map(|p| p + 1).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let term = term.trim_end_matches('*');
            let (coef, is_tau) = match term.strip_suffix(['i', 'w', 'ω']) {
                Some(c) => {
                    let c = c.trim_end_matches('*');
                    let sym = &term[c.len()..].trim_start_matches('*');
                    let want = match ring {
                        RingId::Gaussian => *sym == "i",
                        RingId::Eisenstein => *sym == "w" || *sym == "ω",
                        RingId::Rational => false,
                    };
                    if !want {
                        return Err(bad());
                    }
                    (if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad())? }, true)
                }
                None => (term.parse::<i64>().map_err(|_| bad())?, false),
            };
            if is_tau {
                b += sign * coef;
            } else {
                a += sign * coef;
            }
        }
        QuadInt::new(a, b, ring)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.ring.symbol();
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => match b {
                1 => write!(f, "{sym}"),
                -1 => write!(f, "-{sym}"),
                _ => write!(f, "{b}{sym}"),
            },
            (a, b) => {
                write!(f, "{a}")?;
                match b {
                    1 => write!(f, "+{sym}"),
                    -1 => write!(f, "-{sym}"),
                    b if b > 0 => write!(f, "+{b}{sym}"),
                    b => write!(f, "{b}{sym}"),
                }
            }
        }
    }
}

// Operator forms panic on ring mismatch or overflow; the `try_*` methods are
// the fallible versions.
impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        self.try_add(o).expect("QuadInt addition")
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, o: QuadInt) -> QuadInt {
        self.try_sub(o).expect("QuadInt subtraction")
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, o: QuadInt) -> QuadInt {
        self.try_mul(o).expect("QuadInt multiplication")
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        self.try_neg().expect("QuadInt negation")
    }
}

pub fn add(x: QuadInt, y: QuadInt) -> Result<QuadInt> {
    x.try_add(y)
}

pub fn mul(x: QuadInt, y: QuadInt) -> Result<QuadInt> {
    x.try_mul(y)
}

pub fn conj(x: QuadInt) -> QuadInt {
    x.conj()
}

pub fn norm(x: QuadInt) -> i64 {
    x.norm()
}

/// All norm-1 elements, in a fixed order starting with 1.
pub fn units(ring: RingId) -> Vec<QuadInt> {
    let q = |a, b| QuadInt { a, b, ring };
    match ring {
        RingId::Rational => vec![q(1, 0), q(-1, 0)],
        RingId::Gaussian => vec![q(1, 0), q(0, 1), q(-1, 0), q(0, -1)],
        // powers of w: 1, w, w-1, -1, -w, 1-w
        RingId::Eisenstein => vec![q(1, 0), q(0, 1), q(-1, 1), q(-1, 0), q(0, -1), q(1, -1)],
    }
}

/// Every `x` with `1 <= norm(x) <= bound`, sorted by `(norm, a, b)`.
pub fn elements_of_norm_at_most(ring: RingId, bound: i64) -> Vec<QuadInt> {
    if bound < 1 {
        return Vec::new();
    }
    // a^2+ab+b^2 >= (a^2+b^2)/2, so |a|,|b| <= sqrt(2*bound) covers both rings
    let r = ((2 * bound) as f64).sqrt().ceil() as i64 + 1;
    let mut out = Vec::new();
    for a in -r..=r {
        let bs = if ring == RingId::Rational { 0..=0 } else { -r..=r };
        for b in bs {
            let x = QuadInt { a, b, ring };
            let n = x.norm();
            if n >= 1 && n <= bound {
                out.push(x);
            }
        }
    }
    out.sort_by_key(|x| (x.norm(), x.a, x.b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zi(a: i64, b: i64) -> QuadInt {
        QuadInt::new(a, b, RingId::Gaussian).unwrap()
    }
    fn zw(a: i64, b: i64) -> QuadInt {
        QuadInt::new(a, b, RingId::Eisenstein).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(zi(1, 1) + zi(1, -1), zi(2, 0));
        assert!((zw(1, 1) + zw(-1, -1)).is_zero());
        let five = QuadInt::int(2, RingId::Rational) + QuadInt::int(3, RingId::Rational);
        assert_eq!(five.a, 5);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        assert_eq!(add(zi(1, 0), zw(1, 0)), Err(Error::RingMismatch(RingId::Gaussian, RingId::Eisenstein)));
        assert!(mul(zi(1, 0), QuadInt::one(RingId::Rational)).is_err());
    }

    #[test]
    fn defining_relations() {
        assert_eq!(zi(0, 1) * zi(0, 1), zi(-1, 0));
        assert_eq!(zw(0, 1) * zw(0, 1), zw(-1, 1));
        assert_eq!(zi(1, 1) * zi(1, -1), zi(2, 0));
        // w is a primitive sixth root of unity
        let w = zw(0, 1);
        let mut p = QuadInt::one(RingId::Eisenstein);
        for k in 1..=6 {
            p = p * w;
            assert_eq!(p.is_one(), k == 6);
        }
    }

    #[test]
    fn conjugation_and_norm() {
        assert_eq!(zi(1, 1).conj(), zi(1, -1));
        assert_eq!(zw(0, 1).conj(), zw(1, -1));
        assert_eq!(QuadInt::int(5, RingId::Rational).conj().a, 5);
        assert_eq!(zi(1, 1).norm(), 2);
        assert_eq!(zw(1, 1).norm(), 3);
        assert_eq!(QuadInt::int(2, RingId::Rational).norm(), 4);
        for x in elements_of_norm_at_most(RingId::Eisenstein, 7) {
            assert_eq!(x * x.conj(), QuadInt::int(x.norm(), RingId::Eisenstein));
        }
    }

    #[test]
    fn unit_counts() {
        assert_eq!(units(RingId::Rational).len(), 2);
        assert_eq!(units(RingId::Gaussian).len(), 4);
        assert_eq!(units(RingId::Eisenstein).len(), 6);
        for r in RingId::ALL {
            for u in units(r) {
                assert!(u.is_unit());
                assert!((u * u.unit_inverse().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn small_norm_elements() {
        let g = elements_of_norm_at_most(RingId::Gaussian, 4);
        assert_eq!(g.len(), 12);
        let e = elements_of_norm_at_most(RingId::Eisenstein, 4);
        assert_eq!(e.len(), 18);
        assert_eq!(e.iter().filter(|x| x.norm() == 3).count(), 6);
        let z: Vec<i64> = elements_of_norm_at_most(RingId::Rational, 4).iter().map(|x| x.a).collect();
        assert_eq!(z, vec![-1, 1, -2, 2]);
    }

    #[test]
    fn orbit_representatives() {
        for r in RingId::ALL {
            for x in elements_of_norm_at_most(r, 9) {
                let (rep, u) = x.orbit_rep();
                assert_eq!(u * x, rep);
                for v in units(r) {
                    assert_eq!((v * x).orbit_rep().0, rep);
                }
            }
        }
        assert_eq!(zi(0, -1).orbit_rep().0, zi(-1, 0));
        assert_eq!(zi(1, 1).orbit_rep().0, zi(-1, -1));
    }

    #[test]
    fn unit_orbit_is_free() {
        for r in RingId::ALL {
            for x in elements_of_norm_at_most(r, 12) {
                let mut orb: Vec<_> = units(r).into_iter().map(|u| u * x).collect();
                orb.sort_by_key(|y| (y.a, y.b));
                orb.dedup();
                assert_eq!(orb.len(), units(r).len());
            }
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        for r in RingId::ALL {
            for x in elements_of_norm_at_most(r, 13) {
                let s = x.to_string();
                assert_eq!(QuadInt::parse(&s, r).unwrap(), x, "{s}");
            }
        }
        assert_eq!(QuadInt::parse("1 + i", RingId::Gaussian).unwrap(), zi(1, 1));
        assert_eq!(QuadInt::parse("-2*w", RingId::Eisenstein).unwrap(), zw(0, -2));
        assert!(QuadInt::parse("i", RingId::Rational).is_err());
        assert!(QuadInt::parse("w", RingId::Gaussian).is_err());
        assert!(QuadInt::parse("1+", RingId::Gaussian).is_err());
    }

    #[test]
    fn promotion() {
        let one = QuadInt::one(RingId::Rational);
        assert_eq!(one.promote(RingId::Gaussian).unwrap(), zi(1, 0));
        assert!(zi(0, 1).promote(RingId::Eisenstein).is_err());
        assert!(QuadInt::new(1, 1, RingId::Rational).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = QuadInt::int(i64::MAX, RingId::Rational);
        assert_eq!(big.try_add(big), Err(Error::Overflow));
        assert_eq!(big.try_mul(big), Err(Error::Overflow));
    }
}
