//! Cyclotomicity (all eigenvalues in [-2, 2]), maximality and Mahler measure.

use crate::error::{Error, Result};
use crate::gram::ExtensionFilter;
use crate::graph::{enumerate_attachments, HGraph};
use crate::poly::{
    count_real_roots_in, cyclotomic_product_factor, mahler_measure, real_rooted_in_pm2, resolvent, root_multiplicity,
    CycloFactorization, IntPoly,
};
use crate::ring::{elements_of_norm_at_most, QuadInt};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Charges a vertex of a cyclotomic matrix can carry (`charge^2 <= 4`).
pub const CHARGES: [i64; 5] = [0, 1, -1, 2, -2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum Witness {
    /// Root counts of the characteristic polynomial, with multiplicity.
    RootCount { degree: usize, at_minus_two: usize, at_two: usize, interior: usize },
    /// Factorisation of `z^n chi(z + 1/z)` into cyclotomic polynomials.
    Resolvent { factorization: CycloFactorization },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloVerdict {
    pub is_cyclotomic: bool,
    pub witness: Witness,
}

fn sturm_verdict(chi: &IntPoly) -> CycloVerdict {
    let two = BigRational::from_integer(BigInt::from(2));
    let degree = chi.degree();
    let at_minus_two = root_multiplicity(chi, -2);
    let at_two = root_multiplicity(chi, 2);
    let interior =
        if degree == 0 { 0 } else { count_real_roots_in(chi, &-two.clone(), &two, false).expect("nonzero polynomial") };
    CycloVerdict {
        is_cyclotomic: at_minus_two + at_two + interior == degree,
        witness: Witness::RootCount { degree, at_minus_two, at_two, interior },
    }
}

/// Sturm-based test: every root of the characteristic polynomial in [-2, 2].
pub fn is_cyclotomic(g: &HGraph) -> CycloVerdict {
    sturm_verdict(&g.charpoly())
}

/// Kronecker-style test: `z^n chi(z + 1/z)` is a product of cyclotomic polynomials.
pub fn is_cyclotomic_kronecker(g: &HGraph) -> CycloVerdict {
    let r = resolvent(&g.charpoly()).expect("characteristic polynomials are monic");
    let f = cyclotomic_product_factor(&r).expect("nonzero polynomial");
    CycloVerdict { is_cyclotomic: f.is_complete(), witness: Witness::Resolvent { factorization: f } }
}

/// Run both oracles and insist they agree.
pub fn is_cyclotomic_checked(g: &HGraph) -> Result<bool> {
    let a = is_cyclotomic(g).is_cyclotomic;
    let b = is_cyclotomic_kronecker(g).is_cyclotomic;
    if a != b {
        return Err(Error::Hypothesis(format!("cyclotomicity oracles disagree (Sturm {a}, Kronecker {b})")));
    }
    Ok(a)
}

/// Quick exact test used inside enumeration loops: degree gate, then Descartes'
/// rule on the shifted characteristic polynomial (exact because Hermitian
/// matrices have real spectrum), falling back to Sturm on overflow.
pub fn is_cyclotomic_fast(g: &HGraph) -> bool {
    if g.max_degree() > 4 {
        return false;
    }
    match g.charpoly_i128() {
        Some(c) => real_rooted_in_pm2(&c),
        None => is_cyclotomic(g).is_cyclotomic,
    }
}

/// Whether no one-vertex extension of a connected cyclotomic `g` is cyclotomic.
///
/// Extensions range over charges in {0, +-1, +-2} and incident weights of norm
/// at most 4, keeping every degree at most 4 (anything else fails anyway).
pub fn is_maximal(g: &HGraph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if !is_cyclotomic_fast(g) {
        return Err(Error::NotCyclotomic);
    }
    Ok(maximal_counterexample(g).is_none())
}

/// A cyclotomic one-vertex extension of `g`, if there is one. The extension
/// returned is the first in enumeration order.
pub fn maximal_counterexample(g: &HGraph) -> Option<HGraph> {
    let weights = elements_of_norm_at_most(g.ring(), 4);
    let atts = enumerate_attachments(g, &CHARGES, &weights, true);
    let filter = ExtensionFilter::new(g);
    atts.par_iter()
        .filter(|(c, inc)| filter.as_ref().is_none_or(|f| f.admits(*c, inc)))
        .map(|(c, inc)| g.attach_vertex(*c, inc).expect("valid attachment"))
        .find_first(is_cyclotomic_fast)
}

/// All cyclotomic one-vertex extensions of a cyclotomic `g`, in enumeration
/// order, with the first incident weight reduced modulo units.
pub fn cyclotomic_extensions(g: &HGraph, charges: &[i64], weights: &[QuadInt]) -> Vec<HGraph> {
    let atts = enumerate_attachments(g, charges, weights, true);
    let filter = ExtensionFilter::new(g);
    atts.par_iter()
        .filter(|(c, inc)| filter.as_ref().is_none_or(|f| f.admits(*c, inc)))
        .map(|(c, inc)| g.attach_vertex(*c, inc).expect("valid attachment"))
        .filter(is_cyclotomic_fast)
        .collect()
}

/// Mahler measure of `z^n chi(z + 1/z)`.
pub fn mahler(g: &HGraph, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::BadTolerance);
    }
    mahler_measure(&resolvent(&g.charpoly())?, tol)
}
