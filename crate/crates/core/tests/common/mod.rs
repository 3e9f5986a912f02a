#![allow(dead_code)]

use cyclo::catalog;
use cyclo::graph::HGraph;
use cyclo::ring::{elements_of_norm_at_most, units, QuadInt, RingId};
use proptest::prelude::*;

pub fn ring_strategy() -> impl Strategy<Value = RingId> {
    prop_oneof![Just(RingId::Rational), Just(RingId::Gaussian), Just(RingId::Eisenstein)]
}

/// Maximal graphs of every ring with at most 12 vertices.
pub fn maximal_pool() -> Vec<HGraph> {
    RingId::ALL.iter().flat_map(|&r| catalog::gate_maximals(r, 6)).map(|(_, g)| g).filter(|g| g.n() <= 12).collect()
}

/// Induced subgraphs of known maximals: cyclotomic by interlacing.
pub fn cyclotomic_graph() -> impl Strategy<Value = HGraph> {
    let pool = maximal_pool();
    (0..pool.len(), any::<u64>()).prop_map(move |(i, mask)| {
        let g = &pool[i];
        let mut subset: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        if subset.is_empty() {
            subset.push((mask % g.n() as u64) as usize);
        }
        g.induced_subgraph(&subset).expect("subset in range")
    })
}

/// Arbitrary small graphs with weights of norm at most 4 and charges in [-2, 2].
pub fn any_graph() -> impl Strategy<Value = HGraph> {
    (ring_strategy(), 1usize..=6).prop_flat_map(|(ring, n)| {
        let ws = elements_of_norm_at_most(ring, 4);
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(-2i64..=2, n),
            prop::collection::vec(prop::option::weighted(0.4, prop::sample::select(ws)), pairs),
        )
            .prop_map(move |(charges, ws)| {
                let mut g = HGraph::with_charges(ring, charges);
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if let Some(w) = ws[k] {
                            g.set_weight(u, v, w).expect("valid edge");
                        }
                        k += 1;
                    }
                }
                g
            })
    })
}

/// A random relabelling, switching and (optionally) conjugation and negation.
pub fn scramble(g: &HGraph, seed: u64, galois: bool, negate: bool) -> HGraph {
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut rng);
    let mut h = g.permute(&perm).expect("permutation");
    let us: Vec<QuadInt> = units(g.ring());
    for v in 0..h.n() {
        let u = us[rng.gen_range(0..us.len())];
        h = cyclo::equiv::switch(&h, v, u).expect("unit switch");
    }
    if galois {
        h = h.galois_conj();
    }
    if negate {
        h = h.negate();
    }
    h
}
