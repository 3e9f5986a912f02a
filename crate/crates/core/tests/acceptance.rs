//! One test per acceptance criterion. Each prints a single `PASS`/`FAIL`
//! line (plus detail lines on failure) and then asserts.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use cyclo::catalog::{self, Kind};
use cyclo::equiv::{canonical_key, contains_up_to_equiv, EquivFlags};
use cyclo::gram::{self, AnchorFamily};
use cyclo::graph::HGraph;
use cyclo::poly::{count_roots_at_most, mahler_measure, IntPoly};
use cyclo::ring::RingId;
use cyclo::search::{self, GrowConfig};
use cyclo::spectra::{is_cyclotomic, is_cyclotomic_checked, is_cyclotomic_kronecker, mahler};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

fn report(id: u32, title: &str, ok: bool, summary: String, details: &[String], started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    let ok = ok && elapsed <= budget;
    println!(
        "{} criterion {id} {title}: {summary} ({:.1?} of {:?})",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    for d in details {
        println!("    {d}");
    }
    assert!(ok, "criterion {id} failed");
}

const MINUTE: Duration = Duration::from_secs(60);

#[test]
fn criterion_1_catalog_gate() {
    let t = Instant::now();
    let r = catalog::gate_maximal(8);
    let sporadics = catalog::SPORADIC_NAMES.len();
    let details: Vec<String> = r.violations.iter().map(|(g, why)| format!("{g}: {why}")).collect();
    let ok = r.ok() && sporadics == 19;
    report(
        1,
        "catalog gate",
        ok,
        format!("{} maximals checked, {} violations", r.checked, r.violations.len()),
        &details,
        t,
        2 * MINUTE,
    );
}

#[test]
fn criterion_2_excluded_polarity() {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut checked = 0;
    for e in catalog::fixed_entries() {
        let want = match e.kind {
            Kind::ExcludedType1 => false,
            Kind::ExcludedType2 => true,
            _ => continue,
        };
        checked += 1;
        match is_cyclotomic_checked(&e.graph) {
            Ok(c) if c == want => {}
            Ok(c) => details.push(format!("{}: is_cyclotomic = {c}", e.name)),
            Err(err) => details.push(format!("{}: {err}", e.name)),
        }
    }
    let ok = details.is_empty() && checked > 0;
    report(
        2,
        "excluded-subgraph polarity",
        ok,
        format!("{checked} graphs, {} wrong", details.len()),
        &details,
        t,
        MINUTE,
    );
}

#[test]
fn criterion_3_containment_tables() {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut rows = 0;
    for name in catalog::TABLES {
        let r = search::verify_table(name).expect("table verification runs");
        for row in &r.rows {
            rows += 1;
            if !row.holds {
                details.push(format!("{name} {}: a closure graph embeds in none of {:?}", row.excluded, row.maximals));
            }
            for (m, detected) in &row.drop_detected {
                if !detected {
                    details.push(format!("{name} {}: still holds without {m}", row.excluded));
                }
            }
        }
    }
    let ok = details.is_empty();
    report(3, "containment tables", ok, format!("{rows} rows, {} problems", details.len()), &details, t, 30 * MINUTE);
}

struct AnchorRun {
    list: &'static str,
    size: usize,
    anchors: &'static [&'static str],
}

fn anchor_run(run: &AnchorRun) -> (bool, String, Vec<String>) {
    let cfg = GrowConfig::for_list(run.list).expect("known list");
    let rep = search::grow(&cfg).expect("growth runs");
    let anchors: Vec<HGraph> = run.anchors.iter().map(|a| catalog::lookup(a, None).expect("anchor")).collect();
    let mut checked = 0;
    let mut details = Vec::new();
    for r in rep.representatives.get(&run.size).into_iter().flatten() {
        let g = &r.graph;
        // L1 classes are filtered to max degree >= 3, L3 classes to charged graphs
        let relevant = match run.list {
            "L1" => g.max_degree() >= 3,
            "L3" => g.is_charged(),
            _ => true,
        };
        if !relevant {
            continue;
        }
        checked += 1;
        if !anchors.iter().any(|h| contains_up_to_equiv(g, h, EquivFlags::FULL)) {
            details.push(format!("{}: no {:?} in {}", run.list, run.anchors, serde_json::to_string(g).expect("json")));
        }
    }
    let ok = rep.frontier_exhausted && checked > 0 && details.is_empty();
    let summary = format!("{} at {} vertices: {checked} classes, counts {:?}", run.list, run.size, rep.counts_by_n);
    (ok, summary, details)
}

#[test]
fn criterion_4_anchor_growth() {
    let runs = [
        AnchorRun { list: "L1", size: 9, anchors: &["P_0_3", "P_1_2"] },
        AnchorRun { list: "L2", size: 7, anchors: &["P_7"] },
        AnchorRun { list: "L3", size: 5, anchors: &["P_6"] },
    ];
    let started = Instant::now();
    let mut all_ok = true;
    let mut summaries = Vec::new();
    let mut details = Vec::new();
    for run in &runs {
        let t = Instant::now();
        let (ok, s, d) = anchor_run(run);
        let ok = ok && t.elapsed() <= 20 * MINUTE;
        all_ok &= ok;
        summaries.push(format!("{s} [{}]", if ok { "ok" } else { "failed" }));
        details.extend(d);
    }
    details.splice(0..0, summaries);
    report(4, "anchor growth", all_ok, format!("{} runs", runs.len()), &details, started, 60 * MINUTE);
}

#[test]
fn criterion_5_classification_completeness() {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for (ring, n) in [(RingId::Gaussian, 6), (RingId::Eisenstein, 6), (RingId::Rational, 8)] {
        let r = search::verify_classification(ring, n).expect("classification runs");
        ok &= r.ok();
        details.push(format!(
            "{} to {n}: {} classes, {} orphans, {} unlisted maximals",
            ring.tag(),
            r.counts_by_n.values().sum::<usize>(),
            r.orphans.len(),
            r.unlisted_maximal.len()
        ));
        for g in r.orphans.iter().chain(&r.unlisted_maximal) {
            details.push(serde_json::to_string(g).expect("json"));
        }
    }
    report(5, "classification completeness", ok, "Zi and Zw to 6, Z to 8".into(), &details, t, 10 * MINUTE);
}

fn cyclotomic_fixtures() -> Vec<(String, HGraph)> {
    let mut out: Vec<(String, HGraph)> = Vec::new();
    for ring in RingId::ALL {
        for (name, g) in catalog::gate_maximals(ring, 8) {
            out.push((format!("{name} over {}", ring.tag()), g));
        }
    }
    for e in catalog::fixed_entries() {
        if e.kind == Kind::ExcludedType2 {
            out.push((e.name.clone(), e.graph.clone()));
        }
    }
    out
}

#[test]
fn criterion_6_mahler() {
    let t = Instant::now();
    let mut details = Vec::new();
    let fixtures = cyclotomic_fixtures();
    for (name, g) in &fixtures {
        match mahler(g, 1e-9) {
            Ok(m) if m == 1.0 => {}
            Ok(m) => details.push(format!("{name}: M = {m}")),
            Err(e) => details.push(format!("{name}: {e}")),
        }
    }
    let lehmer = IntPoly::parse("z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1").expect("polynomial");
    let m = mahler_measure(&lehmer, 1e-9).expect("Lehmer measure");
    if (m - 1.176280818).abs() > 1e-9 {
        details.push(format!("Lehmer: M = {m}"));
    }
    let ok = details.is_empty();
    report(6, "Mahler measure", ok, format!("{} fixtures at 1, Lehmer {m:.10}", fixtures.len()), &details, t, MINUTE);
}

#[test]
fn criterion_7_gram_identities() {
    let t = Instant::now();
    let mut cases: Vec<(String, AnchorFamily, HGraph)> = Vec::new();
    for s in 2..=6 {
        for l in 0..=s {
            let r = s - l;
            cases.push((format!("P'_{l},{r}"), AnchorFamily::Lr(l, r), catalog::make_p_primed(l, r).expect("anchor")));
        }
    }
    for r in 2..=6 {
        cases.push((format!("P'_{}", 2 * r + 1), AnchorFamily::Odd(r), catalog::make_p_odd_primed(r).expect("anchor")));
    }
    for r in 3..=6 {
        cases.push((
            format!("P'_{}", 2 * r),
            AnchorFamily::Charged(r),
            catalog::make_p_charged_primed(r).expect("anchor"),
        ));
    }
    let mut details = Vec::new();
    let mut sites = 0;
    for (name, fam, g) in &cases {
        match gram::verify_hollow_identities(*fam) {
            Ok(true) => {}
            Ok(false) => details.push(format!("{name}: hollow identity fails")),
            Err(e) => details.push(format!("{name}: {e}")),
        }
        match gram::verify_four_vector_sites(g) {
            Ok(k) if k == gram::four_vector_sites(g).len() => sites += k,
            Ok(_) => details.push(format!("{name}: four-vector identity fails")),
            Err(e) => details.push(format!("{name}: {e}")),
        }
    }
    let ok = details.is_empty() && sites > 0;
    report(
        7,
        "Gram identities",
        ok,
        format!("{} anchors, {sites} four-vector sites", cases.len()),
        &details,
        t,
        MINUTE,
    );
}

fn oracles_agree(g: &HGraph) -> Result<bool, TestCaseError> {
    is_cyclotomic_checked(g).map_err(|e| TestCaseError::fail(format!("{e} on {}", serde_json::to_string(g).unwrap())))
}

fn interlacing(g: &HGraph) -> Result<(), TestCaseError> {
    let grid: Vec<BigRational> = (-8..=8).map(|k| BigRational::new(BigInt::from(k), BigInt::from(4))).collect();
    let chi = g.charpoly();
    for v in 0..g.n() {
        let b = g.remove_vertex(v).expect("vertex");
        if b.n() > 0 && !oracles_agree(&b)? {
            return Err(TestCaseError::fail("vertex deletion of a cyclotomic graph is not cyclotomic"));
        }
        let chi_b = b.charpoly();
        for t in &grid {
            let a = count_roots_at_most(&chi, t).expect("nonzero");
            let c = count_roots_at_most(&chi_b, t).expect("nonzero");
            if c > a || c + 1 < a {
                return Err(TestCaseError::fail(format!("sandwich broken at {t}: {c} vs {a}")));
            }
        }
    }
    Ok(())
}

fn run_cases<S: proptest::strategy::Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

#[test]
fn criterion_8_property_suites() {
    use proptest::prelude::*;
    let t = Instant::now();
    let mut details = Vec::new();

    let keys =
        run_cases(200, (common::any_graph(), any::<u64>(), any::<bool>(), any::<bool>()), |(g, seed, gal, neg)| {
            oracles_agree(&g)?;
            let h = common::scramble(&g, seed, gal, neg);
            prop_assert_eq!(canonical_key(&g, EquivFlags::FULL), canonical_key(&h, EquivFlags::FULL));
            if !neg {
                prop_assert_eq!(canonical_key(&g, EquivFlags::STRONG), canonical_key(&h, EquivFlags::STRONG));
            }
            Ok(())
        });
    details.push(format!(
        "canonical key invariance, 200 trials: {}",
        keys.as_ref().map_or_else(|e| e.clone(), |_| "ok".into())
    ));

    let inter = run_cases(100, common::cyclotomic_graph(), |g| {
        prop_assert!(oracles_agree(&g)?);
        interlacing(&g)
    });
    details.push(format!("interlacing, 100 graphs: {}", inter.as_ref().map_or_else(|e| e.clone(), |_| "ok".into())));

    // push one vertex past degree 4 by adding a heavy neighbour or a charge
    let gate = run_cases(100, (common::cyclotomic_graph(), any::<u64>(), 1i64..=2), |(g, pick, c)| {
        let v = (pick % g.n() as u64) as usize;
        let deg = g.degree(v).expect("vertex");
        let ring = g.ring();
        let bumped = if deg + c * c > 4 && g.charge(v) == 0 {
            let mut h = g.clone();
            h.set_charge(v, c).expect("charge");
            h
        } else {
            let w = cyclo::ring::QuadInt::int(2, ring);
            g.attach_vertex(0, &[(v, w)]).expect("attach")
        };
        if bumped.max_degree() <= 4 {
            return Ok(());
        }
        prop_assert!(!oracles_agree(&bumped)?);
        prop_assert!(!cyclo::spectra::is_cyclotomic_fast(&bumped));
        Ok(())
    });
    details.push(format!("degree gate: {}", gate.as_ref().map_or_else(|e| e.clone(), |_| "ok".into())));

    let agree = run_cases(200, common::any_graph(), |g| {
        let a = is_cyclotomic(&g).is_cyclotomic;
        prop_assert_eq!(a, is_cyclotomic_kronecker(&g).is_cyclotomic);
        prop_assert_eq!(a, cyclo::spectra::is_cyclotomic_fast(&g));
        Ok(())
    });
    details
        .push(format!("oracle agreement, 200 graphs: {}", agree.as_ref().map_or_else(|e| e.clone(), |_| "ok".into())));

    let ok = keys.is_ok() && inter.is_ok() && gate.is_ok() && agree.is_ok();
    report(8, "property suites", ok, "four suites".into(), &details, t, 5 * MINUTE);
}

#[test]
fn criterion_9_heavy_edges() {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    let mut counts = BTreeMap::new();
    for ring in [RingId::Gaussian, RingId::Eisenstein] {
        let r = search::verify_weight_heavy_edges(ring).expect("closure runs");
        ok &= r.ok() && (ring != RingId::Eisenstein || r.one_plus_omega.is_some());
        counts.insert(format!("{} weight 2", ring.tag()), r.weight_two.classes);
        if let Some(o) = &r.one_plus_omega {
            counts.insert(format!("{} 1+w", ring.tag()), o.classes);
        }
        for o in [Some(&r.weight_two), r.one_plus_omega.as_ref()].into_iter().flatten() {
            if let Some(g) = &o.counterexample {
                details.push(format!("{}: {}", ring.tag(), serde_json::to_string(g).expect("json")));
            }
        }
    }
    report(9, "heavy-edge closures", ok, format!("classes {counts:?}"), &details, t, MINUTE);
}
