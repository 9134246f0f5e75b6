//! Exit criteria for the workbench. Each test prints one PASS/FAIL line.
//!
//! Run with `cargo test -p ordiag-core --test acceptance -- --nocapture` to
//! see the lines.

use std::time::{Duration, Instant};

use ordiag::collapse_map::check_embedding;
use ordiag::diagram::Diagram;
use ordiag::harness::{
    self, check_facts, check_injectivity, check_ll_equivalence, check_round_trip, check_total_order,
    check_veblen_laws, descent_search, enumerate, first_unsorted, Oo, Pi, Policy, TripleMode, Vb,
};
use ordiag::hull::{consistency_report, saturate_in};
use ordiag::report::PropertyReport;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn verdict(criterion: u32, title: &str, report: &PropertyReport, elapsed: Duration, limit: Option<Duration>) {
    let in_time = limit.map_or(true, |l| elapsed <= l);
    let ok = report.passed() && in_time;
    let limit_note = limit.map_or(String::new(), |l| format!(", limit {:.0?}", l));
    println!(
        "[criterion {criterion}] {} {title}: {} checks, {} failures, {:.2?}{limit_note}",
        if ok { "PASS" } else { "FAIL" },
        report.checked,
        report.failures,
        elapsed,
    );
    assert!(report.passed(), "{report}");
    assert!(in_time, "criterion {criterion} took {elapsed:?}, limit {limit:?}");
}

#[test]
fn criterion_1_order_axioms() {
    let start = Instant::now();
    let space = enumerate::<Oo>(5).unwrap();
    let report = check_total_order::<Oo>(
        &space,
        TripleMode::Sampled {
            count: 100_000,
            seed: 0x5eed,
        },
    );
    assert_eq!(first_unsorted::<Oo>(&space), None);
    println!("  oo space at 5 nodes: {} terms", space.len());
    verdict(1, "order axioms on oo/5", &report, start.elapsed(), Some(Duration::from_secs(60)));
}

#[test]
fn criterion_2_collapse_facts() {
    let start = Instant::now();
    let space = enumerate::<Oo>(5).unwrap();
    let alphas = enumerate::<Oo>(4).unwrap();
    let report = check_facts(&space.terms, &alphas.terms);
    verdict(2, "facts (<1)-(<4)", &report, start.elapsed(), None);
}

#[test]
fn criterion_3_hull_oracle_agreement() {
    let start = Instant::now();
    let budget = 8;
    let universe = enumerate::<Oo>(budget).unwrap();
    let alphas = enumerate::<Oo>(3).unwrap();
    let xis = enumerate::<Oo>(4).unwrap();
    let mut report = PropertyReport::new("hull agreement");
    for alpha in alphas.iter() {
        let hull = saturate_in(alpha, budget, &universe.terms).unwrap();
        assert_eq!(hull.first_unjustified(), None);
        report = report.merge(consistency_report(&hull, &xis.terms, ordiag::diagram::compare));
    }
    println!(
        "  {} alphas, {} xis, universe {} terms at budget {budget}",
        alphas.len(),
        xis.len(),
        universe.len()
    );
    verdict(3, "hull oracle agrees with d-order", &report, start.elapsed(), Some(Duration::from_secs(300)));
}

#[test]
fn criterion_4_injectivity() {
    let start = Instant::now();
    let space = enumerate::<Oo>(5).unwrap();
    let report = check_injectivity(&space.terms);
    verdict(4, "d a = d b => a = b", &report, start.elapsed(), None);
}

#[test]
fn criterion_5_ll_equivalence() {
    let start = Instant::now();
    let space = enumerate::<Oo>(5).unwrap();
    let report = check_ll_equivalence(&space.terms);
    verdict(5, "two forms of << agree", &report, start.elapsed(), None);
}

#[test]
fn criterion_6_veblen_laws() {
    let start = Instant::now();
    let space = enumerate::<Vb>(5).unwrap();
    let report = check_veblen_laws(&space.terms);
    println!("  vb space at 5 nodes: {} terms", space.len());
    verdict(6, "Veblen fixed points and monotonicity", &report, start.elapsed(), None);
}

#[test]
fn criterion_7_embedding() {
    let start = Instant::now();
    let space = enumerate::<Pi>(5).unwrap();
    let report = check_embedding(&space.terms);
    println!(
        "  pi space at 5 nodes: {} terms, {} in dom(F)",
        space.len(),
        space.iter().filter(|t| ordiag::collapse_map::in_domain(t)).count()
    );
    verdict(7, "F is an order embedding", &report, start.elapsed(), Some(Duration::from_secs(120)));
}

#[test]
fn criterion_8_descent_search() {
    let start = Instant::now();
    let space = enumerate::<Oo>(5).unwrap();
    let mut rng = StdRng::seed_from_u64(8);
    let mut report = PropertyReport::new("descent");
    for _ in 0..1_000 {
        let seed: &Diagram = &space.terms[rng.gen_range(0..space.len())];
        let chain = descent_search::<Oo>(&space, seed, Policy::Random(rng.gen()), 10_000);
        let descending = chain
            .terms
            .windows(2)
            .all(|w| ordiag::diagram::compare(&w[1], &w[0]) == std::cmp::Ordering::Less);
        report.check(!chain.truncated && descending, || ordiag::report::Witness {
            law: "descent terminates unflagged".into(),
            terms: vec![seed.to_string()],
            expected: "strictly descending, not truncated".into(),
            actual: format!("truncated={} descending={descending}", chain.truncated),
            size: seed.node_count(),
        });
    }
    verdict(8, "random descents terminate", &report, start.elapsed(), None);
}

#[test]
fn criterion_9_round_trip() {
    let start = Instant::now();
    let report = check_round_trip::<Oo>(&enumerate::<Oo>(5).unwrap())
        .merge(check_round_trip::<Vb>(&enumerate::<Vb>(5).unwrap()))
        .merge(check_round_trip::<Pi>(&enumerate::<Pi>(5).unwrap()));
    verdict(9, "parse . print = id on oo, vb, pi", &report, start.elapsed(), None);
}

#[test]
fn spaces_respect_the_default_cap() {
    assert!(harness::enumerate::<Oo>(harness::DEFAULT_NODE_CAP + 1).is_err());
}
