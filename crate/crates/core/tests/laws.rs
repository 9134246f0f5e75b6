//! Order laws on spaces larger than the acceptance gate uses.

use std::cmp::Ordering;

use ordiag::collapse_map::{apply_f, check_embedding, in_domain, parse as parse_pi, PiTerm};
use ordiag::diagram::{self, Diagram};
use ordiag::harness::{
    check_facts, check_injectivity, check_ll_equivalence, check_natural_sum_laws,
    check_normalize_idempotent, check_round_trip, check_total_order, check_total_order_by,
    check_veblen_laws, enumerate, Oo, Pi, TripleMode, Vb,
};
use ordiag::hull::{check_injectivity_cross, consistency_report, saturate_in};
use ordiag::report::PropertyReport;

#[test]
fn oo_order_exhaustive_at_six_nodes() {
    let space = enumerate::<Oo>(6).unwrap();
    let report = check_total_order::<Oo>(&space, TripleMode::Exhaustive);
    assert!(report.passed(), "{report}");
}

#[test]
fn oo_facts_and_collapse_laws_at_seven_nodes() {
    let space = enumerate::<Oo>(7).unwrap();
    let alphas = enumerate::<Oo>(5).unwrap();
    for report in [
        check_facts(&space.terms, &alphas.terms),
        check_injectivity(&space.terms),
        check_ll_equivalence(&space.terms),
    ] {
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn natural_sum_and_normalization_laws() {
    let space = enumerate::<Oo>(5).unwrap();
    let report = check_natural_sum_laws(&space.terms, TripleMode::Exhaustive);
    assert!(report.passed(), "{report}");
    let report = check_normalize_idempotent(&enumerate::<Oo>(6).unwrap().terms);
    assert!(report.passed(), "{report}");
}

#[test]
fn hull_agrees_beyond_the_gate() {
    let budget = 9;
    let universe = enumerate::<Oo>(budget).unwrap();
    let xis = enumerate::<Oo>(6).unwrap();
    let mut report = PropertyReport::new("hull");
    for alpha in enumerate::<Oo>(5).unwrap().iter() {
        let hull = saturate_in(alpha, budget, &universe.terms).unwrap();
        report = report.merge(consistency_report(&hull, &xis.terms, diagram::compare));
    }
    assert!(report.passed(), "{report}");

    let report = check_injectivity_cross(&enumerate::<Oo>(4).unwrap().terms, 7).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn seeds_cover_everything_up_to_k_max() {
    let budget = 7;
    let universe = enumerate::<Oo>(budget).unwrap();
    for alpha in enumerate::<Oo>(4).unwrap().iter() {
        let hull = saturate_in(alpha, budget, &universe.terms).unwrap();
        let kmax = diagram::k_max(alpha);
        for t in universe.iter() {
            if diagram::compare(t, &kmax) != Ordering::Greater {
                assert!(hull.contains(t), "{t} <= k_max({alpha}) missing");
            }
        }
        for m in &hull.members {
            if let Diagram::Collapse(delta) = m {
                assert!(hull.contains(delta));
            }
        }
    }
}

#[test]
fn veblen_laws_to_nine_nodes() {
    let space = enumerate::<Vb>(9).unwrap();
    let report = check_total_order::<Vb>(&space, TripleMode::Exhaustive);
    assert!(report.passed(), "{report}");
    let report = check_veblen_laws(&space.terms);
    assert!(report.passed(), "{report}");
}

#[test]
fn pi_order_and_embedding_at_six_nodes() {
    let space = enumerate::<Pi>(6).unwrap();
    let report = check_total_order::<Pi>(
        &space,
        TripleMode::Sampled {
            count: 200_000,
            seed: 6,
        },
    );
    assert!(report.passed(), "{report}");
    let report = check_embedding(&space.terms);
    assert!(report.passed(), "{report}");
}

/// Collapses stay inside their bands for every generated argument.
#[test]
fn pi_collapses_stay_in_band() {
    let space = enumerate::<Pi>(5).unwrap();
    let atom = |s: &str| parse_pi(s).unwrap();
    let (s, s_plus, p, p_plus) = (atom("s"), atom("s+"), atom("p"), atom("p+"));
    for x in space.iter() {
        let hi = PiTerm::CollapseHi(Box::new(x.clone()));
        let lo = PiTerm::CollapseLo(Box::new(x.clone()));
        use ordiag::collapse_map::p_compare as c;
        assert_eq!(c(&p, &hi), Ordering::Less);
        assert_eq!(c(&hi, &p_plus), Ordering::Less);
        assert_eq!(c(&s, &lo), Ordering::Less);
        assert_eq!(c(&lo, &s_plus), Ordering::Less);
    }
}

/// `F` computed by structural recursion agrees with plain textual
/// substitution `p+ -> s+, p -> s, D1 -> D0` followed by normalization.
#[test]
fn f_matches_textual_substitution() {
    let space = enumerate::<Pi>(6).unwrap();
    for xi in space.iter().filter(|t| in_domain(t)) {
        let text = xi.to_string().replace("phi(", "#(").replace('p', "s").replace("D1", "D0").replace('#', "phi");
        let expected = parse_pi(&text).unwrap().normalize();
        assert_eq!(apply_f(xi).unwrap(), expected, "F({xi})");
    }
}

#[test]
fn round_trips_at_six_nodes() {
    assert!(check_round_trip::<Oo>(&enumerate::<Oo>(7).unwrap()).passed());
    assert!(check_round_trip::<Vb>(&enumerate::<Vb>(9).unwrap()).passed());
    assert!(check_round_trip::<Pi>(&enumerate::<Pi>(6).unwrap()).passed());
}

#[test]
fn corrupted_comparators_fail() {
    let space = enumerate::<Oo>(4).unwrap();
    // reverses every comparison between Ω and anything: breaks transitivity
    let corrupted = |a: &Diagram, b: &Diagram| {
        let c = diagram::compare(a, b);
        if *a == Diagram::OmegaAtom || *b == Diagram::OmegaAtom {
            c.reverse()
        } else {
            c
        }
    };
    let report = check_total_order_by::<Oo, _>(&space, corrupted, TripleMode::Exhaustive);
    assert!(!report.passed());
    assert!(report.witnesses.iter().any(|w| w.law == "transitivity" && w.terms.len() == 3));

    let singleton = space.filtered(|t| *t == Diagram::Zero);
    assert!(check_total_order::<Oo>(&singleton, TripleMode::Exhaustive).passed());
}
