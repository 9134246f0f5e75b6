use std::cmp::Ordering;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{TermSpace, TermSystem};
use crate::diagram::{collapsibly_less, compare, k_section, natural_sum, Diagram};
use crate::report::{PropertyReport, Witness};
use crate::veblen::{v_compare, VTerm};

/// How transitivity triples are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

fn witness(law: &str, terms: &[&dyn std::fmt::Display], expected: &str, actual: String, size: usize) -> Witness {
    Witness {
        law: law.to_string(),
        terms: terms.iter().map(|t| t.to_string()).collect(),
        expected: expected.to_string(),
        actual,
        size,
    }
}

/// Irreflexivity, antisymmetry and totality on all pairs, transitivity on
/// the triples selected by `mode`.
pub fn check_total_order<S: TermSystem>(space: &TermSpace<S::Term>, mode: TripleMode) -> PropertyReport {
    check_total_order_by::<S, _>(space, S::compare, mode)
}

/// [`check_total_order`] against an arbitrary comparator, so that broken
/// comparators can be shown to fail.
pub fn check_total_order_by<S, F>(space: &TermSpace<S::Term>, cmp: F, mode: TripleMode) -> PropertyReport
where
    S: TermSystem,
    F: Fn(&S::Term, &S::Term) -> Ordering,
{
    let mut report = PropertyReport::new(format!("order/{}", space.system));
    let terms = &space.terms;
    let size = |t: &S::Term| S::node_count(t);

    for a in terms {
        let got = cmp(a, a);
        report.check(got == Ordering::Equal, || {
            witness("irreflexivity", &[a], "Equal", format!("{got:?}"), size(a))
        });
    }
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            let ab = cmp(a, b);
            let ba = cmp(b, a);
            report.check(ab == ba.reverse(), || {
                witness(
                    "antisymmetry",
                    &[a, b],
                    &format!("{:?}", ba.reverse()),
                    format!("{ab:?}"),
                    size(a) + size(b),
                )
            });
            report.check(ab != Ordering::Equal, || {
                witness("totality", &[a, b], "Less or Greater", "Equal".into(), size(a) + size(b))
            });
        }
    }

    let mut transitive = |a: &S::Term, b: &S::Term, c: &S::Term| {
        let (ab, bc, ac) = (cmp(a, b), cmp(b, c), cmp(a, c));
        let ok = match (ab, bc) {
            (Ordering::Less, Ordering::Less) => ac == Ordering::Less,
            (Ordering::Greater, Ordering::Greater) => ac == Ordering::Greater,
            _ => true,
        };
        report.check(ok, || {
            witness(
                "transitivity",
                &[a, b, c],
                &format!("{ab:?}"),
                format!("{ac:?} (a?b {ab:?}, b?c {bc:?})"),
                size(a) + size(b) + size(c),
            )
        });
    };
    for_triples(terms, mode, &mut transitive);
    report
}

fn d(a: &Diagram) -> Diagram {
    Diagram::Collapse(Box::new(a.clone()))
}

/// The four basic facts about `d_Ω` and `K_Ω`:
/// `(<1)` `d a < Ω`; `(<2)` `K a < d a`; `(<3)` `K a ≤ a`, over `space`;
/// `(<4)` `b < Ω & K b < d a ⇒ b < d a`, for `b` in `space`, `a` in `alphas`.
pub fn check_facts(space: &[Diagram], alphas: &[Diagram]) -> PropertyReport {
    let mut report = PropertyReport::new("facts");
    let omega = Diagram::OmegaAtom;
    for a in space {
        let da = d(a);
        let size = a.node_count();
        let got = compare(&da, &omega);
        report.check(got == Ordering::Less, || witness("(<1) d a < W", &[a], "Less", format!("{got:?}"), size));
        for m in &k_section(a) {
            let got = compare(m, &da);
            report.check(got == Ordering::Less, || {
                witness("(<2) K a < d a", &[a, m], "Less", format!("{got:?}"), size)
            });
            let got = compare(m, a);
            report.check(got != Ordering::Greater, || {
                witness("(<3) K a <= a", &[a, m], "Less or Equal", format!("{got:?}"), size)
            });
        }
    }
    for b in space {
        if compare(b, &omega) != Ordering::Less {
            continue;
        }
        let kb = k_section(b);
        for a in alphas {
            let da = d(a);
            if !kb.all_below(&da) {
                continue;
            }
            let got = compare(b, &da);
            report.check(got == Ordering::Less, || {
                witness(
                    "(<4) b < W & K b < d a => b < d a",
                    &[b, a],
                    "Less",
                    format!("{got:?}"),
                    b.node_count() + a.node_count(),
                )
            });
        }
    }
    report
}

/// `d a = d b` exactly when `a = b`, over all pairs of `space`.
pub fn check_injectivity(space: &[Diagram]) -> PropertyReport {
    let mut report = PropertyReport::new("injectivity");
    let collapsed: Vec<Diagram> = space.iter().map(d).collect();
    for (i, (a, da)) in space.iter().zip(&collapsed).enumerate() {
        for (b, db) in space[i + 1..].iter().zip(&collapsed[i + 1..]) {
            let outer = compare(da, db);
            let inner = compare(a, b);
            report.check(
                (outer == Ordering::Equal) == (inner == Ordering::Equal),
                || {
                    witness(
                        "d a = d b <=> a = b",
                        &[a, b],
                        &format!("d-comparison Equal iff argument comparison Equal ({inner:?})"),
                        format!("{outer:?}"),
                        a.node_count() + b.node_count(),
                    )
                },
            );
        }
    }
    report
}

/// The two definitions of `a ≪ b` agree on every ordered pair.
pub fn check_ll_equivalence(space: &[Diagram]) -> PropertyReport {
    let mut report = PropertyReport::new("ll-equivalence");
    let collapsed: Vec<Diagram> = space.iter().map(d).collect();
    for (a, da) in space.iter().zip(&collapsed) {
        for (b, db) in space.iter().zip(&collapsed) {
            let via_k = collapsibly_less(a, b);
            let via_d = compare(da, db) == Ordering::Less && compare(a, b) == Ordering::Less;
            report.check(via_k == via_d, || {
                witness(
                    "K a < d b & a < b <=> d a < d b & a < b",
                    &[a, b],
                    &via_d.to_string(),
                    via_k.to_string(),
                    a.node_count() + b.node_count(),
                )
            });
        }
    }
    report
}

/// Commutativity, identity, associativity and strict monotonicity of `#`.
pub fn check_natural_sum_laws(space: &[Diagram], mode: TripleMode) -> PropertyReport {
    let mut report = PropertyReport::new("natural-sum");
    let zero = Diagram::Zero;
    for a in space {
        let got = natural_sum(a, &zero);
        report.check(&got == a, || witness("a # 0 = a", &[a], &a.to_string(), got.to_string(), a.node_count()));
        for b in space {
            let ab = natural_sum(a, b);
            let ba = natural_sum(b, a);
            report.check(ab == ba, || {
                witness("a # b = b # a", &[a, b], &ab.to_string(), ba.to_string(), a.node_count() + b.node_count())
            });
            report.check(ab.is_normal(), || {
                witness("a # b is normal", &[a, b], "normal form", ab.to_string(), a.node_count() + b.node_count())
            });
        }
    }
    let mut triple = |a: &Diagram, b: &Diagram, c: &Diagram| {
        let size = a.node_count() + b.node_count() + c.node_count();
        let left = natural_sum(&natural_sum(a, b), c);
        let right = natural_sum(a, &natural_sum(b, c));
        report.check(left == right, || {
            witness("(a # b) # c = a # (b # c)", &[a, b, c], &left.to_string(), right.to_string(), size)
        });
        if compare(b, c) == Ordering::Less {
            let got = compare(&natural_sum(a, b), &natural_sum(a, c));
            report.check(got == Ordering::Less, || {
                witness("b < c => a # b < a # c", &[a, b, c], "Less", format!("{got:?}"), size)
            });
        }
    };
    for_triples(space, mode, &mut triple);
    report
}

fn for_triples<T>(terms: &[T], mode: TripleMode, f: &mut impl FnMut(&T, &T, &T)) {
    match mode {
        TripleMode::Exhaustive => {
            for a in terms {
                for b in terms {
                    for c in terms {
                        f(a, b, c);
                    }
                }
            }
        }
        TripleMode::Sampled { count, seed } => {
            if terms.is_empty() {
                return;
            }
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..count {
                let a = &terms[rng.gen_range(0..terms.len())];
                let b = &terms[rng.gen_range(0..terms.len())];
                let c = &terms[rng.gen_range(0..terms.len())];
                f(a, b, c);
            }
        }
    }
}

/// `normalize` is idempotent on raw trees assembled from normal pieces:
/// `a + b`, `ω^a`, `d a` for all `a, b` in `space`.
pub fn check_normalize_idempotent(space: &[Diagram]) -> PropertyReport {
    let mut report = PropertyReport::new("normalize-idempotent");
    let mut check = |raw: Diagram| {
        let once = raw.normalize();
        let twice = once.normalize();
        report.check(once == twice, || {
            witness("normalize(normalize t) = normalize t", &[&raw], &once.to_string(), twice.to_string(), raw.node_count())
        });
    };
    for a in space {
        check(Diagram::OmegaPow(Box::new(a.clone())));
        check(Diagram::Collapse(Box::new(a.clone())));
        for b in space {
            check(Diagram::Sum(vec![a.clone(), b.clone()]));
        }
    }
    report
}

fn phi(a: &VTerm, b: &VTerm) -> VTerm {
    VTerm::Phi(Box::new(a.clone()), Box::new(b.clone()))
}

/// Fixed-point collapse, strict monotonicity in the second argument and
/// inflationarity of `φ`, exhaustively over `space`.
pub fn check_veblen_laws(space: &[VTerm]) -> PropertyReport {
    let mut report = PropertyReport::new("veblen");
    for a in space {
        for t in space {
            let size = a.node_count() + t.node_count();
            if let VTerm::Phi(c, _) = t {
                if v_compare(a, c) == Ordering::Less {
                    let got = phi(a, t).normalize();
                    report.check(&got == t, || {
                        witness("a < c => phi(a, phi(c, d)) = phi(c, d)", &[a, t], &t.to_string(), got.to_string(), size)
                    });
                }
            }
            let value = phi(a, t).normalize();
            let got = v_compare(t, &value);
            report.check(got != Ordering::Greater, || {
                witness("b <= phi(a, b)", &[a, t], "Less or Equal", format!("{got:?}"), size)
            });
        }
    }
    for a in space {
        let images: Vec<VTerm> = space.iter().map(|b| phi(a, b).normalize()).collect();
        for (i, b) in space.iter().enumerate() {
            for (j, c) in space.iter().enumerate() {
                if v_compare(b, c) != Ordering::Less {
                    continue;
                }
                let got = v_compare(&images[i], &images[j]);
                report.check(got == Ordering::Less, || {
                    witness(
                        "b < c => phi(a, b) < phi(a, c)",
                        &[a, b, c],
                        "Less",
                        format!("{got:?}"),
                        a.node_count() + b.node_count() + c.node_count(),
                    )
                });
            }
        }
    }
    report
}

/// `parse(print(t)) = t` for every term of the space.
pub fn check_round_trip<S: TermSystem>(space: &TermSpace<S::Term>) -> PropertyReport {
    let mut report = PropertyReport::new(format!("round-trip/{}", space.system));
    for t in space.iter() {
        let printed = t.to_string();
        let back = S::parse(&printed);
        let ok = matches!(&back, Ok(u) if u == t);
        report.check(ok, || {
            witness("parse(print t) = t", &[t], &printed, format!("{back:?}"), S::node_count(t))
        });
    }
    report
}
