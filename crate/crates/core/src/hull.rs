//! Bounded saturation of the hulls `D(α)`.
//!
//! `D(α)` is the least set containing `Ω` and every ordinal `≤ k_Ω α`, closed
//! under `+` and `ω^·`, and containing `d_Ω δ` whenever it contains some
//! `δ < α`. The collapse `d_Ω α` is the least ordinal missing from it. The set
//! is infinite, so [`saturate`] builds only the members with at most `budget`
//! nodes. Every closure rule strictly grows its result, so the members of each
//! node count are complete once all smaller counts are.
//!
//! Membership is decided by generation, never by comparing against
//! `d_Ω α`, which makes the hull an independent check on how [`compare`]
//! orders collapse terms.
//!
//! [`compare`]: crate::diagram::compare

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::diagram::{self, k_max, k_section, Diagram};
use crate::harness::{self, Oo};
use crate::report::{PropertyReport, Witness};
use crate::{Error, Result};

/// How a hull member was obtained. Indices point into [`HullSet::members`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Derivation {
    Seed,
    Sum { head: usize, rest: usize },
    OmegaPow { exponent: usize },
    Collapse { argument: usize },
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derivation::Seed => f.write_str("seed"),
            Derivation::Sum { .. } => f.write_str("sum"),
            Derivation::OmegaPow { .. } => f.write_str("omega-pow"),
            Derivation::Collapse { .. } => f.write_str("collapse"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HullSet {
    pub alpha: Diagram,
    pub budget: usize,
    /// Members in generation order; seeds first.
    pub members: Vec<Diagram>,
    /// `trace[i]` derives `members[i]` from earlier members.
    pub trace: Vec<Derivation>,
    index: HashMap<Diagram, usize>,
}

impl HullSet {
    pub fn contains(&self, t: &Diagram) -> bool {
        self.index.contains_key(t)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn insert(&mut self, t: Diagram, how: Derivation) {
        if !self.index.contains_key(&t) {
            self.index.insert(t.clone(), self.members.len());
            self.members.push(t);
            self.trace.push(how);
        }
    }

    /// Re-derives every member from its trace, checking that the premises
    /// come earlier, the rule reproduces the member, the collapse guard
    /// holds and the budget is respected. Returns the first bad index.
    pub fn first_unjustified(&self) -> Option<usize> {
        let kmax = k_max(&self.alpha);
        (0..self.members.len()).find(|&i| {
            let m = &self.members[i];
            if m.node_count() > self.budget {
                return true;
            }
            match self.trace[i] {
                Derivation::Seed => {
                    *m != Diagram::OmegaAtom && diagram::compare(m, &kmax) == Ordering::Greater
                }
                Derivation::OmegaPow { exponent } => {
                    exponent >= i
                        || Diagram::omega_pow(self.members[exponent].clone()) != *m
                }
                Derivation::Collapse { argument } => {
                    argument >= i
                        || diagram::compare(&self.members[argument], &self.alpha) != Ordering::Less
                        || Diagram::Collapse(Box::new(self.members[argument].clone())) != *m
                }
                Derivation::Sum { head, rest } => {
                    head >= i
                        || rest >= i
                        || Diagram::Sum(vec![self.members[head].clone(), self.members[rest].clone()])
                            .normalize()
                            != *m
                }
            }
        })
    }
}

/// Saturates `D(alpha)` over all diagrams of at most `budget` nodes.
pub fn saturate(alpha: &Diagram, budget: usize) -> Result<HullSet> {
    check_budget(budget)?;
    let universe = harness::enumerate::<Oo>(budget)?;
    saturate_in(alpha, budget, &universe.terms)
}

fn check_budget(budget: usize) -> Result<()> {
    if budget < 2 {
        return Err(Error::InvalidArgument(format!(
            "hull budget must be at least 2, got {budget}"
        )));
    }
    Ok(())
}

/// [`saturate`] with the seed universe supplied by the caller: `universe`
/// must hold every normal diagram of at most `budget` nodes. Lets many
/// saturations share one enumeration.
pub fn saturate_in(alpha: &Diagram, budget: usize, universe: &[Diagram]) -> Result<HullSet> {
    check_budget(budget)?;
    let mut hull = HullSet {
        alpha: alpha.clone(),
        budget,
        members: Vec::new(),
        trace: Vec::new(),
        index: HashMap::new(),
    };

    // {Ω} ∪ (k_Ω α + 1)
    hull.insert(Diagram::OmegaAtom, Derivation::Seed);
    let kmax = k_max(alpha);
    for t in universe {
        if t.node_count() <= budget && diagram::compare(t, &kmax) != Ordering::Greater {
            hull.insert(t.clone(), Derivation::Seed);
        }
    }

    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); budget + 1];
    for (i, m) in hull.members.iter().enumerate() {
        by_size[m.node_count()].push(i);
    }

    for n in 2..=budget {
        let mut fresh: Vec<(Diagram, Derivation)> = Vec::new();
        for &i in &by_size[n - 1] {
            let m = &hull.members[i];
            if !m.is_epsilon() {
                fresh.push((
                    Diagram::OmegaPow(Box::new(m.clone())),
                    Derivation::OmegaPow { exponent: i },
                ));
            }
            if diagram::compare(m, alpha) == Ordering::Less {
                fresh.push((
                    Diagram::Collapse(Box::new(m.clone())),
                    Derivation::Collapse { argument: i },
                ));
            }
        }
        for size_head in 1..n - 1 {
            let size_rest = n - 1 - size_head;
            for &h in &by_size[size_head] {
                let head = &hull.members[h];
                if !head.is_principal() {
                    continue;
                }
                for &r in &by_size[size_rest] {
                    let rest = &hull.members[r];
                    let Some(lead) = rest.parts().first() else {
                        continue;
                    };
                    if diagram::compare(head, lead) != Ordering::Less {
                        let mut parts = vec![head.clone()];
                        parts.extend_from_slice(rest.parts());
                        fresh.push((Diagram::Sum(parts), Derivation::Sum { head: h, rest: r }));
                    }
                }
            }
        }
        for (t, how) in fresh {
            let before = hull.members.len();
            hull.insert(t, how);
            if hull.members.len() > before {
                by_size[n].push(before);
            }
        }
    }
    Ok(hull)
}

/// Checks the hull of `alpha` against the order on collapse terms:
///
/// * sound: `ξ ∈ D(α) ⇒ K_Ω ξ < d_Ω α`;
/// * complete: `K_Ω ξ < d_Ω α ⇒ ξ ∈ D(α)` whenever `ξ` fits the budget,
///   which is when its whole generation tree does;
/// * `D(α) ∩ Ω` lies below `d_Ω α`, and every `ξ < d_Ω α` within budget is a
///   member.
pub fn check_hull_consistency(alpha: &Diagram, budget: usize, space: &[Diagram]) -> Result<PropertyReport> {
    check_hull_consistency_by(alpha, budget, space, diagram::compare)
}

/// [`check_hull_consistency`] with the order under test supplied by the
/// caller. The hull itself is always built with the standard order.
pub fn check_hull_consistency_by<F>(
    alpha: &Diagram,
    budget: usize,
    space: &[Diagram],
    cmp: F,
) -> Result<PropertyReport>
where
    F: Fn(&Diagram, &Diagram) -> Ordering,
{
    validate_space(budget, space)?;
    let hull = saturate(alpha, budget)?;
    Ok(consistency_report(&hull, space, cmp))
}

fn validate_space(budget: usize, space: &[Diagram]) -> Result<()> {
    check_budget(budget)?;
    if let Some(t) = space.iter().find(|t| !t.is_normal()) {
        return Err(Error::InvalidArgument(format!("space term `{t}` is not normal")));
    }
    if let Some(t) = space.iter().find(|t| t.node_count() > budget) {
        return Err(Error::InvalidArgument(format!(
            "space term `{t}` has more than {budget} nodes"
        )));
    }
    Ok(())
}

/// The consistency laws for an already saturated hull.
pub fn consistency_report<F>(hull: &HullSet, space: &[Diagram], cmp: F) -> PropertyReport
where
    F: Fn(&Diagram, &Diagram) -> Ordering,
{
    let (sound, complete) = consistency_split(hull, space, cmp);
    let mut report = sound.merge(complete);
    report.suite = "hull".into();
    report
}

/// [`consistency_report`] split in two: the soundness laws (members have
/// small K-sections, `D(α) ∩ Ω` lies below `d α`) and the completeness
/// laws (everything that qualifies within the budget was generated).
pub fn consistency_split<F>(hull: &HullSet, space: &[Diagram], cmp: F) -> (PropertyReport, PropertyReport)
where
    F: Fn(&Diagram, &Diagram) -> Ordering,
{
    let mut sound = PropertyReport::new("hull/sound");
    let mut complete = PropertyReport::new("hull/complete");
    let alpha = &hull.alpha;
    let d_alpha = Diagram::Collapse(Box::new(alpha.clone()));
    let omega = Diagram::OmegaAtom;
    for xi in space {
        let member = hull.contains(xi);
        let k_below = k_section(xi)
            .iter()
            .all(|m| cmp(m, &d_alpha) == Ordering::Less);
        let fits = xi.node_count() <= hull.budget;
        let w = |law: &str, expected: &str, actual: String| Witness {
            law: law.to_string(),
            terms: vec![xi.to_string(), alpha.to_string()],
            expected: expected.to_string(),
            actual,
            size: xi.node_count() + alpha.node_count(),
        };
        sound.check(!member || k_below, || {
            w("sound: xi in D(a) => K xi < d a", "K xi < d a", "member with K xi not below d a".into())
        });
        complete.check(!(k_below && fits) || member, || {
            w("complete: K xi < d a => xi in D(a)", "member", "not generated".into())
        });
        let below_omega = cmp(xi, &omega) == Ordering::Less;
        let below_d = cmp(xi, &d_alpha) == Ordering::Less;
        sound.check(!(member && below_omega) || below_d, || {
            w("D(a) cap W below d a", "xi < d a", format!("{:?}", cmp(xi, &d_alpha)))
        });
        complete.check(!(below_d && fits) || member, || {
            w("xi < d a => xi in D(a)", "member", "not generated".into())
        });
    }
    (sound, complete)
}

/// For distinct `α, β` with `d α` and `d β` comparing `Equal`, requires
/// their hulls to differ. Any pair that neither the order nor the hulls
/// separate is a witness.
pub fn check_injectivity_cross(alphas: &[Diagram], budget: usize) -> Result<PropertyReport> {
    check_budget(budget)?;
    let universe = harness::enumerate::<Oo>(budget)?;
    let mut report = PropertyReport::new("hull-injectivity");
    let hulls: Vec<HullSet> = alphas
        .iter()
        .map(|a| saturate_in(a, budget, &universe.terms))
        .collect::<Result<_>>()?;
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            let (a, b) = (&alphas[i], &alphas[j]);
            if a == b {
                continue;
            }
            let da = Diagram::Collapse(Box::new(a.clone()));
            let db = Diagram::Collapse(Box::new(b.clone()));
            let separated_by_order = diagram::compare(&da, &db) != Ordering::Equal;
            let separated_by_hull = hulls[i].len() != hulls[j].len()
                || hulls[i].members.iter().any(|m| !hulls[j].contains(m));
            report.check(separated_by_order || separated_by_hull, || Witness {
                law: "d a = d b => a = b".into(),
                terms: vec![a.to_string(), b.to_string()],
                expected: "distinct collapses or distinct hulls".into(),
                actual: "neither".into(),
                size: a.node_count() + b.node_count(),
            });
        }
    }
    Ok(report)
}
