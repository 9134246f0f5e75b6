use std::cmp::Ordering;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::{TermSpace, TermSystem};

/// How the next, smaller term of a descent is picked from the space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Policy {
    /// The largest enumerated term below the current one.
    GreedyMax,
    /// A uniformly random enumerated term below the current one.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain<T> {
    pub terms: Vec<T>,
    /// Set when `max_steps` ran out before the chain bottomed out.
    pub truncated: bool,
}

/// Walks down from `seed` through terms of `space`, each strictly below the
/// last, until nothing enumerated lies below or `max_steps` successors have
/// been taken.
///
/// This only ever witnesses finite descent inside a finite space; it is
/// evidence about the comparator, not a proof of well-foundedness.
pub fn descent_search<S: TermSystem>(
    space: &TermSpace<S::Term>,
    seed: &S::Term,
    policy: Policy,
    max_steps: usize,
) -> Chain<S::Term> {
    let mut rng = match policy {
        Policy::Random(s) => Some(StdRng::seed_from_u64(s)),
        Policy::GreedyMax => None,
    };
    let mut terms = vec![seed.clone()];
    let mut current = seed;
    loop {
        let below = space
            .terms
            .partition_point(|t| S::compare(t, current) == Ordering::Less);
        if below == 0 {
            return Chain { terms, truncated: false };
        }
        if terms.len() > max_steps {
            return Chain { terms, truncated: true };
        }
        let next = match rng.as_mut() {
            Some(rng) => rng.gen_range(0..below),
            None => below - 1,
        };
        current = &space.terms[next];
        terms.push(current.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{self, Diagram};
    use crate::harness::{enumerate, Oo};

    #[test]
    fn greedy_from_two() {
        let space = enumerate::<Oo>(4).unwrap();
        let chain = descent_search::<Oo>(&space, &Diagram::finite(2), Policy::GreedyMax, 100);
        assert_eq!(chain.terms, [Diagram::finite(2), Diagram::finite(1), Diagram::Zero]);
        assert!(!chain.truncated);
    }

    #[test]
    fn zero_has_nothing_below() {
        let space = enumerate::<Oo>(3).unwrap();
        let chain = descent_search::<Oo>(&space, &Diagram::Zero, Policy::Random(1), 10);
        assert_eq!(chain.terms, [Diagram::Zero]);
        assert!(!chain.truncated);
    }

    #[test]
    fn random_descent_from_collapse_terminates() {
        let space = enumerate::<Oo>(5).unwrap();
        let seed = diagram::parse("d(0)").unwrap();
        let chain = descent_search::<Oo>(&space, &seed, Policy::Random(42), 10_000);
        assert!(!chain.truncated);
        assert_eq!(chain.terms.last(), Some(&Diagram::Zero));
        for w in chain.terms.windows(2) {
            assert_eq!(diagram::compare(&w[1], &w[0]), Ordering::Less);
        }
    }

    #[test]
    fn step_budget_truncates() {
        let space = enumerate::<Oo>(4).unwrap();
        let chain = descent_search::<Oo>(&space, &Diagram::OmegaAtom, Policy::GreedyMax, 2);
        assert_eq!(chain.terms.len(), 3);
        assert!(chain.truncated);
    }
}
