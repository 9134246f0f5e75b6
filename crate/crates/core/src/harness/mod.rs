//! Exhaustive term spaces and the order-law suites that run over them.
//!
//! A [`TermSystem`] knows how to compare, measure, print and parse its terms
//! and how to grow every normal form of a given node count from the normal
//! forms of smaller counts. [`enumerate`] drives that growth up to a bound and
//! sorts the result with the system's own comparator.

mod descent;
mod suites;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::collapse_map::{p_compare, PiAtom, PiTerm};
use crate::diagram::{self, Diagram};
use crate::syntax::ParseError;
use crate::veblen::{self, VTerm};
use crate::{Error, Result};

pub use descent::{descent_search, Chain, Policy};
pub use suites::{
    check_facts, check_injectivity, check_ll_equivalence, check_natural_sum_laws,
    check_normalize_idempotent, check_round_trip, check_total_order, check_total_order_by,
    check_veblen_laws, TripleMode,
};

/// Largest `max_nodes` accepted by [`enumerate`].
pub const DEFAULT_NODE_CAP: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    /// Ordinal diagrams O(Ω).
    Oo,
    /// Veblen terms below Γ₀.
    Vb,
    /// The two-level π/σ system.
    Pi,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Oo => "oo",
            SystemKind::Vb => "vb",
            SystemKind::Pi => "pi",
        })
    }
}

pub trait TermSystem {
    type Term: Clone + Eq + Hash + fmt::Display + fmt::Debug + Send + Sync;

    const KIND: SystemKind;

    fn compare(a: &Self::Term, b: &Self::Term) -> Ordering;
    fn node_count(t: &Self::Term) -> usize;
    fn normalize(t: &Self::Term) -> Self::Term;
    fn parse(src: &str) -> Result<Self::Term, ParseError>;

    /// Every normal form with exactly `n` nodes, given `by_size[k]` = every
    /// normal form with exactly `k` nodes for `k < n`. Duplicates are allowed.
    fn grow(by_size: &[Vec<Self::Term>], n: usize) -> Vec<Self::Term>;
}

pub struct Oo;
pub struct Vb;
pub struct Pi;

/// Pairs `(i, j)` with `i + j = total`, both at least one.
fn splits(total: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..total).map(move |i| (i, total - i))
}

impl TermSystem for Oo {
    type Term = Diagram;
    const KIND: SystemKind = SystemKind::Oo;

    fn compare(a: &Diagram, b: &Diagram) -> Ordering {
        diagram::compare(a, b)
    }

    fn node_count(t: &Diagram) -> usize {
        t.node_count()
    }

    fn normalize(t: &Diagram) -> Diagram {
        t.normalize()
    }

    fn parse(src: &str) -> Result<Diagram, ParseError> {
        diagram::parse(src)
    }

    fn grow(by_size: &[Vec<Diagram>], n: usize) -> Vec<Diagram> {
        if n == 1 {
            return vec![Diagram::Zero, Diagram::OmegaAtom];
        }
        let mut out = Vec::new();
        for e in &by_size[n - 1] {
            if !e.is_epsilon() {
                out.push(Diagram::OmegaPow(Box::new(e.clone())));
            }
            out.push(Diagram::Collapse(Box::new(e.clone())));
        }
        // p + rest, with p principal and p ≥ the leading part of rest
        for (i, j) in splits(n - 1) {
            for head in by_size[i].iter().filter(|t| t.is_principal()) {
                for rest in &by_size[j] {
                    let Some(lead) = rest.parts().first() else {
                        continue;
                    };
                    if diagram::compare(head, lead) != Ordering::Less {
                        let mut parts = vec![head.clone()];
                        parts.extend_from_slice(rest.parts());
                        out.push(Diagram::Sum(parts));
                    }
                }
            }
        }
        out
    }
}

impl TermSystem for Vb {
    type Term = VTerm;
    const KIND: SystemKind = SystemKind::Vb;

    fn compare(a: &VTerm, b: &VTerm) -> Ordering {
        veblen::v_compare(a, b)
    }

    fn node_count(t: &VTerm) -> usize {
        t.node_count()
    }

    fn normalize(t: &VTerm) -> VTerm {
        t.normalize()
    }

    fn parse(src: &str) -> Result<VTerm, ParseError> {
        veblen::parse(src)
    }

    fn grow(by_size: &[Vec<VTerm>], n: usize) -> Vec<VTerm> {
        if n == 1 {
            return vec![VTerm::VZero];
        }
        let mut out = Vec::new();
        for (i, j) in splits(n - 1) {
            for a in &by_size[i] {
                for b in &by_size[j] {
                    let t = VTerm::Phi(Box::new(a.clone()), Box::new(b.clone()));
                    if t.is_normal() {
                        out.push(t);
                    }
                }
            }
            for head in by_size[i].iter().filter(|t| matches!(t, VTerm::Phi(..))) {
                for rest in &by_size[j] {
                    let Some(lead) = rest.parts().first() else {
                        continue;
                    };
                    if veblen::v_compare(head, lead) != Ordering::Less {
                        let mut parts = vec![head.clone()];
                        parts.extend_from_slice(rest.parts());
                        out.push(VTerm::VSum(parts));
                    }
                }
            }
        }
        out
    }
}

impl TermSystem for Pi {
    type Term = PiTerm;
    const KIND: SystemKind = SystemKind::Pi;

    fn compare(a: &PiTerm, b: &PiTerm) -> Ordering {
        p_compare(a, b)
    }

    fn node_count(t: &PiTerm) -> usize {
        t.node_count()
    }

    fn normalize(t: &PiTerm) -> PiTerm {
        t.normalize()
    }

    fn parse(src: &str) -> Result<PiTerm, ParseError> {
        crate::collapse_map::parse(src)
    }

    fn grow(by_size: &[Vec<PiTerm>], n: usize) -> Vec<PiTerm> {
        if n == 1 {
            let mut atoms = vec![PiTerm::PZero];
            atoms.extend(PiAtom::ALL.iter().map(|&a| PiTerm::Atom(a)));
            return atoms;
        }
        let mut out = Vec::new();
        for x in &by_size[n - 1] {
            out.push(PiTerm::CollapseHi(Box::new(x.clone())));
            out.push(PiTerm::CollapseLo(Box::new(x.clone())));
        }
        for (i, j) in splits(n - 1) {
            for a in &by_size[i] {
                for b in &by_size[j] {
                    let t = PiTerm::VPhi(Box::new(a.clone()), Box::new(b.clone()));
                    if t.is_normal() {
                        out.push(t);
                    }
                }
            }
            for head in by_size[i].iter().filter(|t| t.is_principal()) {
                for rest in &by_size[j] {
                    let Some(lead) = rest.parts().first() else {
                        continue;
                    };
                    if p_compare(head, lead) != Ordering::Less {
                        let mut parts = vec![head.clone()];
                        parts.extend_from_slice(rest.parts());
                        out.push(PiTerm::PSum(parts));
                    }
                }
            }
        }
        out
    }
}

/// All normal forms of one system up to a node bound, sorted ascending.
#[derive(Clone, Debug)]
pub struct TermSpace<T> {
    pub system: SystemKind,
    pub max_nodes: usize,
    pub terms: Vec<T>,
}

impl<T> TermSpace<T> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.terms.iter()
    }
}

impl<T: Clone> TermSpace<T> {
    /// The sub-space of terms satisfying `keep`, order preserved.
    pub fn filtered(&self, keep: impl Fn(&T) -> bool) -> TermSpace<T> {
        TermSpace {
            system: self.system,
            max_nodes: self.max_nodes,
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }
}

/// Every normal form of `S` with at most `max_nodes` nodes, each once,
/// sorted by `S::compare`.
pub fn enumerate<S: TermSystem>(max_nodes: usize) -> Result<TermSpace<S::Term>> {
    enumerate_capped::<S>(max_nodes, DEFAULT_NODE_CAP)
}

pub fn enumerate_capped<S: TermSystem>(
    max_nodes: usize,
    cap: usize,
) -> Result<TermSpace<S::Term>> {
    if max_nodes == 0 {
        return Err(Error::InvalidArgument("max_nodes must be at least 1".into()));
    }
    if max_nodes > cap {
        return Err(Error::ResourceLimit(format!(
            "max_nodes {max_nodes} exceeds the enumeration cap of {cap}"
        )));
    }
    let mut by_size: Vec<Vec<S::Term>> = vec![Vec::new()];
    let mut seen = HashSet::new();
    for n in 1..=max_nodes {
        let layer: Vec<S::Term> = S::grow(&by_size, n)
            .into_iter()
            .filter(|t| seen.insert(t.clone()))
            .collect();
        by_size.push(layer);
    }
    let mut terms: Vec<S::Term> = by_size.into_iter().flatten().collect();
    terms.sort_by(S::compare);
    Ok(TermSpace {
        system: S::KIND,
        max_nodes,
        terms,
    })
}

/// Re-verifies that a space is strictly ascending, by one pass over
/// adjacent pairs. Returns the first offending index.
pub fn first_unsorted<S: TermSystem>(space: &TermSpace<S::Term>) -> Option<usize> {
    space
        .terms
        .windows(2)
        .position(|w| S::compare(&w[0], &w[1]) != Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn printed<T: fmt::Display>(space: &TermSpace<T>) -> Vec<String> {
        space.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn oo_atoms() {
        let s = enumerate::<Oo>(1).unwrap();
        assert_eq!(printed(&s), ["0", "W"]);
    }

    #[test]
    fn oo_two_nodes() {
        let s = enumerate::<Oo>(2).unwrap();
        assert_eq!(printed(&s), ["0", "w^(0)", "d(0)", "d(W)", "W"]);
    }

    #[test]
    fn vb_atoms() {
        assert_eq!(printed(&enumerate::<Vb>(1).unwrap()), ["0"]);
        assert_eq!(printed(&enumerate::<Vb>(3).unwrap()), ["0", "phi(0,0)"]);
    }

    #[test]
    fn pi_atoms_in_band_order() {
        let s = enumerate::<Pi>(1).unwrap();
        assert_eq!(printed(&s), ["0", "s", "s+", "p", "p+"]);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(enumerate::<Oo>(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(enumerate::<Oo>(10), Err(Error::ResourceLimit(_))));
        assert!(matches!(enumerate_capped::<Vb>(4, 3), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn spaces_are_sorted_normal_and_bounded() {
        fn check<S: TermSystem>(n: usize) {
            let s = enumerate::<S>(n).unwrap();
            assert_eq!(first_unsorted::<S>(&s), None);
            for t in s.iter() {
                assert_eq!(&S::normalize(t), t);
                assert!(S::node_count(t) <= n);
            }
        }
        check::<Oo>(5);
        check::<Vb>(7);
        check::<Pi>(4);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate::<Oo>(5).unwrap();
        let b = enumerate::<Oo>(5).unwrap();
        assert_eq!(a.terms, b.terms);
    }

    /// Every normal raw tree of at most `n` nodes shows up in the space.
    #[test]
    fn oo_space_is_complete_against_raw_trees() {
        fn raw(n: usize) -> Vec<Diagram> {
            // all trees with exactly n nodes, sums binary
            if n == 1 {
                return vec![Diagram::Zero, Diagram::OmegaAtom];
            }
            let mut out = Vec::new();
            for t in raw(n - 1) {
                out.push(Diagram::OmegaPow(Box::new(t.clone())));
                out.push(Diagram::Collapse(Box::new(t)));
            }
            for i in 1..n - 1 {
                for a in raw(i) {
                    for b in raw(n - 1 - i) {
                        out.push(Diagram::Sum(vec![a.clone(), b]));
                    }
                }
            }
            out
        }
        let n = 5;
        let space: HashSet<Diagram> = enumerate::<Oo>(n).unwrap().terms.into_iter().collect();
        let mut normal_forms = HashSet::new();
        for k in 1..=n {
            for t in raw(k) {
                let nf = t.normalize();
                if nf.node_count() <= n {
                    normal_forms.insert(nf);
                }
            }
        }
        assert_eq!(space, normal_forms);
    }
}
