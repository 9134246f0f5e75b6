//! Ordinal diagrams of the system O(Ω).
//!
//! A diagram is built from the atoms `0` and `Ω` with the constructors `+`,
//! `ω^·` and the collapse `d_Ω`. Both `Ω` and every `d_Ω α` are epsilon
//! numbers, so a normal diagram is a Cantor normal form whose base atoms are
//! those epsilon numbers.
//!
//! Values of [`Diagram`] may be built by hand in non-normal shape; every
//! operation other than [`Diagram::normalize`] expects normalized input.

mod text;

use std::cmp::Ordering;
use std::fmt;

pub use text::parse;

/// Hard ceiling on recursive calls made by one top-level [`compare`].
///
/// Every clause recurses on a pair whose combined node count is strictly
/// smaller, so hitting this limit means the measure argument is broken.
pub const COMPARE_CALL_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Diagram {
    Zero,
    /// The atom `Ω`.
    OmegaAtom,
    /// `p1 + ... + pn`, n ≥ 2. In normal form the parts are principal and
    /// non-increasing.
    Sum(Vec<Diagram>),
    /// `ω^e`. Never normal when `e` is an epsilon number.
    OmegaPow(Box<Diagram>),
    /// `d_Ω a`.
    Collapse(Box<Diagram>),
}

use Diagram::*;

impl Diagram {
    pub fn omega_pow(exponent: Diagram) -> Diagram {
        OmegaPow(Box::new(exponent)).normalize()
    }

    pub fn collapse(argument: Diagram) -> Diagram {
        Collapse(Box::new(argument)).normalize()
    }

    /// The finite ordinal `n`, as an `n`-fold sum of `ω^0`.
    pub fn finite(n: usize) -> Diagram {
        from_parts(vec![OmegaPow(Box::new(Zero)); n])
    }

    pub fn node_count(&self) -> usize {
        match self {
            Zero | OmegaAtom => 1,
            OmegaPow(e) | Collapse(e) => 1 + e.node_count(),
            Sum(parts) => parts.iter().map(Diagram::node_count).sum::<usize>() + parts.len() - 1,
        }
    }

    /// `Ω` and collapse terms: the fixed points of `ω^·` in this system.
    pub fn is_epsilon(&self) -> bool {
        matches!(self, OmegaAtom | Collapse(_))
    }

    pub fn is_principal(&self) -> bool {
        matches!(self, OmegaAtom | Collapse(_) | OmegaPow(_))
    }

    /// The Cantor-normal-form summands; empty for zero.
    pub fn parts(&self) -> &[Diagram] {
        match self {
            Zero => &[],
            Sum(parts) => parts,
            principal => std::slice::from_ref(principal),
        }
    }

    /// Rewrites an arbitrary finite tree into its unique normal form.
    ///
    /// `+` is ordinal addition, so a summand followed by a strictly larger
    /// one is absorbed (`1 + ω = ω`). `ω^e` for an epsilon number `e` is `e`.
    pub fn normalize(&self) -> Diagram {
        match self {
            Zero | OmegaAtom => self.clone(),
            OmegaPow(e) => {
                let e = e.normalize();
                if e.is_epsilon() {
                    e
                } else {
                    OmegaPow(Box::new(e))
                }
            }
            Collapse(a) => Collapse(Box::new(a.normalize())),
            Sum(parts) => parts
                .iter()
                .fold(Zero, |acc, p| ordinal_add(&acc, &p.normalize())),
        }
    }

    pub fn is_normal(&self) -> bool {
        self.normalize() == *self
    }
}

/// Ordinal addition of two normal forms.
pub(crate) fn ordinal_add(a: &Diagram, b: &Diagram) -> Diagram {
    let Some(lead) = b.parts().first() else {
        return a.clone();
    };
    let mut parts: Vec<Diagram> = a
        .parts()
        .iter()
        .take_while(|p| compare(p, lead) != Ordering::Less)
        .cloned()
        .collect();
    parts.extend(b.parts().iter().cloned());
    from_parts(parts)
}

pub(crate) fn from_parts(mut parts: Vec<Diagram>) -> Diagram {
    match parts.len() {
        0 => Zero,
        1 => parts.pop().unwrap(),
        _ => Sum(parts),
    }
}

/// The order of O(Ω) on normalized diagrams.
///
/// Sums and ω-powers compare as Cantor normal forms over the epsilon atoms.
/// `d_Ω a < Ω` always. Two collapses `d_Ω a`, `d_Ω b` with `a ≠ b` compare
/// `Less` when `d_Ω a ≤ K_Ω b`, `Greater` when `d_Ω b ≤ K_Ω a`, and otherwise
/// as `a` compares to `b`.
pub fn compare(a: &Diagram, b: &Diagram) -> Ordering {
    cmp_rec(a, b, &mut CallBudget::new(COMPARE_CALL_LIMIT))
}

struct CallBudget {
    used: usize,
    limit: usize,
}

impl CallBudget {
    fn new(limit: usize) -> Self {
        CallBudget { used: 0, limit }
    }
}

fn cmp_rec(a: &Diagram, b: &Diagram, calls: &mut CallBudget) -> Ordering {
    calls.used += 1;
    assert!(
        calls.used <= calls.limit,
        "diagram comparison exceeded {} recursive calls on {a} vs {b}",
        calls.limit
    );
    match (a, b) {
        (Zero, Zero) => Ordering::Equal,
        (Zero, _) => Ordering::Less,
        (_, Zero) => Ordering::Greater,
        (Sum(_), _) | (_, Sum(_)) => {
            let (xs, ys) = (a.parts(), b.parts());
            for (x, y) in xs.iter().zip(ys) {
                match cmp_principal(x, y, calls) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            xs.len().cmp(&ys.len())
        }
        _ => cmp_principal(a, b, calls),
    }
}

fn cmp_principal(a: &Diagram, b: &Diagram, calls: &mut CallBudget) -> Ordering {
    match (a, b) {
        (OmegaAtom, OmegaAtom) => Ordering::Equal,
        (Collapse(_), OmegaAtom) => Ordering::Less,
        (OmegaAtom, Collapse(_)) => Ordering::Greater,
        (Collapse(x), Collapse(y)) => cmp_collapse(a, x, b, y, calls),
        (OmegaPow(e), OmegaPow(f)) => cmp_rec(e, f, calls),
        // an epsilon number ε is its own power ω^ε
        (OmegaPow(e), _) => cmp_rec(e, b, calls),
        (_, OmegaPow(f)) => cmp_rec(a, f, calls),
        _ => cmp_rec(a, b, calls),
    }
}

fn cmp_collapse(
    da: &Diagram,
    a: &Diagram,
    db: &Diagram,
    b: &Diagram,
    calls: &mut CallBudget,
) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    if k_section(b)
        .iter()
        .any(|m| cmp_rec(da, m, calls) != Ordering::Greater)
    {
        return Ordering::Less;
    }
    if k_section(a)
        .iter()
        .any(|m| cmp_rec(db, m, calls) != Ordering::Greater)
    {
        return Ordering::Greater;
    }
    // Neither collapse lies below the other's K-section, so each K-section
    // is below the other collapse and the arguments decide.
    cmp_rec(a, b, calls)
}

/// `K_Ω a`: the outermost collapse subterms of a diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KSection {
    members: Vec<Diagram>,
}

impl KSection {
    pub fn members(&self) -> &[Diagram] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Diagram> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, d: &Diagram) -> bool {
        self.members.contains(d)
    }

    /// `K < bound`: every member is strictly below `bound`.
    pub fn all_below(&self, bound: &Diagram) -> bool {
        self.members
            .iter()
            .all(|m| compare(m, bound) == Ordering::Less)
    }

    fn insert(&mut self, d: &Diagram) {
        if !self.members.contains(d) {
            self.members.push(d.clone());
        }
    }
}

impl<'a> IntoIterator for &'a KSection {
    type Item = &'a Diagram;
    type IntoIter = std::slice::Iter<'a, Diagram>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Collapse nodes reachable from the root without passing through another
/// collapse node, in left-to-right order of first occurrence.
pub fn k_section(a: &Diagram) -> KSection {
    fn walk(d: &Diagram, out: &mut KSection) {
        match d {
            Zero | OmegaAtom => {}
            Collapse(_) => out.insert(d),
            OmegaPow(e) => walk(e, out),
            Sum(parts) => parts.iter().for_each(|p| walk(p, out)),
        }
    }
    let mut out = KSection::default();
    walk(a, &mut out);
    out
}

/// `k_Ω a = max(K_Ω a ∪ {0})`.
pub fn k_max(a: &Diagram) -> Diagram {
    k_section(a)
        .iter()
        .max_by(|x, y| compare(x, y))
        .cloned()
        .unwrap_or(Zero)
}

/// Hessenberg natural sum: merges the summands of both normal forms.
pub fn natural_sum(a: &Diagram, b: &Diagram) -> Diagram {
    let (xs, ys) = (a.parts(), b.parts());
    let mut merged = Vec::with_capacity(xs.len() + ys.len());
    let (mut i, mut j) = (0, 0);
    while i < xs.len() && j < ys.len() {
        if compare(&xs[i], &ys[j]) != Ordering::Less {
            merged.push(xs[i].clone());
            i += 1;
        } else {
            merged.push(ys[j].clone());
            j += 1;
        }
    }
    merged.extend_from_slice(&xs[i..]);
    merged.extend_from_slice(&ys[j..]);
    from_parts(merged)
}

/// `a ≪ b`: `K_Ω a < d_Ω b` and `a < b`.
pub fn collapsibly_less(a: &Diagram, b: &Diagram) -> bool {
    let db = Collapse(Box::new(b.clone()));
    k_section(a).all_below(&db) && compare(a, b) == Ordering::Less
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Zero => f.write_str("0"),
            OmegaAtom => f.write_str("W"),
            OmegaPow(e) => write!(f, "w^({e})"),
            Collapse(a) => write!(f, "d({a})"),
            Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}
