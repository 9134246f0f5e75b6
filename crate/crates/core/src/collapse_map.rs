//! A two-level notation system and the substitution `F = [π := σ]`.
//!
//! The system has the strongly critical atoms `σ < σ⁺ < π < π⁺`, two
//! collapses `d_{σ⁺}` (written `D0`, landing strictly between `σ` and `σ⁺`)
//! and `d_{π⁺}` (written `D1`, landing strictly between `π` and `π⁺`), binary
//! Veblen `φ` and `+`. Countable terms built from `0`, `φ` and `+` alone lie
//! below `σ`.
//!
//! `F` maps the band `[π, π⁺]` onto `[σ, σ⁺]`: it fixes everything below `π`,
//! sends `π ↦ σ`, `π⁺ ↦ σ⁺`, `d_{π⁺}β ↦ d_{σ⁺}F(β)`, and commutes with `+`
//! and `φ`. On its domain it is an order embedding.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::report::{PropertyReport, Witness};
use crate::syntax::{Cursor, ParseError};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PiAtom {
    Sigma,
    SigmaPlus,
    Pi,
    PiPlus,
}

impl PiAtom {
    pub const ALL: [PiAtom; 4] = [PiAtom::Sigma, PiAtom::SigmaPlus, PiAtom::Pi, PiAtom::PiPlus];

    fn symbol(self) -> &'static str {
        match self {
            PiAtom::Sigma => "s",
            PiAtom::SigmaPlus => "s+",
            PiAtom::Pi => "p",
            PiAtom::PiPlus => "p+",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PiTerm {
    PZero,
    Atom(PiAtom),
    PSum(Vec<PiTerm>),
    VPhi(Box<PiTerm>, Box<PiTerm>),
    /// `d_{π⁺}`, with values in `(π, π⁺)`.
    CollapseHi(Box<PiTerm>),
    /// `d_{σ⁺}`, with values in `(σ, σ⁺)`.
    CollapseLo(Box<PiTerm>),
}

use PiTerm::*;

impl PiTerm {
    pub fn atom(a: PiAtom) -> PiTerm {
        Atom(a)
    }

    pub fn node_count(&self) -> usize {
        match self {
            PZero | Atom(_) => 1,
            CollapseHi(x) | CollapseLo(x) => 1 + x.node_count(),
            VPhi(a, b) => 1 + a.node_count() + b.node_count(),
            PSum(parts) => parts.iter().map(PiTerm::node_count).sum::<usize>() + parts.len() - 1,
        }
    }

    /// Atoms and collapses: fixed points of every `φ(a, ·)` with `a` below
    /// them, and of `φ(·, 0)`.
    pub fn is_critical(&self) -> bool {
        matches!(self, Atom(_) | CollapseHi(_) | CollapseLo(_))
    }

    pub fn is_principal(&self) -> bool {
        !matches!(self, PZero | PSum(_))
    }

    pub fn parts(&self) -> &[PiTerm] {
        match self {
            PZero => &[],
            PSum(parts) => parts,
            principal => std::slice::from_ref(principal),
        }
    }

    pub fn normalize(&self) -> PiTerm {
        match self {
            PZero | Atom(_) => self.clone(),
            CollapseHi(x) => CollapseHi(Box::new(x.normalize())),
            CollapseLo(x) => CollapseLo(Box::new(x.normalize())),
            VPhi(a, b) => {
                let a = a.normalize();
                let b = b.normalize();
                if b.is_critical() && p_compare(&a, &b) == Ordering::Less {
                    return b;
                }
                if let VPhi(c, _) = &b {
                    if p_compare(&a, c) == Ordering::Less {
                        return b;
                    }
                }
                if a.is_critical() && b == PZero {
                    return a;
                }
                VPhi(Box::new(a), Box::new(b))
            }
            PSum(parts) => parts
                .iter()
                .fold(PZero, |acc, p| ordinal_add(&acc, &p.normalize())),
        }
    }

    pub fn is_normal(&self) -> bool {
        self.normalize() == *self
    }

    /// Whether the symbol `σ`, `σ⁺` or `D0` occurs anywhere.
    pub fn mentions_lower_band(&self) -> bool {
        self.find(&|t| matches!(t, Atom(PiAtom::Sigma | PiAtom::SigmaPlus) | CollapseLo(_)))
            .is_some()
    }

    /// Whether the symbol `π`, `π⁺` or `D1` occurs anywhere.
    pub fn mentions_upper_band(&self) -> bool {
        self.find(&|t| matches!(t, Atom(PiAtom::Pi | PiAtom::PiPlus) | CollapseHi(_)))
            .is_some()
    }

    /// First subterm in pre-order satisfying `pred`.
    fn find(&self, pred: &dyn Fn(&PiTerm) -> bool) -> Option<&PiTerm> {
        if pred(self) {
            return Some(self);
        }
        match self {
            PZero | Atom(_) => None,
            CollapseHi(x) | CollapseLo(x) => x.find(pred),
            VPhi(a, b) => a.find(pred).or_else(|| b.find(pred)),
            PSum(parts) => parts.iter().find_map(|p| p.find(pred)),
        }
    }
}

fn ordinal_add(a: &PiTerm, b: &PiTerm) -> PiTerm {
    let Some(lead) = b.parts().first() else {
        return a.clone();
    };
    let mut parts: Vec<PiTerm> = a
        .parts()
        .iter()
        .take_while(|p| p_compare(p, lead) != Ordering::Less)
        .cloned()
        .collect();
    parts.extend(b.parts().iter().cloned());
    match parts.len() {
        0 => PZero,
        1 => parts.pop().unwrap(),
        _ => PSum(parts),
    }
}

/// Position of a critical term on the line `σ < D0(·) < σ⁺ < π < D1(·) < π⁺`.
fn band(t: &PiTerm) -> u8 {
    match t {
        Atom(PiAtom::Sigma) => 0,
        CollapseLo(_) => 1,
        Atom(PiAtom::SigmaPlus) => 2,
        Atom(PiAtom::Pi) => 3,
        CollapseHi(_) => 4,
        Atom(PiAtom::PiPlus) => 5,
        _ => unreachable!("band of a non-critical term"),
    }
}

/// Order on normalized terms of the two-level system.
pub fn p_compare(a: &PiTerm, b: &PiTerm) -> Ordering {
    match (a, b) {
        (PZero, PZero) => Ordering::Equal,
        (PZero, _) => Ordering::Less,
        (_, PZero) => Ordering::Greater,
        (PSum(_), _) | (_, PSum(_)) => {
            let (xs, ys) = (a.parts(), b.parts());
            for (x, y) in xs.iter().zip(ys) {
                match cmp_principal(x, y) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            xs.len().cmp(&ys.len())
        }
        _ => cmp_principal(a, b),
    }
}

fn cmp_principal(a: &PiTerm, b: &PiTerm) -> Ordering {
    match (a, b) {
        (VPhi(a1, b1), VPhi(a2, b2)) => match p_compare(a1, a2) {
            Ordering::Equal => p_compare(b1, b2),
            Ordering::Less => p_compare(b1, b),
            Ordering::Greater => p_compare(a, b2),
        },
        // a critical X behaves as φ(X, 0)
        (VPhi(a1, b1), x) => match p_compare(a1, x) {
            Ordering::Less => p_compare(b1, x),
            _ => Ordering::Greater,
        },
        (x, VPhi(..)) => cmp_principal(b, x).reverse(),
        _ => cmp_critical(a, b),
    }
}

fn cmp_critical(a: &PiTerm, b: &PiTerm) -> Ordering {
    match band(a).cmp(&band(b)) {
        Ordering::Equal => {}
        other => return other,
    }
    match (a, b) {
        (CollapseHi(x), CollapseHi(y)) => cmp_collapse(a, x, b, y, k_section_hi),
        (CollapseLo(x), CollapseLo(y)) => cmp_collapse(a, x, b, y, k_section_lo),
        _ => Ordering::Equal,
    }
}

/// `dβ < dγ` iff `β < γ & K β < dγ`, or `dβ ≤ K γ`.
fn cmp_collapse(
    da: &PiTerm,
    a: &PiTerm,
    db: &PiTerm,
    b: &PiTerm,
    section: fn(&PiTerm) -> Vec<PiTerm>,
) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    if section(b)
        .iter()
        .any(|m| p_compare(da, m) != Ordering::Greater)
    {
        return Ordering::Less;
    }
    if section(a)
        .iter()
        .any(|m| p_compare(db, m) != Ordering::Greater)
    {
        return Ordering::Greater;
    }
    p_compare(a, b)
}

fn outermost(t: &PiTerm, hi: bool, out: &mut Vec<PiTerm>) {
    match t {
        PZero | Atom(_) => {}
        CollapseHi(_) if hi => {
            if !out.contains(t) {
                out.push(t.clone());
            }
        }
        CollapseLo(_) if !hi => {
            if !out.contains(t) {
                out.push(t.clone());
            }
        }
        // a collapse of the other level is an opaque atom from this one
        CollapseHi(_) | CollapseLo(_) => {}
        VPhi(a, b) => {
            outermost(a, hi, out);
            outermost(b, hi, out);
        }
        PSum(parts) => parts.iter().for_each(|p| outermost(p, hi, out)),
    }
}

/// `K_{π⁺}`: outermost `D1` subterms.
pub fn k_section_hi(t: &PiTerm) -> Vec<PiTerm> {
    let mut out = Vec::new();
    outermost(t, true, &mut out);
    out
}

/// `K_{σ⁺}`: outermost `D0` subterms.
pub fn k_section_lo(t: &PiTerm) -> Vec<PiTerm> {
    let mut out = Vec::new();
    outermost(t, false, &mut out);
    out
}

/// Why a term falls outside `dom(F)`, with the offending subterm.
fn domain_violation(xi: &PiTerm) -> Option<(PiTerm, &'static str)> {
    if let Some(t) =
        xi.find(&|t| matches!(t, Atom(PiAtom::Sigma | PiAtom::SigmaPlus) | CollapseLo(_)))
    {
        return Some((t.clone(), "mentions a symbol of the target band"));
    }
    fn below_pi_below_sigma(t: &PiTerm) -> Option<PiTerm> {
        if p_compare(t, &Atom(PiAtom::Pi)) == Ordering::Less {
            return (p_compare(t, &Atom(PiAtom::Sigma)) != Ordering::Less).then(|| t.clone());
        }
        match t {
            PZero | Atom(_) => None,
            CollapseHi(x) | CollapseLo(x) => below_pi_below_sigma(x),
            VPhi(a, b) => below_pi_below_sigma(a).or_else(|| below_pi_below_sigma(b)),
            PSum(parts) => parts.iter().find_map(below_pi_below_sigma),
        }
    }
    below_pi_below_sigma(xi).map(|t| (t, "maximal subterm below π is not below σ"))
}

/// `ξ ∈ dom(F)`: no `σ`-band symbol, and every maximal subterm below `π` is
/// below `σ`.
pub fn in_domain(xi: &PiTerm) -> bool {
    domain_violation(xi).is_none()
}

/// The substitution `F`. Fails on terms outside `dom(F)`.
pub fn apply_f(xi: &PiTerm) -> Result<PiTerm> {
    if let Some((subterm, reason)) = domain_violation(xi) {
        return Err(Error::Domain {
            subterm: subterm.to_string(),
            reason: reason.to_string(),
        });
    }
    Ok(substitute(xi).normalize())
}

fn substitute(t: &PiTerm) -> PiTerm {
    if p_compare(t, &Atom(PiAtom::Pi)) == Ordering::Less {
        return t.clone();
    }
    match t {
        Atom(PiAtom::Pi) => Atom(PiAtom::Sigma),
        Atom(PiAtom::PiPlus) => Atom(PiAtom::SigmaPlus),
        CollapseHi(b) => CollapseLo(Box::new(substitute(b))),
        VPhi(a, b) => VPhi(Box::new(substitute(a)), Box::new(substitute(b))),
        PSum(parts) => PSum(parts.iter().map(substitute).collect()),
        PZero | Atom(_) | CollapseLo(_) => unreachable!("outside dom(F): {t}"),
    }
}

/// Exhaustively checks, over the `dom(F)` part of `space`, that `F`
/// preserves the order on all pairs, fixes everything below `π`, maps
/// K-sections onto K-sections, stays below `σ⁺` on arguments below `π⁺`,
/// and never emits an upper-band symbol.
pub fn check_embedding(space: &[PiTerm]) -> PropertyReport {
    let mut report = PropertyReport::new("embedding");
    let pi = Atom(PiAtom::Pi);
    let sigma = Atom(PiAtom::Sigma);
    let dom: Vec<(&PiTerm, PiTerm)> = space
        .iter()
        .filter(|t| in_domain(t))
        .map(|t| (t, apply_f(t).expect("filtered to dom(F)")))
        .collect();

    for (xi, fxi) in &dom {
        let size = xi.node_count();
        let below_pi = p_compare(xi, &pi) == Ordering::Less;
        report.check(!below_pi || fxi == *xi, || Witness {
            law: "F2 identity below π".into(),
            terms: vec![xi.to_string()],
            expected: xi.to_string(),
            actual: fxi.to_string(),
            size,
        });
        report.check(!below_pi || p_compare(xi, &sigma) == Ordering::Less, || Witness {
            law: "gap: below π implies below σ".into(),
            terms: vec![xi.to_string()],
            expected: "<".into(),
            actual: format!("{:?}", p_compare(xi, &sigma)),
            size,
        });
        report.check(!fxi.mentions_upper_band(), || Witness {
            law: "image avoids π, π⁺, D1".into(),
            terms: vec![xi.to_string()],
            expected: "no upper-band symbol".into(),
            actual: fxi.to_string(),
            size,
        });
        let below_pi_plus = p_compare(xi, &Atom(PiAtom::PiPlus)) == Ordering::Less;
        report.check(
            !below_pi_plus || p_compare(fxi, &Atom(PiAtom::SigmaPlus)) == Ordering::Less,
            || Witness {
                law: "F3 (restricted): ξ < π⁺ implies F(ξ) < σ⁺".into(),
                terms: vec![xi.to_string()],
                expected: "<".into(),
                actual: fxi.to_string(),
                size,
            },
        );
        let mut mapped: Vec<PiTerm> = k_section_hi(xi)
            .iter()
            .map(|m| apply_f(m).expect("subterm of a dom(F) term"))
            .collect();
        let mut image_section = k_section_lo(fxi);
        let key = |t: &PiTerm| t.to_string();
        mapped.sort_by_key(key);
        mapped.dedup();
        image_section.sort_by_key(key);
        report.check(mapped == image_section, || Witness {
            law: "F9 F(K_hi ξ) = K_lo F(ξ)".into(),
            terms: vec![xi.to_string()],
            expected: format!("{mapped:?}"),
            actual: format!("{image_section:?}"),
            size,
        });
    }

    for (xi, fxi) in &dom {
        for (zeta, fzeta) in &dom {
            let before = p_compare(xi, zeta);
            let after = p_compare(fxi, fzeta);
            report.check(before == after, || Witness {
                law: "F1 order preservation".into(),
                terms: vec![xi.to_string(), zeta.to_string()],
                expected: format!("{before:?}"),
                actual: format!("{after:?}"),
                size: xi.node_count() + zeta.node_count(),
            });
        }
    }
    report
}

impl fmt::Display for PiAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl fmt::Display for PiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PZero => f.write_str("0"),
            Atom(a) => write!(f, "{a}"),
            VPhi(a, b) => write!(f, "phi({a},{b})"),
            CollapseHi(x) => write!(f, "D1({x})"),
            CollapseLo(x) => write!(f, "D0({x})"),
            PSum(parts) => {
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

/// `piterm := '0' | 's' | 's+' | 'p' | 'p+' | 'phi(' piterm ',' piterm ')'
///          | 'D1(' piterm ')' | 'D0(' piterm ')' | piterm ' + ' piterm`
///
/// A `+` written directly after `s` or `p` belongs to the atom (`s+`, `p+`)
/// unless another term follows it, so `p+0` is `π + 0` while `p+ + 0` is
/// `π⁺ + 0`.
pub fn parse(src: &str) -> Result<PiTerm, ParseError> {
    fn sum(cur: &mut Cursor<'_>) -> Result<PiTerm, ParseError> {
        let mut parts = vec![atom(cur)?];
        while cur.eat("+") {
            parts.push(atom(cur)?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            PSum(parts)
        })
    }

    fn starts_term(c: Option<char>) -> bool {
        matches!(c, Some('0' | 's' | 'p' | 'D'))
    }

    fn plus_suffix(cur: &mut Cursor<'_>) -> bool {
        let at = cur.pos();
        if !cur.eat_adjacent("+") {
            return false;
        }
        if starts_term(cur.peek()) {
            cur.reset(at);
            false
        } else {
            true
        }
    }

    fn atom(cur: &mut Cursor<'_>) -> Result<PiTerm, ParseError> {
        if cur.eat("0") {
            Ok(PZero)
        } else if cur.eat("phi(") {
            let a = sum(cur)?;
            cur.expect(",", "`,` between the arguments of `phi(`")?;
            let b = sum(cur)?;
            cur.expect(")", "`)` closing `phi(`")?;
            Ok(VPhi(Box::new(a), Box::new(b)))
        } else if cur.eat("D1(") {
            let x = sum(cur)?;
            cur.expect(")", "`)` closing `D1(`")?;
            Ok(CollapseHi(Box::new(x)))
        } else if cur.eat("D0(") {
            let x = sum(cur)?;
            cur.expect(")", "`)` closing `D0(`")?;
            Ok(CollapseLo(Box::new(x)))
        } else if cur.eat("s") {
            Ok(Atom(if plus_suffix(cur) {
                PiAtom::SigmaPlus
            } else {
                PiAtom::Sigma
            }))
        } else if cur.eat("p") {
            Ok(Atom(if plus_suffix(cur) {
                PiAtom::PiPlus
            } else {
                PiAtom::Pi
            }))
        } else {
            Err(cur.error("piterm (`0`, `s`, `s+`, `p`, `p+`, `phi(`, `D1(`, `D0(`)"))
        }
    }

    let mut cur = Cursor::new(src);
    let t = sum(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PiTerm {
        parse(s).unwrap().normalize()
    }

    fn one() -> PiTerm {
        VPhi(Box::new(PZero), Box::new(PZero))
    }

    #[test]
    fn atom_and_band_order() {
        assert_eq!(p_compare(&p("s"), &p("p")), Ordering::Less);
        let line = ["s", "D0(p+)", "s+", "p", "D1(0)", "p+"];
        for w in line.windows(2) {
            assert_eq!(p_compare(&p(w[0]), &p(w[1])), Ordering::Less, "{} < {}", w[0], w[1]);
        }
        assert_eq!(p_compare(&p("D0(phi(p+,p+))"), &p("p")), Ordering::Less);
    }

    #[test]
    fn hi_collapse_clauses() {
        assert_eq!(p_compare(&p("D1(0)"), &p("D1(p+)")), Ordering::Less);
        // D1(0) ≤ K_hi(D1(0) + 1), so D1(0) < D1(D1(0) + 1)
        assert_eq!(p_compare(&p("D1(0)"), &p("D1(D1(0) + phi(0,0))")), Ordering::Less);
        // p+ > D1(p+) but D1(p+) ∈ K_hi(D1(p+)) decides the other way
        assert_eq!(p_compare(&p("D1(D1(p+))"), &p("D1(p+)")), Ordering::Greater);
    }

    #[test]
    fn critical_atoms_absorb_phi() {
        assert_eq!(p("phi(0,p)"), p("p"));
        assert_eq!(p("phi(phi(0,0),D1(0))"), p("D1(0)"));
        assert_eq!(p("phi(p,0)"), p("p"));
        // φ(π, 1) is the next strongly critical... above π, below D1(0)
        let t = p("phi(p,phi(0,0))");
        assert_eq!(t, VPhi(Box::new(Atom(PiAtom::Pi)), Box::new(one())));
        assert_eq!(p_compare(&t, &p("p")), Ordering::Greater);
        assert_eq!(p_compare(&t, &p("D1(0)")), Ordering::Less);
        // φ(π⁺, 0) = π⁺ but φ(π⁺, 1) > π⁺
        assert_eq!(p_compare(&p("phi(p+,phi(0,0))"), &p("p+")), Ordering::Greater);
    }

    #[test]
    fn k_sections() {
        assert!(k_section_hi(&p("p+")).is_empty());
        assert_eq!(k_section_hi(&p("phi(0,D1(0))")), vec![p("D1(0)")]);
        assert!(k_section_lo(&p("D1(0)")).is_empty());
        // the other level's collapse is opaque
        assert!(k_section_hi(&p("D0(D1(0))")).is_empty());
    }

    #[test]
    fn domain_membership() {
        assert!(in_domain(&p("p")));
        assert!(!in_domain(&p("s")));
        assert!(in_domain(&one()));
        assert!(!in_domain(&p("D1(D0(0))")));
    }

    #[test]
    fn f_examples() {
        assert_eq!(apply_f(&PZero).unwrap(), PZero);
        assert_eq!(apply_f(&p("p")).unwrap(), p("s"));
        assert_eq!(apply_f(&p("p+")).unwrap(), p("s+"));
        assert_eq!(
            apply_f(&p("D1(p+ + phi(0,0))")).unwrap(),
            p("D0(s+ + phi(0,0))")
        );
        assert_eq!(apply_f(&p("phi(0,phi(0,0))")).unwrap(), p("phi(0,phi(0,0))"));
    }

    #[test]
    fn f_rejects_target_band() {
        match apply_f(&p("D1(s + 0)")) {
            Err(Error::Domain { subterm, .. }) => assert_eq!(subterm, "s"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pair_across_bands_keeps_order() {
        let (a, b) = (p("p"), p("D1(0)"));
        assert_eq!(p_compare(&a, &b), Ordering::Less);
        assert_eq!(
            p_compare(&apply_f(&a).unwrap(), &apply_f(&b).unwrap()),
            Ordering::Less
        );
        assert_eq!(p_compare(&a, &a), Ordering::Equal);
    }

    #[test]
    fn parser_disambiguates_plus() {
        assert_eq!(parse("p+").unwrap(), Atom(PiAtom::PiPlus));
        assert_eq!(
            parse("p+0").unwrap(),
            PSum(vec![Atom(PiAtom::Pi), PZero])
        );
        assert_eq!(
            parse("p+ + s").unwrap(),
            PSum(vec![Atom(PiAtom::PiPlus), Atom(PiAtom::Sigma)])
        );
        assert_eq!(parse("D0(s+)").unwrap(), CollapseLo(Box::new(Atom(PiAtom::SigmaPlus))));
        assert_eq!(parse("phi(p+,s)").unwrap().to_string(), "phi(p+,s)");
        assert!(parse("q").is_err());
    }
}
