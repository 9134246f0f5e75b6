//! Normal forms for the binary Veblen function below Γ₀.
//!
//! `φ(0, b) = ω^b` and, for `a > 0`, `φ(a, ·)` enumerates the common fixed
//! points of every `φ(a', ·)` with `a' < a`. Every term below Γ₀ is a
//! non-increasing sum of `φ`-terms, and `φ(a, b)` is normal unless `b` is
//! itself a fixed point of `φ(a, ·)`, i.e. `b = φ(c, d)` with `a < c`.

use std::cmp::Ordering;
use std::fmt;

use crate::syntax::{Cursor, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VTerm {
    VZero,
    VSum(Vec<VTerm>),
    Phi(Box<VTerm>, Box<VTerm>),
}

use VTerm::*;

impl VTerm {
    pub fn phi(index: VTerm, arg: VTerm) -> VTerm {
        Phi(Box::new(index), Box::new(arg)).normalize()
    }

    /// `φ(0, 0) = 1`.
    pub fn one() -> VTerm {
        Phi(Box::new(VZero), Box::new(VZero))
    }

    /// `ε₀ = φ(1, 0)`.
    pub fn epsilon_zero() -> VTerm {
        Phi(Box::new(VTerm::one()), Box::new(VZero))
    }

    pub fn node_count(&self) -> usize {
        match self {
            VZero => 1,
            Phi(a, b) => 1 + a.node_count() + b.node_count(),
            VSum(parts) => parts.iter().map(VTerm::node_count).sum::<usize>() + parts.len() - 1,
        }
    }

    pub fn parts(&self) -> &[VTerm] {
        match self {
            VZero => &[],
            VSum(parts) => parts,
            principal => std::slice::from_ref(principal),
        }
    }

    pub fn normalize(&self) -> VTerm {
        match self {
            VZero => VZero,
            Phi(a, b) => {
                let a = a.normalize();
                let b = b.normalize();
                match &b {
                    Phi(c, _) if v_compare(&a, c) == Ordering::Less => b,
                    _ => Phi(Box::new(a), Box::new(b)),
                }
            }
            VSum(parts) => parts
                .iter()
                .fold(VZero, |acc, p| ordinal_add(&acc, &p.normalize())),
        }
    }

    pub fn is_normal(&self) -> bool {
        self.normalize() == *self
    }
}

fn ordinal_add(a: &VTerm, b: &VTerm) -> VTerm {
    let Some(lead) = b.parts().first() else {
        return a.clone();
    };
    let mut parts: Vec<VTerm> = a
        .parts()
        .iter()
        .take_while(|p| v_compare(p, lead) != Ordering::Less)
        .cloned()
        .collect();
    parts.extend(b.parts().iter().cloned());
    match parts.len() {
        0 => VZero,
        1 => parts.pop().unwrap(),
        _ => VSum(parts),
    }
}

/// Free-standing alias of [`VTerm::normalize`].
pub fn v_normalize(raw: &VTerm) -> VTerm {
    raw.normalize()
}

/// Order on normalized Veblen terms.
pub fn v_compare(a: &VTerm, b: &VTerm) -> Ordering {
    match (a, b) {
        (VZero, VZero) => Ordering::Equal,
        (VZero, _) => Ordering::Less,
        (_, VZero) => Ordering::Greater,
        (Phi(a1, b1), Phi(a2, b2)) => match v_compare(a1, a2) {
            Ordering::Equal => v_compare(b1, b2),
            // φ(a1, b1) < φ(a2, b2) iff b1 < φ(a2, b2), since φ(a2, b2) is a
            // fixed point of φ(a1, ·)
            Ordering::Less => v_compare(b1, b),
            Ordering::Greater => v_compare(a, b2),
        },
        _ => {
            let (xs, ys) = (a.parts(), b.parts());
            for (x, y) in xs.iter().zip(ys) {
                match v_compare(x, y) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            xs.len().cmp(&ys.len())
        }
    }
}

impl fmt::Display for VTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VZero => f.write_str("0"),
            Phi(a, b) => write!(f, "phi({a},{b})"),
            VSum(parts) => {
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

/// `vterm := '0' | 'phi(' vterm ',' vterm ')' | vterm ' + ' vterm`
pub fn parse(src: &str) -> Result<VTerm, ParseError> {
    fn sum(cur: &mut Cursor<'_>) -> Result<VTerm, ParseError> {
        let mut parts = vec![atom(cur)?];
        while cur.eat("+") {
            parts.push(atom(cur)?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            VSum(parts)
        })
    }

    fn atom(cur: &mut Cursor<'_>) -> Result<VTerm, ParseError> {
        if cur.eat("0") {
            Ok(VZero)
        } else if cur.eat("phi(") {
            let a = sum(cur)?;
            cur.expect(",", "`,` between the arguments of `phi(`")?;
            let b = sum(cur)?;
            cur.expect(")", "`)` closing `phi(`")?;
            Ok(Phi(Box::new(a), Box::new(b)))
        } else {
            Err(cur.error("vterm (`0`, `phi(`)"))
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

    fn p(s: &str) -> VTerm {
        parse(s).unwrap().normalize()
    }

    fn phi(a: VTerm, b: VTerm) -> VTerm {
        Phi(Box::new(a), Box::new(b))
    }

    #[test]
    fn omega_powers_stay_put() {
        let t = phi(VZero, VTerm::one());
        assert_eq!(t.normalize(), t);
        assert_eq!(VZero.normalize(), VZero);
    }

    #[test]
    fn fixed_point_collapse() {
        // ω^ε₀ = ε₀
        assert_eq!(phi(VZero, VTerm::epsilon_zero()).normalize(), VTerm::epsilon_zero());
        // ε_{ε₀}... φ(1, φ(2, 0)) = φ(2, 0)
        assert_eq!(p("phi(phi(0,0), phi(phi(0,0) + phi(0,0), 0))"), p("phi(phi(0,0) + phi(0,0), 0)"));
        // φ(1, ε₀) = ε_{ε₀} is not a fixed point of φ(1, ·)
        let eps_eps = phi(VTerm::one(), VTerm::epsilon_zero());
        assert_eq!(eps_eps.normalize(), eps_eps);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(v_compare(&VTerm::epsilon_zero(), &VTerm::one()), Ordering::Greater);
        assert_eq!(v_compare(&VZero, &VTerm::one()), Ordering::Less);
        let folded = phi(VZero, VTerm::epsilon_zero()).normalize();
        assert_eq!(v_compare(&VTerm::epsilon_zero(), &folded), Ordering::Equal);
    }

    #[test]
    fn epsilon_zero_dominates_omega_towers() {
        let mut tower = VZero;
        for _ in 0..6 {
            tower = phi(VZero, tower).normalize();
            assert_eq!(v_compare(&tower, &VTerm::epsilon_zero()), Ordering::Less);
        }
    }

    #[test]
    fn sums_absorb_and_compare_lexicographically() {
        // 1 + ε₀ = ε₀
        assert_eq!(p("phi(0,0) + phi(phi(0,0),0)"), VTerm::epsilon_zero());
        let two = p("phi(0,0) + phi(0,0)");
        assert_eq!(two.node_count(), 7);
        assert_eq!(v_compare(&two, &VTerm::one()), Ordering::Greater);
        assert_eq!(v_compare(&two, &p("phi(0,phi(0,0))")), Ordering::Less);
    }

    #[test]
    fn printer_round_trips() {
        let t = p("phi(phi(0,0),0) + phi(0, 0)");
        assert_eq!(t.to_string(), "phi(phi(0,0),0) + phi(0,0)");
        assert_eq!(parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn parse_errors() {
        let e = parse("phi(0 0)").unwrap_err();
        assert_eq!(e.offset, 6);
        assert!(e.expected.contains(','));
        assert!(parse("phi(0,0").is_err());
    }
}
