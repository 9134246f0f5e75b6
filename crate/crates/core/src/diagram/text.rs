//! `term := '0' | 'W' | 'w^(' term ')' | 'd(' term ')' | term ' + ' term`

use super::Diagram;
use crate::syntax::{Cursor, ParseError};

/// Parses a diagram without normalizing it. A chain `a + b + c` becomes a
/// single flat `Sum` node, so printing and re-parsing a normal form is the
/// identity.
pub fn parse(src: &str) -> Result<Diagram, ParseError> {
    let mut cur = Cursor::new(src);
    let term = sum(&mut cur)?;
    cur.finish()?;
    Ok(term)
}

fn sum(cur: &mut Cursor<'_>) -> Result<Diagram, ParseError> {
    let mut parts = vec![atom(cur)?];
    while cur.eat("+") {
        parts.push(atom(cur)?);
    }
    Ok(if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        Diagram::Sum(parts)
    })
}

fn atom(cur: &mut Cursor<'_>) -> Result<Diagram, ParseError> {
    if cur.eat("0") {
        Ok(Diagram::Zero)
    } else if cur.eat("W") {
        Ok(Diagram::OmegaAtom)
    } else if cur.eat("w^(") {
        let e = sum(cur)?;
        cur.expect(")", "`)` closing `w^(`")?;
        Ok(Diagram::OmegaPow(Box::new(e)))
    } else if cur.eat("d(") {
        let a = sum(cur)?;
        cur.expect(")", "`)` closing `d(`")?;
        Ok(Diagram::Collapse(Box::new(a)))
    } else {
        Err(cur.error("term (`0`, `W`, `w^(`, `d(`)"))
    }
}
