//! Canonical plain-text (s-expression) and JSON forms of [`DiffPoly`].
//!
//! The s-expression form is the on-disk golden-file format: terms appear in
//! canonical order, so serialization is deterministic and equality of files
//! implies equality of expressions. Round-trips are lossless.
//!
//! Grammar:
//! ```text
//! expr      := (sum term*)
//! term      := (term poly jet*)
//! poly      := (poly mono*)
//! mono      := (mono RAT RAT varpow*)        ; real part, imaginary part
//! varpow    := (v NAME INT)
//! jet       := (jet NAME ARGS INT INT INT)   ; args in {x,y,xy}; dx dy power
//! RAT       := INT | INT/INT
//! ```

use crate::error::{Error, Result};
use crate::jets::{ArgSpec, DiffPoly, Func, JetMonomial, JetVar};
use crate::mpoly::{MPoly, Monomial};
use crate::scalar::ExactScalar;
use crate::sym::Sym;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;
use std::fmt::Write as _;
use std::str::FromStr;

fn rat_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_sexpr(e: &DiffPoly) -> String {
    let mut s = String::from("(sum");
    for (jm, c) in &e.terms {
        s.push_str("\n  (term (poly");
        for (m, sc) in &c.terms {
            write!(s, " (mono {} {}", rat_str(&sc.re), rat_str(&sc.im)).unwrap();
            for (v, p) in &m.0 {
                write!(s, " (v {} {})", v.name(), p).unwrap();
            }
            s.push(')');
        }
        s.push(')');
        for (j, p) in &jm.0 {
            let args = match j.func.args {
                ArgSpec::OfX => "x",
                ArgSpec::OfY => "y",
                ArgSpec::OfXY => "xy",
            };
            write!(s, " (jet {} {} {} {} {})", j.func.name, args, j.dx, j.dy, p).unwrap();
        }
        s.push(')');
    }
    s.push_str(")\n");
    s
}

pub fn to_json(e: &DiffPoly) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = e
        .terms
        .iter()
        .map(|(jm, c)| {
            let monos: Vec<serde_json::Value> = c
                .terms
                .iter()
                .map(|(m, sc)| {
                    serde_json::json!({
                        "re": rat_str(&sc.re),
                        "im": rat_str(&sc.im),
                        "vars": m.0.iter().map(|(v, p)| serde_json::json!([v.name(), p])).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let jets: Vec<serde_json::Value> = jm
                .0
                .iter()
                .map(|(j, p)| {
                    serde_json::json!({
                        "func": j.func.name.name(),
                        "args": match j.func.args { ArgSpec::OfX => "x", ArgSpec::OfY => "y", ArgSpec::OfXY => "xy" },
                        "dx": j.dx,
                        "dy": j.dy,
                        "pow": p,
                    })
                })
                .collect();
            serde_json::json!({ "coeff": monos, "jets": jets })
        })
        .collect();
    serde_json::json!({ "sum": terms })
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn tokenize(s: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(Tok::Atom(std::mem::take(&mut cur)));
                }
                out.push(if ch == '(' { Tok::Open } else { Tok::Close });
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(Tok::Atom(std::mem::take(&mut cur)));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(Tok::Atom(cur));
    }
    out
}

#[derive(Debug)]
enum Node {
    Atom(String),
    List(Vec<Node>),
}

fn parse_nodes(toks: &[Tok], pos: &mut usize) -> Result<Node> {
    match toks.get(*pos) {
        Some(Tok::Open) => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                match toks.get(*pos) {
                    Some(Tok::Close) => {
                        *pos += 1;
                        return Ok(Node::List(items));
                    }
                    Some(_) => items.push(parse_nodes(toks, pos)?),
                    None => return Err(Error::Parse("unbalanced parentheses".into())),
                }
            }
        }
        Some(Tok::Atom(a)) => {
            *pos += 1;
            Ok(Node::Atom(a.clone()))
        }
        Some(Tok::Close) | None => Err(Error::Parse("unexpected end or ')'".into())),
    }
}

fn atom(n: &Node) -> Result<&str> {
    match n {
        Node::Atom(a) => Ok(a),
        _ => Err(Error::Parse("expected atom".into())),
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n).map_err(|e| Error::Parse(e.to_string()))?;
        let d = BigInt::from_str(d).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(BigRational::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(BigRational::from_integer(n))
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.parse::<i64>().map_err(|e| Error::Parse(e.to_string()))
}

pub fn from_sexpr(s: &str) -> Result<DiffPoly> {
    let toks = tokenize(s);
    let mut pos = 0;
    let root = parse_nodes(&toks, &mut pos)?;
    let items = match &root {
        Node::List(items) if !items.is_empty() && matches!(&items[0], Node::Atom(a) if a == "sum") => {
            &items[1..]
        }
        _ => return Err(Error::Parse("expected (sum ...)".into())),
    };
    let mut out = DiffPoly::zero();
    for term in items {
        let parts = match term {
            Node::List(p) if p.len() >= 2 && matches!(&p[0], Node::Atom(a) if a == "term") => p,
            _ => return Err(Error::Parse("expected (term ...)".into())),
        };
        // coefficient
        let coeff_nodes = match &parts[1] {
            Node::List(p) if !p.is_empty() && matches!(&p[0], Node::Atom(a) if a == "poly") => {
                &p[1..]
            }
            _ => return Err(Error::Parse("expected (poly ...)".into())),
        };
        let mut coeff = MPoly::zero();
        for mono in coeff_nodes {
            let m = match mono {
                Node::List(p) if p.len() >= 3 && matches!(&p[0], Node::Atom(a) if a == "mono") => p,
                _ => return Err(Error::Parse("expected (mono ...)".into())),
            };
            let re = parse_rat(atom(&m[1])?)?;
            let im = parse_rat(atom(&m[2])?)?;
            let mut vars = Vec::new();
            for vp in &m[3..] {
                let v = match vp {
                    Node::List(p)
                        if p.len() == 3 && matches!(&p[0], Node::Atom(a) if a == "v") =>
                    {
                        p
                    }
                    _ => return Err(Error::Parse("expected (v name exp)".into())),
                };
                vars.push((Sym::new(atom(&v[1])?), parse_int(atom(&v[2])?)? as i32));
            }
            vars.sort_by(|a, b| a.0.cmp(&b.0));
            coeff.add_term(Monomial(vars), ExactScalar::new(re, im));
        }
        // jets
        let mut jets = Vec::new();
        for jn in &parts[2..] {
            let j = match jn {
                Node::List(p)
                    if p.len() == 6 && matches!(&p[0], Node::Atom(a) if a == "jet") =>
                {
                    p
                }
                _ => return Err(Error::Parse("expected (jet ...)".into())),
            };
            let name = atom(&j[1])?;
            let args = match atom(&j[2])? {
                "x" => ArgSpec::OfX,
                "y" => ArgSpec::OfY,
                "xy" => ArgSpec::OfXY,
                other => return Err(Error::Parse(format!("bad argspec {other}"))),
            };
            jets.push((
                JetVar {
                    func: Func {
                        name: Sym::new(name),
                        args,
                    },
                    dx: parse_int(atom(&j[3])?)? as u32,
                    dy: parse_int(atom(&j[4])?)? as u32,
                },
                parse_int(atom(&j[5])?)? as u32,
            ));
        }
        jets.sort_by(|a, b| a.0.cmp(&b.0));
        out.add_term(JetMonomial(jets), coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::DiffPoly;

    #[test]
    fn round_trip() {
        let w = Func::of_y("W");
        let e = DiffPoly::jet1(&w, 3).scale(&(MPoly::var_pow("hbar", 2) * MPoly::var("y")))
            - DiffPoly::int(6) * DiffPoly::jet1(&w, 1).pow(2)
            + DiffPoly::var("x").scale(&MPoly::i());
        let text = to_sexpr(&e);
        let back = from_sexpr(&text).unwrap();
        assert_eq!(e, back);
        // canonical: serializing again is byte-identical
        assert_eq!(text, to_sexpr(&back));
    }

    #[test]
    fn zero_round_trip() {
        let e = DiffPoly::zero();
        assert_eq!(from_sexpr(&to_sexpr(&e)).unwrap(), e);
    }
}
