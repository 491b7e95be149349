//! Symbolic antidifferentiation of differential polynomials.
//!
//! The integrands that arise in the reduction chain are polynomial in the
//! integration variable with jet-polynomial coefficients, so an exact
//! antiderivative (when one exists) lives in a finite-dimensional space of
//! candidate terms generated from the integrand by exponent bumps and
//! integration-by-parts moves. We build that space to closure, differentiate
//! every candidate, and solve the matching problem exactly.

use crate::error::{Error, Result};
use crate::jets::{DiffPoly, JetMonomial, JetVar};
use crate::mpoly::{MPoly, Monomial};
use crate::scalar::ExactScalar;
use crate::sym::Sym;
use std::collections::{BTreeMap, BTreeSet};

/// One candidate antiderivative term: jets times a single monomial.
type Pattern = (JetMonomial, Monomial);

fn patterns_of(e: &DiffPoly) -> Vec<Pattern> {
    let mut out = Vec::new();
    for (jm, c) in &e.terms {
        for mono in c.terms.keys() {
            out.push((jm.clone(), mono.clone()));
        }
    }
    out
}

fn pattern_expr(p: &Pattern) -> DiffPoly {
    let mut c = MPoly::zero();
    c.add_term(p.1.clone(), ExactScalar::one());
    let mut d = DiffPoly::zero();
    d.add_term(p.0.clone(), c);
    d
}

/// Seed candidates for one integrand pattern: bump the exponent of `var`,
/// or undo one `var`-derivative on one jet.
fn seeds(p: &Pattern, var: &Sym, is_x: bool) -> Vec<Pattern> {
    let mut out = Vec::new();
    // exponent bump x^a -> x^{a+1} (skip a == -1, which integrates to a log)
    if p.1.exponent(var) != -1 {
        out.push((p.0.clone(), p.1.mul(&Monomial::var(var.clone()))));
    }
    // reduce one jet derivative in the var direction
    for (j, _) in &p.0 .0 {
        let ord = if is_x { j.dx } else { j.dy };
        if ord > 0 && j.func.args.depends_on(var) {
            let reduced = JetVar {
                func: j.func.clone(),
                dx: j.dx - if is_x { 1 } else { 0 },
                dy: j.dy - if is_x { 0 } else { 1 },
            };
            let jm = p.0.without_one(j).mul(&JetMonomial::single(reduced));
            out.push((jm.clone(), p.1.clone()));
        }
    }
    out
}

/// Find `F` with `dF/dvar == e`, exactly. Errors with [`Error::NotIntegrable`]
/// if no antiderivative exists in the generated candidate space.
pub fn antiderivative(e: &DiffPoly, var: &Sym) -> Result<DiffPoly> {
    if e.is_zero() {
        return Ok(DiffPoly::zero());
    }
    let is_x = var == &crate::sym::sym_x();
    // Bounds that any antiderivative term must respect: differentiation never
    // lowers a jet order below those present, never changes the jet degree,
    // and lowers the exponent of `var` by at most one. They keep the
    // candidate closure finite.
    let jmax = e.max_jet_order();
    let degmax = e.jet_degree();
    let vmax = 1 + e
        .terms
        .values()
        .flat_map(|c| c.terms.keys().map(|m| m.exponent(var)))
        .max()
        .unwrap_or(0);
    let admissible = |p: &Pattern| -> bool {
        p.1.exponent(var) <= vmax
            && p.0.degree() <= degmax
            && p.0 .0.iter().all(|(j, _)| j.order() <= jmax)
    };
    // build the candidate set to closure
    let mut cands: BTreeSet<Pattern> = BTreeSet::new();
    let mut frontier: Vec<Pattern> = patterns_of(e);
    for _round in 0..24 {
        let mut next = Vec::new();
        for p in &frontier {
            for s in seeds(p, var, is_x) {
                if admissible(&s) && cands.insert(s.clone()) {
                    // differentiating this candidate may expose new integrand
                    // patterns that need their own by-parts partners
                    let d = pattern_expr(&s).dtotal(var)?;
                    next.extend(patterns_of(&d));
                }
            }
        }
        if next.is_empty() || cands.len() > 600 {
            break;
        }
        frontier = next;
    }
    let cands: Vec<Pattern> = cands.into_iter().collect();
    if cands.is_empty() {
        return Err(Error::NotIntegrable(format!("no candidates for d/d{var}")));
    }
    // rows: every pattern appearing in any candidate derivative or in e
    let derivs: Vec<DiffPoly> = cands
        .iter()
        .map(|p| pattern_expr(p).dtotal(var))
        .collect::<Result<_>>()?;
    let mut row_index: BTreeMap<Pattern, usize> = BTreeMap::new();
    for d in derivs.iter().chain(std::iter::once(e)) {
        for (jm, c) in &d.terms {
            for mono in c.terms.keys() {
                let key = (jm.clone(), mono.clone());
                let n = row_index.len();
                row_index.entry(key).or_insert(n);
            }
        }
    }
    let nrows = row_index.len();
    // assemble and solve over the Gaussian rationals
    let mut a = vec![vec![ExactScalar::zero(); cands.len()]; nrows];
    for (col, d) in derivs.iter().enumerate() {
        for (jm, c) in &d.terms {
            for (mono, s) in &c.terms {
                let row = row_index[&(jm.clone(), mono.clone())];
                a[row][col] += s.clone();
            }
        }
    }
    let mut b = vec![ExactScalar::zero(); nrows];
    for (jm, c) in &e.terms {
        for (mono, s) in &c.terms {
            b[row_index[&(jm.clone(), mono.clone())]] += s.clone();
        }
    }
    let x = solve_scalar(&mut a, &mut b)
        .ok_or_else(|| Error::NotIntegrable(format!("no antiderivative in d/d{var}")))?;
    let mut out = DiffPoly::zero();
    for (p, q) in cands.iter().zip(&x) {
        if !q.is_zero() {
            out = out + pattern_expr(p).scale_scalar(q);
        }
    }
    Ok(out)
}

/// Gaussian elimination over `ExactScalar`; consumes the inputs.
pub(crate) fn solve_scalar(a: &mut [Vec<ExactScalar>], b: &mut [ExactScalar]) -> Option<Vec<ExactScalar>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].inv();
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &t;
                }
                let t = &f * &b[r];
                b[i] = &b[i] - &t;
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    // consistency: all-zero rows must have zero rhs
    for i in r..rows {
        if !b[i].is_zero() {
            return None;
        }
    }
    let mut x = vec![ExactScalar::zero(); cols];
    for (row, col) in pivots {
        x[col] = b[row].clone();
    }
    Some(x)
}

/// Search for an integrating factor `y^s` (or `x^s`) with `s` in a small
/// window such that `y^s * e` has an antiderivative; returns `(s, F)` with
/// `dF/dvar == var^s * e`.
pub fn with_integrating_factor(e: &DiffPoly, var: &Sym) -> Result<(i32, DiffPoly)> {
    for s in 0..=4 {
        for sgn in [1, -1] {
            let s = s * sgn;
            let scaled = e.scale(&MPoly::var_pow(var.clone(), s));
            if let Ok(f) = antiderivative(&scaled, var) {
                return Ok((s, f));
            }
        }
    }
    Err(Error::NotIntegrable(format!(
        "no power integrating factor in {var} found"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::Func;
    use crate::sym::{sym_x, sym_y};

    #[test]
    fn power_rule() {
        let x = DiffPoly::var("x");
        let e = DiffPoly::int(3) * x.pow(2);
        let f = antiderivative(&e, &sym_x()).unwrap();
        assert_eq!(f, DiffPoly::var("x").pow(3));
    }

    #[test]
    fn by_parts_chain() {
        // d/dx (x V1' - V1) = x V1''
        let v1 = Func::of_x("V1");
        let e = DiffPoly::var("x") * DiffPoly::jet1(&v1, 2);
        let f = antiderivative(&e, &sym_x()).unwrap();
        assert_eq!(f.dtotal(&sym_x()).unwrap(), e);
        let expect = DiffPoly::var("x") * DiffPoly::jet1(&v1, 1) - DiffPoly::func(&v1);
        assert_eq!(f, expect);
    }

    #[test]
    fn mixed_jets_and_params() {
        // integrand: hbar^2 y W''' + 12 W W' ; antiderivative hbar^2 (yW'' - W') + 6 W^2
        let w = Func::of_y("W");
        let h2 = MPoly::var_pow("hbar", 2);
        let e = DiffPoly::jet1(&w, 3).scale(&(h2.clone() * MPoly::var("y")))
            + DiffPoly::int(12) * DiffPoly::func(&w) * DiffPoly::jet1(&w, 1);
        let f = antiderivative(&e, &sym_y()).unwrap();
        assert_eq!(f.dtotal(&sym_y()).unwrap(), e);
    }

    #[test]
    fn log_case_rejected() {
        let e = DiffPoly::var("x").scale(&MPoly::var_pow("x", -2)); // 1/x
        assert!(antiderivative(&e, &sym_x()).is_err());
    }

    #[test]
    fn integrating_factor() {
        // e = 2 W' + y W''  needs no factor; y e with factor search also works
        let w = Func::of_y("W");
        let e = DiffPoly::int(2) * DiffPoly::jet1(&w, 1)
            + DiffPoly::var("y") * DiffPoly::jet1(&w, 2);
        let (s, f) = with_integrating_factor(&e, &sym_y()).unwrap();
        let scaled = e.scale(&MPoly::var_pow("y", s));
        assert_eq!(f.dtotal(&sym_y()).unwrap(), scaled);
    }
}
