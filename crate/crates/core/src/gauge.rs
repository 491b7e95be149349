//! Gauge freedoms of the reduction chain.
//!
//! Two freedoms justify the normalizations used for the named W-equations:
//!
//! * shifting the auxiliary function, `W -> W + alpha y + beta`, maps each
//!   W-equation family onto itself with redefined integration constants,
//!   which is why the linear-potential constants can be dropped;
//! * adding any polynomial in the one-dimensional Hamiltonians `H1`, `H2`
//!   to the fourth-order integral `Y` leaves the commutator `[H, Y]`
//!   unchanged, which is why the trailing `A040, A022, A004` coefficients
//!   can be gauge-fixed to zero.

use crate::error::{Error, Result};
use crate::exotic::func_w;
use crate::jets::{DiffPoly, JetMonomial};
use crate::mpoly::MPoly;
use crate::operator::{build_h1, build_h2, build_integral_y, build_hamiltonian, DiffOperator, IntegralCoefficients};
use crate::sym::Sym;

/// Derivative of a differential polynomial with respect to a scalar
/// parameter appearing in its coefficients.
fn dparam(e: &DiffPoly, p: &Sym) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for (jm, c) in &e.terms {
        let d = c.diff(p);
        if !d.is_zero() {
            out.terms.insert(jm.clone(), d);
        }
    }
    out
}

/// Decompose a differential polynomial into slots `(jet monomial, y-power)`
/// with the y-free part of each coefficient.
fn slots(e: &DiffPoly) -> Vec<((JetMonomial, i32), MPoly)> {
    let y = Sym::new("y");
    let mut out = Vec::new();
    for (jm, c) in &e.terms {
        // collect the y-exponent range
        let mut pows: std::collections::BTreeSet<i32> = std::collections::BTreeSet::new();
        for m in c.terms.keys() {
            pows.insert(m.exponent(&y));
        }
        for p in pows {
            let part = c.coeff_of(&y, p);
            if !part.is_zero() {
                out.push(((jm.clone(), p), part));
            }
        }
    }
    out
}

fn slot_coeff(e: &DiffPoly, key: &(JetMonomial, i32)) -> MPoly {
    let y = Sym::new("y");
    e.terms
        .get(&key.0)
        .map(|c| c.coeff_of(&y, key.1))
        .unwrap_or_else(MPoly::zero)
}

/// The result of closing a W-equation family under `W -> W + alpha y + beta`.
#[derive(Debug, Clone)]
pub struct ShiftClosure {
    /// `(parameter, transformed value)`: substituting these values into the
    /// original equation reproduces the shifted equation exactly.
    pub transformed: Vec<(Sym, MPoly)>,
}

/// Substitute `W -> W + alpha y + beta` into the equation and express the
/// result as the same equation with the listed parameters redefined.
///
/// The parameters must enter the equation linearly (they are integration
/// constants of the reduction). Fails if the family is not closed under the
/// shift.
pub fn w_shift_closure(e: &DiffPoly, params: &[&str]) -> Result<ShiftClosure> {
    let y = MPoly::var("y");
    let shift = DiffPoly::func(&func_w())
        + DiffPoly::from_mpoly(MPoly::var("alpha") * y + MPoly::var("beta"));
    let shifted = e.subst_func(&func_w(), &shift)?;

    // the parameter-free part and the linear generators of the family
    let mut base = e.clone();
    let mut gens: Vec<(Sym, DiffPoly)> = Vec::new();
    for p in params {
        let s = Sym::new(p);
        let g = dparam(e, &s);
        if g.terms.is_empty() {
            return Err(Error::Inconsistent(format!(
                "parameter {p} does not appear in the equation"
            )));
        }
        if !dparam(&g, &s).terms.is_empty() {
            return Err(Error::Inconsistent(format!(
                "parameter {p} does not enter linearly"
            )));
        }
        base = base.subst_var(&s, &MPoly::zero());
        gens.push((s, g));
    }

    let mut residual = shifted - base;
    let mut transformed = Vec::new();
    let mut remaining: Vec<usize> = (0..gens.len()).collect();
    while !remaining.is_empty() {
        // find a generator with an identifying slot: rational coefficient
        // there, and zero coefficient for every other unsolved generator
        let mut progress = None;
        'search: for (pos, &i) in remaining.iter().enumerate() {
            for (key, coeff) in slots(&gens[i].1) {
                let Some(c) = coeff.as_constant() else {
                    continue;
                };
                if c.is_zero() {
                    continue;
                }
                if remaining
                    .iter()
                    .filter(|&&j| j != i)
                    .any(|&j| !slot_coeff(&gens[j].1, &key).is_zero())
                {
                    continue;
                }
                let value = slot_coeff(&residual, &key).scale(&c.inv());
                progress = Some((pos, i, value));
                break 'search;
            }
        }
        let Some((pos, i, value)) = progress else {
            return Err(Error::Inconsistent(
                "no identifying slot for the remaining parameters".into(),
            ));
        };
        residual = residual - gens[i].1.scale(&value);
        transformed.push((gens[i].0.clone(), value));
        remaining.remove(pos);
    }
    if !residual.terms.is_empty() {
        return Err(Error::Inconsistent(
            "the family is not closed under the shift".into(),
        ));
    }
    transformed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(ShiftClosure { transformed })
}

/// `[H, Y + q(H1, H2)] = [H, Y]` for any polynomial `q`: verified on the
/// degree-2 monomials `H1^2`, `H1 H2`, `H2^2` with abstract potentials and
/// a generic fourth-order integral.
pub fn integral_shift_leaves_commutator(a: &IntegralCoefficients) -> Result<bool> {
    use crate::determining::{func_g1, func_g2, func_g3, func_l, func_v1, func_v2};
    let v1 = DiffPoly::func(&func_v1());
    let v2 = DiffPoly::func(&func_v2());
    let h1 = build_h1(&v1);
    let h2 = build_h2(&v2);
    let h = build_hamiltonian(&(v1.clone() + v2.clone()));
    let y = build_integral_y(
        a,
        &DiffPoly::func(&func_g1()),
        &DiffPoly::func(&func_g2()),
        &DiffPoly::func(&func_g3()),
        &DiffPoly::func(&func_l()),
    );
    let base = h.commutator(&y);
    for q in [
        h1.compose(&h1),
        h1.compose(&h2),
        h2.compose(&h2),
        h1.clone(),
        h2.clone(),
    ] {
        let shifted = h.commutator(&(y.clone() + q));
        if !(shifted - base.clone()).is_zero() {
            return Ok(false);
        }
    }
    let _: DiffOperator = base;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_extraction_roundtrip() {
        let e = DiffPoly::jet1(&func_w(), 1)
            .scale(&(MPoly::var("a1") * MPoly::var("y") + MPoly::int(3)));
        let s = slots(&e);
        assert_eq!(s.len(), 2);
    }
}
