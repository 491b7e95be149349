//! The Ablowitz-Ramani-Segur (ARS) singularity test for the nonlinear
//! ordinary differential equations in the registry, together with the
//! Puiseux branch analysis used for the first-order classical integrals.
//!
//! Everything here is exact: pole orders, leading coefficients, resonances
//! and resonance conditions are computed symbolically, with `hbar`, the
//! movable pole location `y0`, and the equation parameters carried as
//! polynomial variables throughout.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::jets::{DiffPoly, Func};
use crate::mpoly::MPoly;
use crate::registry;
use crate::scalar::ExactScalar;
use crate::sym::{sym_y, Sym};

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_display_vec<T: std::fmt::Display, S: serde::Serializer>(
    v: &[T],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for item in v {
        seq.serialize_element(&item.to_string())?;
    }
    seq.end()
}

fn mp_rat(q: &BigRational) -> MPoly {
    MPoly::constant(ExactScalar::new(q.clone(), BigRational::zero()))
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// A single term of the equation, profiled for singularity analysis.
#[derive(Clone)]
struct TermInfo {
    /// (derivative order, power) for each jet factor of the dependent
    /// function.
    jets: Vec<(u32, u32)>,
    /// Total number of function factors (with multiplicity).
    m: u32,
    /// Total derivative order (with multiplicity).
    k: u32,
    /// The coefficient with `y -> y0` (its generic value at the pole).
    c0: MPoly,
    /// The coefficient with `y -> y0 + t`, expanded around the pole.
    cfull: MPoly,
}

fn profile(e: &DiffPoly, f: &Func) -> Result<Vec<TermInfo>> {
    let y = sym_y();
    let y0 = MPoly::var("y0");
    let t = MPoly::var("t");
    let shifted = y0 + t;
    let mut out = Vec::new();
    for (jm, coeff) in &e.terms {
        let mut jets = Vec::new();
        let (mut m, mut k) = (0u32, 0u32);
        for (jv, pow) in &jm.0 {
            if jv.func != *f {
                return Err(Error::Inconsistent(format!(
                    "equation contains the foreign function {}",
                    jv.func.name
                )));
            }
            if jv.dx != 0 {
                return Err(Error::Inconsistent("x-derivatives in a y-ODE".into()));
            }
            jets.push((jv.dy, *pow));
            m += *pow;
            k += jv.dy * *pow;
        }
        out.push(TermInfo {
            jets,
            m,
            k,
            c0: coeff.subst(&y, &MPoly::var("y0")),
            cfull: coeff.subst(&y, &shifted),
        });
    }
    Ok(out)
}

/// Exponent of a term under `W ~ t^p`: `m p - k`.
fn exponent(info: &TermInfo, p: &BigRational) -> BigRational {
    p * BigRational::from_integer(info.m.into()) - BigRational::from_integer(info.k.into())
}

/// Falling factorial `p (p-1) ... (p-k+1)`.
fn fall(p: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc *= p - BigRational::from_integer(i.into());
    }
    acc
}

/// Falling factorial of `p + r` with `r` symbolic, as a polynomial in `r`.
fn fall_sym(p: &BigRational, k: u32) -> MPoly {
    let r = MPoly::var("r");
    let mut acc = MPoly::one();
    for i in 0..k {
        acc = acc * (r.clone() + mp_rat(&(p - BigRational::from_integer(i.into()))));
    }
    acc
}

/// A dominant balance `W ~ d0 (y - y0)^p`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Balance {
    /// The leading exponent (always rational; integer for pole branches).
    #[serde(serialize_with = "ser_display")]
    pub p: BigRational,
    /// Leading coefficients solving the dominant balance. Empty when the
    /// balance polynomial has no root expressible as a rational multiple of
    /// a monomial in the parameters.
    #[serde(serialize_with = "ser_display_vec")]
    pub d0: Vec<MPoly>,
}

/// All dominant balances of the equation with negative leading exponent.
pub fn leading_balances(e: &DiffPoly, f: &Func) -> Result<Vec<Balance>> {
    let terms = profile(e, f)?;
    let mut candidates: Vec<BigRational> = Vec::new();
    for a in &terms {
        for b in &terms {
            if a.m == b.m {
                continue;
            }
            let p = (big(a.k as i64) - big(b.k as i64))
                / (big(a.m as i64) - big(b.m as i64));
            if p.is_negative() && !candidates.contains(&p) {
                candidates.push(p);
            }
        }
    }
    candidates.sort();
    let mut out = Vec::new();
    for p in candidates {
        let emin = terms
            .iter()
            .map(|ti| exponent(ti, &p))
            .min()
            .expect("nonempty equation");
        let dominant: Vec<&TermInfo> = terms
            .iter()
            .filter(|ti| exponent(ti, &p) == emin)
            .collect();
        let ms: std::collections::BTreeSet<u32> = dominant.iter().map(|ti| ti.m).collect();
        if dominant.len() < 2 || ms.len() < 2 {
            continue;
        }
        // dominant balance polynomial in d0
        let mut poly: BTreeMap<u32, MPoly> = BTreeMap::new();
        for ti in &dominant {
            let mut phi = BigRational::one();
            for (k, pow) in &ti.jets {
                for _ in 0..*pow {
                    phi *= fall(&p, *k);
                }
            }
            let entry = poly.entry(ti.m).or_insert_with(MPoly::zero);
            *entry = entry.clone() + ti.c0.clone() * mp_rat(&phi);
        }
        poly.retain(|_, v| !v.is_zero());
        if poly.len() < 2 {
            continue; // the balance degenerates; no constraint on d0
        }
        out.push(Balance {
            p,
            d0: solve_balance(&poly),
        });
    }
    Ok(out)
}

/// Square root of a single-term polynomial with positive rational
/// coefficient and even exponents, if it exists.
fn sqrt_monomial(p: &MPoly) -> Option<MPoly> {
    if p.terms.len() != 1 {
        return None;
    }
    let (mono, coeff) = p.terms.iter().next().unwrap();
    if !coeff.is_real() {
        return None;
    }
    let q = &coeff.re;
    if q.is_negative() {
        return None;
    }
    let num = q.numer().sqrt();
    let den = q.denom().sqrt();
    if &(&num * &num) != q.numer() || &(&den * &den) != q.denom() {
        return None;
    }
    let mut root = MPoly::constant(ExactScalar::new(
        BigRational::new(num, den),
        BigRational::zero(),
    ));
    for (s, e) in &mono.0 {
        if e % 2 != 0 {
            return None;
        }
        root = root * MPoly::var_pow(s.clone(), e / 2);
    }
    Some(root)
}

/// Roots of the dominant balance polynomial, as exact polynomials in the
/// parameters. Handles the linear and quadratic cases, which cover every
/// equation in the registry.
fn solve_balance(poly: &BTreeMap<u32, MPoly>) -> Vec<MPoly> {
    let dmin = *poly.keys().next().unwrap();
    let degs: Vec<u32> = poly.keys().map(|d| d - dmin).collect();
    let deg = *degs.iter().max().unwrap();
    let coeff = |d: u32| poly.get(&(d + dmin)).cloned().unwrap_or_else(MPoly::zero);
    match deg {
        1 => {
            let c0 = coeff(0);
            let c1 = coeff(1);
            match c0.div_exact(&c1) {
                Some(q) => vec![MPoly::zero() - q],
                None => vec![],
            }
        }
        2 => {
            let c0 = coeff(0);
            let c1 = coeff(1);
            let c2 = coeff(2);
            let two_c2 = c2.clone() * MPoly::int(2);
            if c0.is_zero() {
                return match c1.div_exact(&c2) {
                    Some(q) => vec![MPoly::zero() - q],
                    None => vec![],
                };
            }
            let disc = c1.clone() * c1.clone() - c0.clone() * c2 * MPoly::int(4);
            if disc.is_zero() {
                return match c1.div_exact(&two_c2) {
                    Some(q) => vec![MPoly::zero() - q],
                    None => vec![],
                };
            }
            let Some(s) = sqrt_monomial(&disc) else {
                return vec![];
            };
            let mut roots = Vec::new();
            for sign in [1i64, -1] {
                let numer = MPoly::zero() - c1.clone() + s.clone() * MPoly::int(sign);
                if let Some(q) = numer.div_exact(&two_c2) {
                    if !roots.contains(&q) {
                        roots.push(q);
                    }
                }
            }
            roots
        }
        _ => vec![],
    }
}

/// The resonance polynomial `R(r)` of a pole branch, as a univariate
/// rational polynomial (ascending coefficients), normalized by its common
/// parameter-monomial factor.
fn resonance_polynomial(
    terms: &[TermInfo],
    p: &BigRational,
    d0: &MPoly,
) -> Result<Vec<BigRational>> {
    let emin = terms
        .iter()
        .map(|ti| exponent(ti, p))
        .min()
        .expect("nonempty equation");
    let mut rpoly = MPoly::zero();
    for ti in terms {
        if exponent(ti, p) != emin || ti.m == 0 {
            continue;
        }
        // linearize the term in the perturbation direction t^(p+r)
        for (idx, (k, pow)) in ti.jets.iter().enumerate() {
            let mut factor = mp_rat(&big(*pow as i64));
            // remaining d0-powers: m - 1 of them
            factor = factor * d0.pow(ti.m - 1);
            let mut phi = BigRational::one();
            for (jdx, (k2, pow2)) in ti.jets.iter().enumerate() {
                let p2 = if jdx == idx { pow2 - 1 } else { *pow2 };
                for _ in 0..p2 {
                    phi *= fall(p, *k2);
                }
            }
            rpoly = rpoly + ti.c0.clone() * factor * mp_rat(&phi) * fall_sym(p, *k);
        }
    }
    if rpoly.is_zero() {
        return Err(Error::Inconsistent("vanishing resonance polynomial".into()));
    }
    // normalize: every r-coefficient must be a rational multiple of the
    // leading one
    let r = Sym::new("r");
    let mut coeffs: Vec<MPoly> = Vec::new();
    let mut deg = 0;
    for i in 0..=8 {
        let c = rpoly.coeff_of(&r, i);
        if !c.is_zero() {
            deg = i as usize;
        }
        coeffs.push(c);
    }
    coeffs.truncate(deg + 1);
    let lead = coeffs[deg].clone();
    let mut out = Vec::new();
    for c in &coeffs {
        if c.is_zero() {
            out.push(BigRational::zero());
            continue;
        }
        let q = c
            .div_exact(&lead)
            .and_then(|q| q.as_constant())
            .filter(|s| s.is_real())
            .map(|s| s.re)
            .ok_or_else(|| {
                Error::Inconsistent("resonance polynomial does not normalize".into())
            })?;
        out.push(q);
    }
    Ok(out)
}

/// Integer roots of a rational univariate polynomial (ascending
/// coefficients), found by scanning and deflation. Returns the roots (with
/// multiplicity) and the degree left over after removing them.
fn integer_roots(poly: &[BigRational]) -> (Vec<i64>, usize) {
    let mut p: Vec<BigRational> = poly.to_vec();
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    let mut roots = Vec::new();
    let mut r = -12i64;
    while r <= 36 && p.len() > 1 {
        let val = eval_poly(&p, &big(r));
        if val.is_zero() {
            p = deflate(&p, &big(r));
            roots.push(r);
            // stay on the same r in case of multiplicity
        } else {
            r += 1;
        }
    }
    (roots, p.len().saturating_sub(1))
}

fn eval_poly(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn deflate(p: &[BigRational], root: &BigRational) -> Vec<BigRational> {
    // synthetic division by (x - root)
    let mut out = vec![BigRational::zero(); p.len() - 1];
    let mut carry = BigRational::zero();
    for i in (0..p.len()).rev() {
        let v = &p[i] + &carry;
        if i == 0 {
            debug_assert!(v.is_zero());
            break;
        }
        out[i - 1] = v.clone();
        carry = v * root;
    }
    out
}

/// Verdict for one pole branch of the ARS test.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BranchReport {
    pub p: i64,
    #[serde(serialize_with = "ser_display")]
    pub d0: MPoly,
    /// Roots of the resonance polynomial found as integers.
    pub resonances: Vec<i64>,
    /// Degree of the resonance polynomial not accounted for by integer
    /// roots (nonzero means irrational or complex resonances).
    pub non_integer_degree: usize,
    /// Resonance orders at which the compatibility condition fails.
    pub failed_conditions: Vec<i64>,
    pub passes: bool,
}

/// Full ARS report for one equation.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PainleveReport {
    pub key: String,
    pub branches: Vec<BranchReport>,
    /// Leading exponents that are negative but not integers (algebraic
    /// movable singularities at leading order).
    #[serde(serialize_with = "ser_display_vec")]
    pub non_integer_exponents: Vec<BigRational>,
    pub passes: bool,
}

/// Run the ARS Painleve test on a registered equation.
pub fn painleve_test(key: &str) -> Result<PainleveReport> {
    let spec = registry::ode(key)?;
    painleve_test_on(&spec.equation, &spec.func, key)
}

/// Run the ARS Painleve test on an explicit equation.
pub fn painleve_test_on(e: &DiffPoly, f: &Func, key: &str) -> Result<PainleveReport> {
    let terms = profile(e, f)?;
    let balances = leading_balances(e, f)?;
    let mut branches = Vec::new();
    let mut non_integer_exponents = Vec::new();
    let mut passes = true;
    let mut saw_branch = false;
    for bal in &balances {
        if !bal.p.is_integer() {
            non_integer_exponents.push(bal.p.clone());
            passes = false;
            continue;
        }
        let p_int = bal.p.to_integer().to_i64().unwrap();
        if bal.d0.is_empty() {
            passes = false;
            continue;
        }
        for d0 in &bal.d0 {
            saw_branch = true;
            let rp = resonance_polynomial(&terms, &bal.p, d0)?;
            let (resonances, leftover) = integer_roots(&rp);
            let positive: Vec<i64> = resonances.iter().copied().filter(|r| *r > 0).collect();
            let distinct = {
                let set: std::collections::BTreeSet<i64> = resonances.iter().copied().collect();
                set.len() == resonances.len()
            };
            let failed = if leftover == 0 && distinct && resonances.contains(&-1) {
                ars_conditions(&terms, p_int, d0, &positive)?
            } else {
                Vec::new()
            };
            let ok = leftover == 0
                && distinct
                && resonances.contains(&-1)
                && resonances.iter().all(|r| *r >= -1 && *r != 0)
                && failed.is_empty();
            passes &= ok;
            branches.push(BranchReport {
                p: p_int,
                d0: d0.clone(),
                resonances,
                non_integer_degree: leftover,
                failed_conditions: failed,
                passes: ok,
            });
        }
    }
    Ok(PainleveReport {
        key: key.to_string(),
        branches,
        non_integer_exponents,
        passes: passes && saw_branch,
    })
}

type Series = BTreeMap<i64, MPoly>;

fn series_mul(a: &Series, b: &Series, cap: i64) -> Series {
    let mut out = Series::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea + eb;
            if e > cap {
                continue;
            }
            let entry = out.entry(e).or_insert_with(MPoly::zero);
            *entry = entry.clone() + ca.clone() * cb.clone();
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Check the resonance compatibility conditions by expanding the Laurent
/// series through the largest positive resonance. Returns the resonance
/// orders whose condition fails.
fn ars_conditions(
    terms: &[TermInfo],
    p: i64,
    d0: &MPoly,
    positive_resonances: &[i64],
) -> Result<Vec<i64>> {
    let Some(&jmax) = positive_resonances.iter().max() else {
        return Ok(Vec::new());
    };
    let jcap = jmax;
    let pq = big(p);
    let emin = terms
        .iter()
        .map(|ti| exponent(ti, &pq))
        .min()
        .unwrap()
        .to_integer()
        .to_i64()
        .unwrap();
    let cap = emin + jcap;
    let dsym: Vec<MPoly> = (0..=jcap as usize)
        .map(|j| {
            if j == 0 {
                d0.clone()
            } else {
                MPoly::var(format!("dser{j}").as_str())
            }
        })
        .collect();
    let t = Sym::new("t");
    let mut total = Series::new();
    for ti in terms {
        // coefficient series in t
        let mut cseries = Series::new();
        for s in 0..=(jcap + 8) {
            let c = ti.cfull.coeff_of(&t, s as i32);
            if !c.is_zero() {
                cseries.insert(s, c);
            }
        }
        // the factors of the term, each with its minimal exponent, so that
        // intermediate products can be truncated without losing entries
        // that later (negative-exponent) factors would bring back under
        // the cap
        let mut factors: Vec<Series> = vec![cseries];
        for (k, pow) in &ti.jets {
            let mut jser = Series::new();
            for j in 0..=jcap {
                let phi = fall(&(big(p + j)), *k);
                let coeff = dsym[j as usize].clone() * mp_rat(&phi);
                if !coeff.is_zero() {
                    jser.insert(p + j - *k as i64, coeff);
                }
            }
            for _ in 0..*pow {
                factors.push(jser.clone());
            }
        }
        let mins: Vec<i64> = factors
            .iter()
            .map(|s| s.keys().next().copied().unwrap_or(0))
            .collect();
        let mut acc = factors[0].clone();
        for i in 1..factors.len() {
            let remaining_min: i64 = mins[i + 1..].iter().sum();
            acc = series_mul(&acc, &factors[i], cap - remaining_min);
        }
        for (e, c) in acc {
            if e > cap {
                continue;
            }
            let entry = total.entry(e).or_insert_with(MPoly::zero);
            *entry = entry.clone() + c;
        }
    }
    total.retain(|_, v| !v.is_zero());
    if let Some(c) = total.get(&emin) {
        if !c.is_zero() {
            return Err(Error::Inconsistent(
                "leading coefficient does not cancel at the dominant balance".into(),
            ));
        }
    }
    let mut failed = Vec::new();
    let mut solved: Vec<(Sym, MPoly)> = Vec::new();
    for j in 1..=jcap {
        let dj = Sym::new(&format!("dser{j}"));
        let mut c = total.get(&(emin + j)).cloned().unwrap_or_else(MPoly::zero);
        for (s, v) in &solved {
            c = c.subst(s, v);
        }
        let lin = c.diff(&dj);
        if lin.contains_var(&dj) {
            return Err(Error::Inconsistent(format!(
                "order {j} is not linear in its new coefficient"
            )));
        }
        let rest = c.subst(&dj, &MPoly::zero());
        if positive_resonances.contains(&j) {
            if !lin.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "resonance {j} has a nonvanishing linear coefficient"
                )));
            }
            if !rest.is_zero() {
                failed.push(j);
                // keep going with the arbitrary coefficient left symbolic
            }
        } else {
            if lin.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "non-resonant order {j} has a vanishing linear coefficient"
                )));
            }
            let q = rest.div_exact(&lin).ok_or_else(|| {
                Error::Inconsistent(format!("order {j} does not solve exactly"))
            })?;
            solved.push((dj, MPoly::zero() - q));
        }
    }
    Ok(failed)
}

/// Report of the Puiseux branch analysis for a first-order equation that is
/// polynomial of degree >= 2 in `W'`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BranchExponent {
    /// The local exponent `1 + 1/m` of the movable algebraic branch point,
    /// where `m` is the multiplicity of the colliding `W'` roots.
    #[serde(serialize_with = "ser_display")]
    pub exponent: BigRational,
    /// Whether the exponent is an integer (it never is for `m >= 2`).
    pub integer: bool,
}

/// Analyze the movable algebraic branch points of a first-order ODE that is
/// polynomial of degree `m >= 2` in `W'`. At a generic point where the
/// discriminant in `W'` has a simple zero along a solution, the local
/// expansion proceeds in powers of `(y - y0)^(1/m)` on top of an analytic
/// part, giving the branch exponent `1 + 1/m`.
pub fn branch_exponent(e: &DiffPoly, f: &Func) -> Result<BranchExponent> {
    let terms = profile(e, f)?;
    let mut m = 0u32;
    for ti in &terms {
        for (k, pow) in &ti.jets {
            if *k > 1 {
                return Err(Error::Inconsistent(
                    "branch analysis expects a first-order equation".into(),
                ));
            }
            if *k == 1 {
                let deg: u32 = ti
                    .jets
                    .iter()
                    .filter(|(kk, _)| *kk == 1)
                    .map(|(_, pw)| *pw)
                    .sum();
                let _ = pow;
                m = m.max(deg);
            }
        }
    }
    if m < 2 {
        return Err(Error::Inconsistent(
            "the equation is linear in W'; no algebraic branch".into(),
        ));
    }
    // the discriminant with respect to W' must not vanish identically:
    // otherwise the top-derivative roots never separate and the analysis
    // does not apply. For the quadratic case this is b^2 - 4 a c, where
    // a, b, c are differential polynomials in W and y.
    if m == 2 {
        let [c, b, a] = split_by_wprime(e, f, 2)?;
        let disc = b.clone() * b - a * c * DiffPoly::from_mpoly(MPoly::int(4));
        if disc.terms.is_empty() {
            return Err(Error::Inconsistent(
                "identically vanishing discriminant".into(),
            ));
        }
    }
    let exponent = BigRational::one() + BigRational::new(BigInt::one(), BigInt::from(m));
    Ok(BranchExponent {
        integer: exponent.is_integer(),
        exponent,
    })
}

/// Split a first-order equation by powers of `W'`, returning the
/// coefficients of `W'^0 .. W'^max_pow` as differential polynomials in `W`.
fn split_by_wprime(e: &DiffPoly, f: &Func, max_pow: u32) -> Result<[DiffPoly; 3]> {
    let mut parts = [DiffPoly::zero(), DiffPoly::zero(), DiffPoly::zero()];
    for (jm, coeff) in &e.terms {
        let mut wprime_pow = 0u32;
        let mut rest = crate::jets::JetMonomial::one();
        for (jv, pow) in &jm.0 {
            if jv.func == *f && jv.dy == 1 && jv.dx == 0 {
                wprime_pow += *pow;
            } else {
                rest = rest.mul(&crate::jets::JetMonomial::power(jv.clone(), *pow));
            }
        }
        if wprime_pow > max_pow {
            return Err(Error::Inconsistent("unexpected W' degree".into()));
        }
        let mut term = DiffPoly::zero();
        term.terms.insert(rest, coeff.clone());
        parts[wprime_pow as usize] = parts[wprime_pow as usize].clone() + term;
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_root_extraction() {
        // (r + 1)(r - 4) = r^2 - 3 r - 4
        let p = vec![big(-4), big(-3), big(1)];
        let (roots, leftover) = integer_roots(&p);
        assert_eq!(roots, vec![-1, 4]);
        assert_eq!(leftover, 0);
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(fall(&big(-1), 3), big(-6));
        assert_eq!(fall(&big(-2), 2), big(6));
    }
}
