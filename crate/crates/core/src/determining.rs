//! Derivation of the determining equations for a fourth-order integral of
//! motion in the plane.
//!
//! Everything here is computed, not transcribed: the commutator `[H, Y]` is
//! expanded with abstract potential and correction functions, its strata are
//! read off, the leading-order polynomial space is solved by linear
//! coefficient matching, and the compatibility conditions are obtained by
//! symbolic elimination. Transcriptions of the published equations live only
//! in the golden test data.

use crate::error::{Error, Result};
use crate::jets::{DiffPoly, Func, JetMonomial};
use crate::linalg;
use crate::mpoly::{MPoly, Monomial};
use crate::operator::{build_hamiltonian, build_integral_y, DiffOperator, IntegralCoefficients};
use crate::scalar::ExactScalar;
use crate::sym::{sym_hbar, sym_x, sym_y, Sym};
use num::rational::BigRational;
use num::traits::Zero;

pub fn func_v() -> Func {
    Func::of_xy("V")
}
pub fn func_v1() -> Func {
    Func::of_x("V1")
}
pub fn func_v2() -> Func {
    Func::of_y("V2")
}
pub fn func_g1() -> Func {
    Func::of_xy("g1")
}
pub fn func_g2() -> Func {
    Func::of_xy("g2")
}
pub fn func_g3() -> Func {
    Func::of_xy("g3")
}
pub fn func_l() -> Func {
    Func::of_xy("l")
}

/// The potential used during derivation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PotentialForm {
    /// Abstract `V(x, y)`.
    General,
    /// Separable `V = V1(x) + V2(y)`.
    Separable,
}

fn potential_expr(form: PotentialForm) -> DiffPoly {
    match form {
        PotentialForm::General => DiffPoly::func(&func_v()),
        PotentialForm::Separable => DiffPoly::func(&func_v1()) + DiffPoly::func(&func_v2()),
    }
}

/// The derived determining system.
pub struct DeterminingSystem {
    /// The leading polynomials `f1..f5`, read off the normal-ordered
    /// fourth-order part of `Y`.
    pub f: [MPoly; 5],
    /// Raw third-order strata of `[H, Y]`, keyed `(3,0), (2,1), (1,2), (0,3)`;
    /// relative normalization is exactly as produced by the commutator.
    pub raw_order3: [DiffPoly; 4],
    /// Raw first-order strata, keyed `(1,0), (0,1)`.
    pub raw_order1: [DiffPoly; 2],
    /// Normalized real forms of the four equations (4a-d).
    pub order3: [DiffPoly; 4],
    /// Normalized real forms of the two equations (5a-b).
    pub order1: [DiffPoly; 2],
    /// Dimension of the generic polynomial solution space of the order-5
    /// stratum (must be 15: one direction per A_jkl).
    pub order5_nullspace_dim: usize,
    pub form: PotentialForm,
}

/// Expand `[H, Y]` with abstract `g1, g2, g3, l` and the requested potential
/// form, and read off the strata.
pub fn extract_determining_system(
    a: &IntegralCoefficients,
    form: PotentialForm,
) -> Result<DeterminingSystem> {
    let v = potential_expr(form);
    let h = build_hamiltonian(&v);
    let y = build_integral_y(
        a,
        &DiffPoly::func(&func_g1()),
        &DiffPoly::func(&func_g2()),
        &DiffPoly::func(&func_g3()),
        &DiffPoly::func(&func_l()),
    );
    let c = h.commutator(&y);

    // f polynomials from the fourth-order part of Y: p1^(5-i) p2^(i-1)
    // carries (-i hbar)^4 = hbar^4
    let h4 = MPoly::var_pow(sym_hbar(), 4);
    let mut f: Vec<MPoly> = Vec::new();
    for i in 0..5u32 {
        let coeff = y.coeff(4 - i, i);
        let mut poly = MPoly::zero();
        for (jm, c) in &coeff.terms {
            if !jm.0.is_empty() {
                return Err(Error::Inconsistent(
                    "fourth-order stratum of Y contains function jets".into(),
                ));
            }
            poly = poly + c.clone();
        }
        let f_i = poly.div_exact(&h4).ok_or_else(|| {
            Error::Inconsistent("fourth-order stratum of Y is not divisible by hbar^4".into())
        })?;
        if !f_i.is_real() {
            return Err(Error::Inconsistent("nonreal f polynomial".into()));
        }
        f.push(f_i);
    }

    // strata of the commutator: orders 5 and 4 must vanish identically
    for n in [5u32, 4] {
        for (key, coeff) in c.stratum(n) {
            if !coeff.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "stratum {n} of [H,Y] does not vanish at {key:?}"
                )));
            }
        }
    }

    let raw_order3 = [
        c.coeff(3, 0),
        c.coeff(2, 1),
        c.coeff(1, 2),
        c.coeff(0, 3),
    ];
    // The first-order stratum contains third derivatives of the g-functions;
    // they are removed by subtracting the unique combination of second
    // derivatives of the third-order equations, leaving equations whose only
    // g-dependence is the undifferentiated g1, g2, g3.
    let raw_order1 = [
        reduce_first_order(&c.coeff(1, 0), &raw_order3)?,
        reduce_first_order(&c.coeff(0, 1), &raw_order3)?,
    ];

    // the even strata are differential consequences of the odd ones: each
    // coefficient must be a constant combination of x/y derivatives of the
    // odd-strata coefficients, so [H, Y] = 0 reduces to the odd equations
    let x = sym_x();
    let y = sym_y();
    let mut gens2: Vec<DiffPoly> = Vec::new();
    for e in &raw_order3 {
        gens2.push(e.dtotal(&x)?);
        gens2.push(e.dtotal(&y)?);
    }
    for (key, coeff) in c.stratum(2) {
        if linear_combination(&coeff, &gens2).is_none() {
            return Err(Error::Inconsistent(format!(
                "stratum 2 at {key:?} is not a consequence of the order-3 equations"
            )));
        }
    }
    let mut gens0: Vec<DiffPoly> = Vec::new();
    for e in &raw_order1 {
        gens0.push(e.dtotal(&x)?);
        gens0.push(e.dtotal(&y)?);
    }
    for e in &raw_order3 {
        for (dx, dy) in [(3u32, 0u32), (2, 1), (1, 2), (0, 3)] {
            let mut d = e.clone();
            for _ in 0..dx {
                d = d.dtotal(&x)?;
            }
            for _ in 0..dy {
                d = d.dtotal(&y)?;
            }
            gens0.push(d);
        }
    }
    let c00 = c.coeff(0, 0);
    if !c00.is_zero() && linear_combination(&c00, &gens0).is_none() {
        return Err(Error::Inconsistent(
            "stratum 0 is not a consequence of the odd equations".into(),
        ));
    }

    let mut order3: Vec<DiffPoly> = Vec::new();
    for raw in &raw_order3 {
        let (norm, _ipow, _content) = raw.normalize_real()?;
        if norm.contains_var(&sym_hbar()) {
            return Err(Error::Inconsistent(
                "third-order equation retains hbar after normalization".into(),
            ));
        }
        order3.push(norm);
    }
    let mut order1: Vec<DiffPoly> = Vec::new();
    for raw in &raw_order1 {
        let (norm, _ipow, _content) = raw.normalize_real()?;
        order1.push(norm);
    }

    Ok(DeterminingSystem {
        f: f.try_into().unwrap(),
        raw_order3: raw_order3.clone(),
        raw_order1: raw_order1.clone(),
        order3: order3.try_into().unwrap(),
        order1: order1.try_into().unwrap(),
        order5_nullspace_dim: leading_order_nullspace_dim()?,
        form,
    })
}

/// Restrict `e` to the terms containing a differentiated g-jet.
fn g_derivative_part(e: &DiffPoly) -> DiffPoly {
    let gs = [func_g1(), func_g2(), func_g3()];
    let mut out = DiffPoly::zero();
    for (jm, c) in &e.terms {
        if jm
            .0
            .iter()
            .any(|(j, _)| gs.contains(&j.func) && j.dx + j.dy >= 1)
        {
            out.add_term(jm.clone(), c.clone());
        }
    }
    out
}

/// Cancel the third derivatives of the g-functions in a first-order stratum
/// coefficient by subtracting a combination of second derivatives of the
/// third-order equations.
fn reduce_first_order(raw1: &DiffPoly, raw3: &[DiffPoly; 4]) -> Result<DiffPoly> {
    let x = sym_x();
    let y = sym_y();
    let h2 = MPoly::var_pow(sym_hbar(), 2);
    let mut gens: Vec<DiffPoly> = Vec::new();
    for e in raw3 {
        for (dx, dy) in [(2u32, 0u32), (1, 1), (0, 2)] {
            let mut d = e.clone();
            for _ in 0..dx {
                d = d.dtotal(&x)?;
            }
            for _ in 0..dy {
                d = d.dtotal(&y)?;
            }
            gens.push(d.clone());
            gens.push(d.scale(&h2));
        }
    }
    let target = g_derivative_part(raw1);
    if target.is_zero() {
        return Ok(raw1.clone());
    }
    let g_parts: Vec<DiffPoly> = gens.iter().map(g_derivative_part).collect();
    let sol = linear_combination(&target, &g_parts).ok_or_else(|| {
        Error::Inconsistent("cannot eliminate g derivatives from the first-order stratum".into())
    })?;
    let mut reduced = raw1.clone();
    for (gen, s) in gens.iter().zip(&sol) {
        if !s.is_zero() {
            reduced = reduced - gen.scale_scalar(s);
        }
    }
    if !g_derivative_part(&reduced).is_zero() {
        return Err(Error::Inconsistent(
            "g derivatives survived the first-order reduction".into(),
        ));
    }
    Ok(reduced)
}

/// Express `target` as a constant combination of `gens`, exactly.
pub(crate) fn linear_combination(target: &DiffPoly, gens: &[DiffPoly]) -> Option<Vec<ExactScalar>> {
    let mut row_index: std::collections::BTreeMap<(JetMonomial, Monomial), usize> =
        std::collections::BTreeMap::new();
    for d in gens.iter().chain(std::iter::once(target)) {
        for (jm, c) in &d.terms {
            for mono in c.terms.keys() {
                let n = row_index.len();
                row_index.entry((jm.clone(), mono.clone())).or_insert(n);
            }
        }
    }
    let mut a = vec![vec![ExactScalar::zero(); gens.len()]; row_index.len()];
    for (col, d) in gens.iter().enumerate() {
        for (jm, c) in &d.terms {
            for (mono, s) in &c.terms {
                a[row_index[&(jm.clone(), mono.clone())]][col] += s.clone();
            }
        }
    }
    let mut b = vec![ExactScalar::zero(); row_index.len()];
    for (jm, c) in &target.terms {
        for (mono, s) in &c.terms {
            b[row_index[&(jm.clone(), mono.clone())]] += s.clone();
        }
    }
    crate::integrate::solve_scalar(&mut a, &mut b)
}

/// Solve the order-5 stratum for generic leading functions `F1..F5` by
/// linear coefficient matching over a degree-4 polynomial ansatz; returns the
/// dimension of the solution space (15 = one direction per A_jkl).
pub fn leading_order_nullspace_dim() -> Result<usize> {
    // Y with abstract leading functions and no lower-order part
    let p1 = DiffOperator::p1();
    let p2 = DiffOperator::p2();
    let fs: Vec<Func> = (1..=5).map(|i| Func::of_xy(&format!("F{i}"))).collect();
    let mut ygen = DiffOperator::zero();
    for (i, func) in fs.iter().enumerate() {
        let momenta = p1.pow(4 - i as u32) * p2.pow(i as u32);
        ygen = ygen
            + DiffOperator::from_expr(DiffPoly::func(func))
                .anticommutator(&momenta)
                .scale(&MPoly::rational(1, 2));
    }
    let h = build_hamiltonian(&DiffPoly::func(&func_v()));
    let c = h.commutator(&ygen);

    // degree-4 polynomial ansatz with one unknown per (function, monomial)
    let monomials: Vec<(i32, i32)> = (0..=4)
        .flat_map(|a| (0..=4 - a).map(move |b| (a, b)))
        .collect();
    assert_eq!(monomials.len(), 15);
    let mut unknowns: Vec<Sym> = Vec::new();
    let mut replacements: Vec<DiffPoly> = Vec::new();
    for i in 0..5 {
        let mut p = MPoly::zero();
        for (j, (a, b)) in monomials.iter().enumerate() {
            let u = Sym::new(&format!("u{}_{}", i, j));
            unknowns.push(u.clone());
            let mono = Monomial::var_pow(sym_x(), *a).mul(&Monomial::var_pow(sym_y(), *b));
            p.add_term(mono.mul(&Monomial::var(u.clone())), ExactScalar::one());
        }
        replacements.push(DiffPoly::from_mpoly(p));
    }

    // collect the linear system rows from the order-5 stratum
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (_key, coeff) in c.stratum(5) {
        let mut sub = coeff.clone();
        for (func, rep) in fs.iter().zip(&replacements) {
            sub = sub.subst_func(func, rep)?;
        }
        // V jets must not appear at order 5
        if sub.contains_func(&func_v()) {
            return Err(Error::Inconsistent(
                "potential jets in the order-5 stratum".into(),
            ));
        }
        let (norm, _ipow, _content) = sub.normalize_real()?;
        let poly = norm.coeff_jets(&JetMonomial::one());
        if norm.terms.len() > 1 || (norm.terms.len() == 1 && poly.is_zero()) {
            return Err(Error::Inconsistent(
                "order-5 stratum is not a plain polynomial after substitution".into(),
            ));
        }
        // rows: coefficient of each (x, y, hbar) monomial, linear in the u's
        let mut patterns: Vec<Monomial> = Vec::new();
        let mut row_map: std::collections::BTreeMap<Monomial, Vec<BigRational>> =
            std::collections::BTreeMap::new();
        for (mono, sc) in &poly.terms {
            // split into the unknown factor and the (x, y, hbar) pattern
            let mut u_idx = None;
            let mut rest = Vec::new();
            for (s, e) in &mono.0 {
                if let Some(k) = unknowns.iter().position(|u| u == s) {
                    if u_idx.is_some() || *e != 1 {
                        return Err(Error::Inconsistent(
                            "order-5 stratum nonlinear in the ansatz unknowns".into(),
                        ));
                    }
                    u_idx = Some(k);
                } else {
                    rest.push((s.clone(), *e));
                }
            }
            let pattern = Monomial(rest);
            let k = u_idx.ok_or_else(|| {
                Error::Inconsistent("order-5 stratum has an unknown-free term".into())
            })?;
            if !sc.is_real() {
                return Err(Error::Inconsistent("nonreal normalized coefficient".into()));
            }
            let entry = row_map.entry(pattern.clone()).or_insert_with(|| {
                patterns.push(pattern.clone());
                vec![BigRational::zero(); unknowns.len()]
            });
            entry[k] = &entry[k] + &sc.re;
        }
        for (_, row) in row_map {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(Error::Inconsistent("empty order-5 stratum".into()));
    }
    Ok(linalg::null_space(&rows).len())
}

/// Derive the linear compatibility condition for the potential by symbolic
/// elimination of `g1, g2, g3` from the four third-order equations: find the
/// unique (up to scale) combination
/// `s0 dy^3 E0 + s1 dx dy^2 E1 + s2 dx^2 dy E2 + s3 dx^3 E3`
/// free of the g-functions.
pub fn compatibility_condition(sys: &DeterminingSystem) -> Result<DiffPoly> {
    let x = sym_x();
    let y = sym_y();
    let derivs: [(u32, u32); 4] = [(0, 3), (1, 2), (2, 1), (3, 0)];
    let mut differentiated: Vec<DiffPoly> = Vec::new();
    for (eq, (dx, dy)) in sys.raw_order3.iter().zip(derivs) {
        let mut d = eq.clone();
        for _ in 0..dx {
            d = d.dtotal(&x)?;
        }
        for _ in 0..dy {
            d = d.dtotal(&y)?;
        }
        differentiated.push(d);
    }
    // solve for scalars s_k cancelling every g-jet
    let gs = [func_g1(), func_g2(), func_g3()];
    let mut patterns: std::collections::BTreeMap<(JetMonomial, Monomial), Vec<BigRational>> =
        std::collections::BTreeMap::new();
    for (k, d) in differentiated.iter().enumerate() {
        for (jm, c) in &d.terms {
            if !jm.0.iter().any(|(j, _)| gs.contains(&j.func)) {
                continue;
            }
            for (mono, sc) in &c.terms {
                let key = (jm.clone(), mono.clone());
                let entry = patterns
                    .entry(key)
                    .or_insert_with(|| vec![BigRational::zero(); 4]);
                // coefficients here may carry a common i power; compare via
                // the imaginary or real part, whichever is present
                let val = if sc.im.is_zero() {
                    sc.re.clone()
                } else if sc.re.is_zero() {
                    sc.im.clone()
                } else {
                    return Err(Error::Inconsistent(
                        "mixed real/imaginary coefficient in elimination".into(),
                    ));
                };
                entry[k] = &entry[k] + &val;
            }
        }
    }
    let rows: Vec<Vec<BigRational>> = patterns.into_values().collect();
    let ns = linalg::null_space(&rows);
    if ns.len() != 1 {
        return Err(Error::Inconsistent(format!(
            "g-elimination null space has dimension {}, expected 1",
            ns.len()
        )));
    }
    let s = &ns[0];
    let mut total = DiffPoly::zero();
    for (k, d) in differentiated.iter().enumerate() {
        total = total
            + d.scale(&MPoly::constant(ExactScalar::new(
                s[k].clone(),
                BigRational::zero(),
            )));
    }
    for g in &gs {
        if total.contains_func(g) {
            return Err(Error::Inconsistent("g-functions survived elimination".into()));
        }
    }
    let (norm, _ipow, _content) = total.normalize_real()?;
    if norm.contains_var(&sym_hbar()) {
        return Err(Error::Inconsistent(
            "compatibility condition contains hbar".into(),
        ));
    }
    Ok(norm)
}

/// The separable linear condition and its four split ODEs.
pub struct SplitSystem {
    /// The mixed linear condition in `V1, V2` jets (the separable image of
    /// the compatibility PDE).
    pub mixed: DiffPoly,
    /// x-equations: coefficients of `y^0` and `y^1` after `d^2/dx^2`.
    pub eq_x: [DiffPoly; 2],
    /// y-equations: coefficients of `x^0` and `x^1` after `d^2/dy^2`.
    pub eq_y: [DiffPoly; 2],
}

pub fn separable_split(a: &IntegralCoefficients) -> Result<SplitSystem> {
    let sys = extract_determining_system(a, PotentialForm::Separable)?;
    let mixed = compatibility_condition(&sys)?;
    let x = sym_x();
    let y = sym_y();

    // twice d/dx kills V2 (its coefficients are degree <= 1 in x)
    let ddx = mixed.dtotal(&x)?.dtotal(&x)?;
    if ddx.contains_func(&func_v2()) {
        return Err(Error::Inconsistent(
            "V2 jets survive double x-differentiation".into(),
        ));
    }
    let eq_x: Vec<DiffPoly> = (0..2)
        .map(|k| -> Result<DiffPoly> {
            let mut part = DiffPoly::zero();
            for (ex, ey) in ddx.xy_support() {
                if ey == k {
                    part = part
                        + ddx
                            .coeff_xy(ex, ey)
                            .scale(&MPoly::var_pow(sym_x(), ex));
                }
            }
            let (norm, _i, _c) = part.normalize_real()?;
            Ok(norm)
        })
        .collect::<Result<_>>()?;

    let ddy = mixed.dtotal(&y)?.dtotal(&y)?;
    if ddy.contains_func(&func_v1()) {
        return Err(Error::Inconsistent(
            "V1 jets survive double y-differentiation".into(),
        ));
    }
    let eq_y: Vec<DiffPoly> = (0..2)
        .map(|k| -> Result<DiffPoly> {
            let mut part = DiffPoly::zero();
            for (ex, ey) in ddy.xy_support() {
                if ex == k {
                    part = part
                        + ddy
                            .coeff_xy(ex, ey)
                            .scale(&MPoly::var_pow(sym_y(), ey));
                }
            }
            let (norm, _i, _c) = part.normalize_real()?;
            Ok(norm)
        })
        .collect::<Result<_>>()?;

    Ok(SplitSystem {
        mixed,
        eq_x: eq_x.try_into().unwrap(),
        eq_y: eq_y.try_into().unwrap(),
    })
}

/// The `l_xy = l_yx` cross-compatibility condition: eliminate `l` between the
/// two first-order equations by `d/dy (5a) - d/dx (5b)`.
pub fn cross_compat_l(sys: &DeterminingSystem) -> Result<DiffPoly> {
    let x = sym_x();
    let y = sym_y();
    let e = sys.raw_order1[0].dtotal(&y)? - sys.raw_order1[1].dtotal(&x)?;
    if e.contains_func(&func_l()) {
        return Err(Error::Inconsistent(
            "l jets survive cross-differentiation".into(),
        ));
    }
    if e.is_zero() {
        return Ok(DiffPoly::zero());
    }
    let (norm, _i, _c) = e.normalize_real()?;
    Ok(norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f5_matches_expected_polynomial() {
        let a = IntegralCoefficients::generic();
        let sys = extract_determining_system(&a, PotentialForm::General).unwrap();
        // f5 = A400 x^4 + A301 x^3 + A202 x^2 + A103 x + A004
        let x = MPoly::var("x");
        let expect = MPoly::var("A400") * x.pow(4)
            + MPoly::var("A301") * x.pow(3)
            + MPoly::var("A202") * x.pow(2)
            + MPoly::var("A103") * x.clone()
            + MPoly::var("A004");
        assert_eq!(sys.f[4], expect);
        assert_eq!(sys.order5_nullspace_dim, 15);
    }

    #[test]
    fn all_zero_a_gives_g_only_equations() {
        let a = IntegralCoefficients::only(&[]);
        let sys = extract_determining_system(&a, PotentialForm::General).unwrap();
        for f in &sys.f {
            assert!(f.is_zero());
        }
        // equation (4a) reduces to g1_x = 0
        assert_eq!(sys.order3[0], DiffPoly::jet(&func_g1(), 1, 0));
    }
}
