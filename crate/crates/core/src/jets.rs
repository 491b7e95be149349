//! Differential polynomials: polynomials in the jets (derivatives of all
//! orders) of abstract functions, with multivariate-polynomial coefficients.
//!
//! Every determining equation, every nonlinear W-ODE and every golden
//! transcription in this crate is a [`DiffPoly`]. Total derivatives follow
//! the chain rule on jets; the normal form is canonical, so symbolic
//! equality is structural equality.

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Monomial};
use crate::scalar::ExactScalar;
use crate::sym::{sym_x, sym_y, Sym};
use num::rational::BigRational;
use num::traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Default bound on jet order. The deepest genuine need is a fourth
/// derivative of `W` inside the `K1`/`K2` conditions followed by four more
/// differentiations during compatibility analysis.
pub const MAX_JET_ORDER: u32 = 8;

/// Which independent variables an abstract function depends on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ArgSpec {
    OfX,
    OfY,
    OfXY,
}

impl ArgSpec {
    pub fn depends_on(self, v: &Sym) -> bool {
        match self {
            ArgSpec::OfX => v == &sym_x(),
            ArgSpec::OfY => v == &sym_y(),
            ArgSpec::OfXY => v == &sym_x() || v == &sym_y(),
        }
    }
}

/// An abstract function symbol together with its argument signature.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Func {
    pub name: Sym,
    pub args: ArgSpec,
}

impl Func {
    pub fn of_x(name: &str) -> Self {
        Func {
            name: Sym::new(name),
            args: ArgSpec::OfX,
        }
    }
    pub fn of_y(name: &str) -> Self {
        Func {
            name: Sym::new(name),
            args: ArgSpec::OfY,
        }
    }
    pub fn of_xy(name: &str) -> Self {
        Func {
            name: Sym::new(name),
            args: ArgSpec::OfXY,
        }
    }
}

/// One derivative of one abstract function: `d^dx/dx^dx d^dy/dy^dy f`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct JetVar {
    pub func: Func,
    pub dx: u32,
    pub dy: u32,
}

impl JetVar {
    pub fn order(&self) -> u32 {
        self.dx + self.dy
    }
}

/// Multiset of jets with multiplicities; sorted, powers >= 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct JetMonomial(pub Vec<(JetVar, u32)>);

impl JetMonomial {
    pub fn one() -> Self {
        JetMonomial(Vec::new())
    }

    pub fn power(j: JetVar, n: u32) -> Self {
        if n == 0 {
            JetMonomial::one()
        } else {
            JetMonomial(vec![(j, n)])
        }
    }

    pub fn single(j: JetVar) -> Self {
        JetMonomial(vec![(j, 1)])
    }

    pub fn mul(&self, other: &JetMonomial) -> JetMonomial {
        let mut map: BTreeMap<JetVar, u32> = BTreeMap::new();
        for (j, e) in self.0.iter().chain(other.0.iter()) {
            *map.entry(j.clone()).or_insert(0) += e;
        }
        JetMonomial(map.into_iter().collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn power_of(&self, j: &JetVar) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| v == j)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Remove one power of `j`; panics if absent.
    pub fn without_one(&self, j: &JetVar) -> JetMonomial {
        let mut v = self.0.clone();
        let idx = v.iter().position(|(w, _)| w == j).expect("jet not present");
        if v[idx].1 == 1 {
            v.remove(idx);
        } else {
            v[idx].1 -= 1;
        }
        JetMonomial(v)
    }
}

/// Polynomial in jets with `MPoly` coefficients; canonical normal form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    pub terms: BTreeMap<JetMonomial, MPoly>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        DiffPoly::from_mpoly(MPoly::one())
    }

    pub fn from_mpoly(p: MPoly) -> Self {
        let mut d = DiffPoly::zero();
        if !p.is_zero() {
            d.terms.insert(JetMonomial::one(), p);
        }
        d
    }

    pub fn var(s: impl Into<Sym>) -> Self {
        DiffPoly::from_mpoly(MPoly::var(s))
    }

    pub fn int(n: i64) -> Self {
        DiffPoly::from_mpoly(MPoly::int(n))
    }

    pub fn rational(p: i64, q: i64) -> Self {
        DiffPoly::from_mpoly(MPoly::rational(p, q))
    }

    /// The undifferentiated function value as an expression.
    pub fn func(f: &Func) -> Self {
        DiffPoly::jet(f, 0, 0)
    }

    pub fn jet(f: &Func, dx: u32, dy: u32) -> Self {
        let mut d = DiffPoly::zero();
        d.terms.insert(
            JetMonomial::single(JetVar {
                func: f.clone(),
                dx,
                dy,
            }),
            MPoly::one(),
        );
        d
    }

    /// Jet of a univariate function by total order.
    pub fn jet1(f: &Func, order: u32) -> Self {
        match f.args {
            ArgSpec::OfX => DiffPoly::jet(f, order, 0),
            ArgSpec::OfY => DiffPoly::jet(f, 0, order),
            ArgSpec::OfXY => panic!("jet1 needs a univariate function"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: JetMonomial, c: MPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &MPoly) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        let mut out = DiffPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &ExactScalar) -> DiffPoly {
        self.scale(&MPoly::constant(c.clone()))
    }

    pub fn pow(&self, n: u32) -> DiffPoly {
        let mut acc = DiffPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn max_jet_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(j, _)| j.order()))
            .max()
            .unwrap_or(0)
    }

    pub fn jet_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn functions(&self) -> Vec<Func> {
        let mut out: Vec<Func> = Vec::new();
        for m in self.terms.keys() {
            for (j, _) in &m.0 {
                if !out.contains(&j.func) {
                    out.push(j.func.clone());
                }
            }
        }
        out.sort();
        out
    }

    pub fn contains_func(&self, f: &Func) -> bool {
        self.terms
            .keys()
            .any(|m| m.0.iter().any(|(j, _)| &j.func == f))
    }

    pub fn contains_var(&self, s: &Sym) -> bool {
        self.terms.values().any(|c| c.contains_var(s))
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Total derivative with respect to `var`, chain rule on jets.
    pub fn dtotal(&self, var: &Sym) -> Result<DiffPoly> {
        self.dtotal_limit(var, MAX_JET_ORDER)
    }

    pub fn dtotal_limit(&self, var: &Sym, max_order: u32) -> Result<DiffPoly> {
        let is_x = var == &sym_x();
        let is_y = var == &sym_y();
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            // coefficient part
            out.add_term(m.clone(), c.diff(var));
            // jet part (only x and y drive the chain rule)
            if !is_x && !is_y {
                continue;
            }
            for (j, e) in &m.0 {
                if !j.func.args.depends_on(var) {
                    continue;
                }
                let bumped = JetVar {
                    func: j.func.clone(),
                    dx: j.dx + if is_x { 1 } else { 0 },
                    dy: j.dy + if is_y { 1 } else { 0 },
                };
                if bumped.order() > max_order {
                    return Err(Error::JetDepth {
                        func: j.func.name.name().to_string(),
                        order: bumped.order(),
                        max: max_order,
                    });
                }
                let rest = m.without_one(j);
                let with_bumped = rest.mul(&JetMonomial::single(bumped));
                out.add_term(with_bumped, c.scale(&ExactScalar::from_int(*e as i64)));
            }
        }
        Ok(out)
    }

    pub fn dtotal_n(&self, var: &Sym, n: u32) -> Result<DiffPoly> {
        let mut cur = self.clone();
        for _ in 0..n {
            cur = cur.dtotal(var)?;
        }
        Ok(cur)
    }

    /// The exact cofactor of `x^ex * y^ey` in the coefficients; summing
    /// `coeff_xy(ex, ey) * x^ex * y^ey` over all present patterns
    /// reconstructs the expression.
    pub fn coeff_xy(&self, ex: i32, ey: i32) -> DiffPoly {
        let x = sym_x();
        let y = sym_y();
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut keep = MPoly::zero();
            for (mono, s) in &c.terms {
                if mono.exponent(&x) == ex && mono.exponent(&y) == ey {
                    let stripped = mono
                        .mul(&Monomial::var_pow(x.clone(), -ex))
                        .mul(&Monomial::var_pow(y.clone(), -ey));
                    keep.add_term(stripped, s.clone());
                }
            }
            out.add_term(m.clone(), keep);
        }
        out
    }

    /// All `(ex, ey)` patterns present in the coefficients.
    pub fn xy_support(&self) -> Vec<(i32, i32)> {
        let x = sym_x();
        let y = sym_y();
        let mut set = std::collections::BTreeSet::new();
        for c in self.terms.values() {
            for mono in c.terms.keys() {
                set.insert((mono.exponent(&x), mono.exponent(&y)));
            }
        }
        set.into_iter().collect()
    }

    /// Coefficient of an exact jet monomial (the cofactor with jets removed).
    pub fn coeff_jets(&self, pattern: &JetMonomial) -> MPoly {
        self.terms.get(pattern).cloned().unwrap_or_else(MPoly::zero)
    }

    /// Split off the linear part in one jet: `self = coeff * j + rest`,
    /// failing if `j` appears nonlinearly.
    pub fn split_linear(&self, j: &JetVar) -> Result<(DiffPoly, DiffPoly)> {
        let mut coeff = DiffPoly::zero();
        let mut rest = DiffPoly::zero();
        for (m, c) in &self.terms {
            match m.power_of(j) {
                0 => rest.add_term(m.clone(), c.clone()),
                1 => coeff.add_term(m.without_one(j), c.clone()),
                _ => {
                    return Err(Error::NotPolynomial(format!(
                        "jet {:?} appears nonlinearly",
                        j
                    )))
                }
            }
        }
        Ok((coeff, rest))
    }

    /// Replace an abstract function (and all its jets) by an expression.
    pub fn subst_func(&self, f: &Func, replacement: &DiffPoly) -> Result<DiffPoly> {
        let mut cache: BTreeMap<(u32, u32), DiffPoly> = BTreeMap::new();
        cache.insert((0, 0), replacement.clone());
        let x = sym_x();
        let y = sym_y();
        let deriv = |dx: u32, dy: u32, cache: &mut BTreeMap<(u32, u32), DiffPoly>| -> Result<DiffPoly> {
            if let Some(v) = cache.get(&(dx, dy)) {
                return Ok(v.clone());
            }
            // build up recursively from lower orders
            for i in 0..=dx {
                for k in 0..=dy {
                    if cache.contains_key(&(i, k)) {
                        continue;
                    }
                    let prev = if i > 0 {
                        cache.get(&(i - 1, k)).unwrap().dtotal(&x)?
                    } else {
                        cache.get(&(i, k - 1)).unwrap().dtotal(&y)?
                    };
                    cache.insert((i, k), prev);
                }
            }
            Ok(cache.get(&(dx, dy)).unwrap().clone())
        };
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = DiffPoly::from_mpoly(c.clone());
            for (j, e) in &m.0 {
                let factor = if &j.func == f {
                    deriv(j.dx, j.dy, &mut cache)?
                } else {
                    let mut d = DiffPoly::zero();
                    d.terms
                        .insert(JetMonomial::single(j.clone()), MPoly::one());
                    d
                };
                acc = &acc * &factor.pow(*e);
            }
            out = out + acc;
        }
        Ok(out)
    }

    /// Substitute numeric-style polynomial values for ordinary variables.
    pub fn subst_var(&self, s: &Sym, value: &MPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.subst(s, value));
        }
        out
    }

    /// Numeric evaluation: `vars` binds ordinary variables, `jets` binds
    /// every jet present.
    pub fn eval_f64(
        &self,
        vars: &dyn Fn(&Sym) -> f64,
        jets: &dyn Fn(&JetVar) -> f64,
    ) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.eval_f64(vars);
            for (j, e) in &m.0 {
                t *= jets(j).powi(*e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Term-wise magnitudes, used to scale residuals.
    pub fn eval_f64_terms(
        &self,
        vars: &dyn Fn(&Sym) -> f64,
        jets: &dyn Fn(&JetVar) -> f64,
    ) -> (f64, f64) {
        let mut acc = 0.0;
        let mut scale: f64 = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.eval_f64(vars);
            for (j, e) in &m.0 {
                t *= jets(j).powi(*e as i32);
            }
            acc += t;
            scale = scale.max(t.abs());
        }
        (acc, scale)
    }

    /// Factor out a global power of `i` and the common monomial content so
    /// that the result has real coefficients whose leading coefficient is
    /// positive. Returns `(normalized, i_power, content)` where
    /// `self = i^i_power * content * normalized` and content is a monomial
    /// with a positive rational coefficient.
    pub fn normalize_real(&self) -> Result<(DiffPoly, u32, MPoly)> {
        if self.is_zero() {
            return Ok((DiffPoly::zero(), 0, MPoly::one()));
        }
        // global i power: all coefficients real, or all purely imaginary
        let all_real = self.is_real();
        let all_imag = self
            .terms
            .values()
            .flat_map(|c| c.terms.values())
            .all(|s| s.re.is_zero());
        let (ipow, real_form) = if all_real {
            (0u32, self.clone())
        } else if all_imag {
            // divide by i == multiply by -i
            (1u32, self.scale_scalar(&ExactScalar::new(
                num::rational::BigRational::from_integer(0.into()),
                num::rational::BigRational::from_integer((-1).into()),
            )))
        } else {
            return Err(Error::Inconsistent(
                "mixed real/imaginary coefficients; no global i factor".into(),
            ));
        };
        // common monomial content over all coefficient monomials
        let mut vars: Vec<Sym> = Vec::new();
        for c in real_form.terms.values() {
            for v in c.variables() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        let mut content = Monomial::one();
        for v in &vars {
            let e = real_form
                .terms
                .values()
                .flat_map(|c| c.terms.keys().map(|m| m.exponent(v)))
                .min()
                .unwrap_or(0);
            if e > 0 {
                content = content.mul(&Monomial::var_pow(v.clone(), e));
            }
        }
        // rational content
        let mut g: Option<BigRational> = None;
        for c in real_form.terms.values() {
            match (&g, c.rational_content()) {
                (_, None) => {
                    g = None;
                    break;
                }
                (None, Some(rc)) => g = Some(rc),
                (Some(acc), Some(rc)) => {
                    g = Some(BigRational::new(
                        num::integer::gcd(acc.numer().clone(), rc.numer().clone()).abs(),
                        num::integer::lcm(acc.denom().clone(), rc.denom().clone()).abs(),
                    ));
                }
            }
        }
        let mut factor_coeff = g.unwrap_or_else(|| BigRational::from_integer(1.into()));
        // sign: make the leading coefficient positive
        let lead = real_form
            .terms
            .iter()
            .next_back()
            .and_then(|(_, c)| c.terms.iter().next_back().map(|(_, s)| s.clone()))
            .unwrap();
        if lead.re.is_negative() {
            factor_coeff = -factor_coeff;
        }
        let inv = ExactScalar::new(factor_coeff.recip(), BigRational::from_integer(0.into()));
        let mut content_poly = MPoly::zero();
        content_poly.add_term(
            content.clone(),
            ExactScalar::new(factor_coeff.clone(), BigRational::from_integer(0.into())),
        );
        let mut inv_content = MPoly::zero();
        let inv_mono = Monomial(content.0.iter().map(|(s, e)| (s.clone(), -e)).collect());
        inv_content.add_term(inv_mono, inv);
        Ok((real_form.scale(&inv_content), ipow, content_poly))
    }

    /// Detect `self == r * other` for a rational `r`; returns `r`.
    pub fn ratio_to(&self, other: &DiffPoly) -> Option<BigRational> {
        if self.is_zero() && other.is_zero() {
            return Some(BigRational::from_integer(1.into()));
        }
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (ma, ca) = self.terms.iter().next_back()?;
        let cb = other.terms.get(ma)?;
        let (mono, sa) = ca.terms.iter().next_back()?;
        let sb = cb.terms.get(mono)?;
        if !sa.is_real() || !sb.is_real() || sb.re.is_zero() {
            return None;
        }
        let r = &sa.re / &sb.re;
        let scaled = other.scale(&MPoly::constant(ExactScalar::new(
            r.clone(),
            BigRational::from_integer(0.into()),
        )));
        if self.clone() - scaled == DiffPoly::zero() {
            Some(r)
        } else {
            None
        }
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: DiffPoly) -> DiffPoly {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl<'a> Add<&'a DiffPoly> for DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self;
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: DiffPoly) -> DiffPoly {
        self + rhs.neg()
    }
}

impl<'a> Sub<&'a DiffPoly> for DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self;
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone().neg());
        }
        out
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, c.neg())).collect(),
        }
    }
}

impl<'a, 'b> Mul<&'b DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

fn jet_label(j: &JetVar) -> String {
    let prime_total = j.dx + j.dy;
    match j.func.args {
        ArgSpec::OfXY => {
            if prime_total == 0 {
                format!("{}", j.func.name)
            } else {
                format!(
                    "{}_{}{}",
                    j.func.name,
                    "x".repeat(j.dx as usize),
                    "y".repeat(j.dy as usize)
                )
            }
        }
        _ => {
            if prime_total == 0 {
                format!("{}", j.func.name)
            } else if prime_total <= 3 {
                format!("{}{}", j.func.name, "'".repeat(prime_total as usize))
            } else {
                format!("{}^({})", j.func.name, prime_total)
            }
        }
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (j, e) in &m.0 {
                if *e == 1 {
                    write!(f, "*{}", jet_label(j))?;
                } else {
                    write!(f, "*{}^{}", jet_label(j), e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Func {
        Func::of_y("W")
    }

    #[test]
    fn dtotal_product_with_constant_factor() {
        // d/dx (W(y) * x) = W(y)
        let e = DiffPoly::func(&w()) * DiffPoly::var("x");
        let d = e.dtotal(&sym_x()).unwrap();
        assert_eq!(d, DiffPoly::func(&w()));
    }

    #[test]
    fn dtotal_leibniz() {
        // d/dy W^2 = 2 W W'
        let e = DiffPoly::func(&w()).pow(2);
        let d = e.dtotal(&sym_y()).unwrap();
        let expect = DiffPoly::int(2) * DiffPoly::func(&w()) * DiffPoly::jet1(&w(), 1);
        assert_eq!(d, expect);
    }

    #[test]
    fn mixed_partials_commute() {
        let v1 = Func::of_x("V1");
        let v2 = Func::of_y("V2");
        let e = DiffPoly::func(&v1) * DiffPoly::func(&v2);
        let a = e.dtotal(&sym_x()).unwrap().dtotal(&sym_y()).unwrap();
        let b = e.dtotal(&sym_y()).unwrap().dtotal(&sym_x()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn jet_depth_error() {
        let e = DiffPoly::jet1(&w(), MAX_JET_ORDER);
        assert!(matches!(
            e.dtotal(&sym_y()),
            Err(Error::JetDepth { .. })
        ));
    }

    #[test]
    fn coeff_xy_extraction() {
        // 3x^2y + 2x^2  ->  coeff at (2,1) is 3
        let x = DiffPoly::var("x");
        let y = DiffPoly::var("y");
        let p = DiffPoly::int(3) * x.pow(2) * y + DiffPoly::int(2) * x.pow(2);
        assert_eq!(p.coeff_xy(2, 1), DiffPoly::int(3));
        assert_eq!(p.coeff_xy(2, 0), DiffPoly::int(2));
        assert!(p.coeff_xy(0, 5).is_zero());
    }

    #[test]
    fn normalize_real_strips_i_and_content() {
        // 2*i*hbar^3 * (3 W' + 6 y)  given as  i*(6 hbar^3 W' + 12 hbar^3 y)
        let e = DiffPoly::jet1(&w(), 1)
            .scale(&(MPoly::int(6) * MPoly::var_pow("hbar", 3)))
            .scale(&MPoly::i())
            + DiffPoly::var("y").scale(&(MPoly::int(12) * MPoly::var_pow("hbar", 3)))
                .scale(&MPoly::i());
        let (norm, ipow, content) = e.normalize_real().unwrap();
        assert_eq!(ipow, 1);
        assert!(norm.is_real());
        let expect = DiffPoly::jet1(&w(), 1) + DiffPoly::int(2) * DiffPoly::var("y");
        assert_eq!(norm, expect);
        assert_eq!(content, MPoly::int(6) * MPoly::var_pow("hbar", 3));
    }
}
