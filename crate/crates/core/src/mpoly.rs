//! Sparse multivariate Laurent polynomials over the Gaussian rationals.
//!
//! Variables are named symbols (`x`, `y`, `hbar`, and any parameters such as
//! `A202`, `c2`, `k1`, ...). Exponents may be negative so that terms like
//! `c_{-2}/x^2` live in the same ring. Terms are kept in graded-lex order,
//! which makes the normal form canonical: two equal polynomials are
//! structurally identical.

use crate::scalar::ExactScalar;
use crate::sym::Sym;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Product of variable powers, sorted by symbol; exponents are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub Vec<(Sym, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Sym) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn var_pow(s: Sym, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s, e)])
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| *e as i64).sum()
    }

    pub fn exponent(&self, s: &Sym) -> i32 {
        self.0
            .iter()
            .find(|(v, _)| v == s)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Sym, i32> = BTreeMap::new();
        for (s, e) in self.0.iter().chain(other.0.iter()) {
            *map.entry(s.clone()).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    /// Removes one power of `s`; exponent may go negative.
    pub fn div_var(&self, s: &Sym) -> Monomial {
        self.mul(&Monomial::var_pow(s.clone(), -1))
    }

    pub fn contains(&self, s: &Sym) -> bool {
        self.exponent(s) != 0
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // graded lex (a true monomial order, compatible with multiplication):
        // total degree first, then exponents variable-by-variable in symbol
        // order, treating missing symbols as exponent zero.
        let c = self.total_degree().cmp(&other.total_degree());
        if c != Ordering::Equal {
            return c;
        }
        let mut a = self.0.iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            // exponent of each side on the earliest remaining symbol
            let (ea, eb) = match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => {
                    let (_, eb) = b.next().unwrap();
                    (0, *eb)
                }
                (Some(_), None) => {
                    let (_, ea) = a.next().unwrap();
                    (*ea, 0)
                }
                (Some((sa, _)), Some((sb, _))) => match sa.cmp(sb) {
                    Ordering::Equal => {
                        let (_, ea) = a.next().unwrap();
                        let (_, eb) = b.next().unwrap();
                        (*ea, *eb)
                    }
                    Ordering::Less => {
                        let (_, ea) = a.next().unwrap();
                        (*ea, 0)
                    }
                    Ordering::Greater => {
                        let (_, eb) = b.next().unwrap();
                        (0, *eb)
                    }
                },
            };
            let c = ea.cmp(&eb);
            if c != Ordering::Equal {
                return c;
            }
        }
    }
}

/// Sparse polynomial: monomial -> nonzero Gaussian-rational coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Monomial, ExactScalar>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        MPoly::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(ExactScalar::from_int(n))
    }

    pub fn rational(p: i64, q: i64) -> Self {
        MPoly::constant(ExactScalar::rational(p, q))
    }

    pub fn i() -> Self {
        MPoly::constant(ExactScalar::i())
    }

    pub fn var(s: impl Into<Sym>) -> Self {
        let mut p = MPoly::zero();
        p.terms.insert(Monomial::var(s.into()), ExactScalar::one());
        p
    }

    pub fn var_pow(s: impl Into<Sym>, e: i32) -> Self {
        let mut p = MPoly::zero();
        p.terms
            .insert(Monomial::var_pow(s.into(), e), ExactScalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.0.is_empty())
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        if self.is_zero() {
            Some(ExactScalar::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `s`.
    pub fn diff(&self, s: &Sym) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            if e != 0 {
                out.add_term(m.div_var(s), c * &ExactScalar::from_int(e as i64));
            }
        }
        out
    }

    /// Degree in one variable (0 for polynomials free of it; may be negative
    /// for pure Laurent parts).
    pub fn degree_in(&self, s: &Sym) -> i32 {
        self.terms
            .keys()
            .map(|m| m.exponent(s))
            .max()
            .unwrap_or(0)
    }

    pub fn min_degree_in(&self, s: &Sym) -> i32 {
        self.terms
            .keys()
            .map(|m| m.exponent(s))
            .min()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, s: &Sym) -> bool {
        self.terms.keys().any(|m| m.contains(s))
    }

    pub fn variables(&self) -> Vec<Sym> {
        let mut set: Vec<Sym> = Vec::new();
        for m in self.terms.keys() {
            for (s, _) in &m.0 {
                if !set.contains(s) {
                    set.push(s.clone());
                }
            }
        }
        set.sort();
        set
    }

    /// Coefficient of `s^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, s: &Sym, k: i32) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            if m.exponent(s) == k {
                out.add_term(m.mul(&Monomial::var_pow(s.clone(), -k)), c.clone());
            }
        }
        out
    }

    /// Substitute `s := value` (polynomial value, nonnegative powers only).
    pub fn subst(&self, s: &Sym, value: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            assert!(e >= 0, "cannot substitute into negative power of {s}");
            let rest = m.mul(&Monomial::var_pow(s.clone(), -e));
            let mut term = MPoly::zero();
            term.add_term(rest, c.clone());
            out = out + &term * &value.pow(e as u32);
        }
        out
    }

    /// Numeric evaluation; every variable must be bound. Negative exponents
    /// are evaluated as reciprocals.
    pub fn eval_f64(&self, bind: &dyn Fn(&Sym) -> f64) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for (s, e) in &m.0 {
                t *= bind(s).powi(*e);
            }
            acc += t;
        }
        acc
    }

    /// Exact division; returns `None` when `self` is not a multiple of `d`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        let (dm, dc) = d.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        if rem.is_zero() {
            return Some(quot);
        }
        // valuation bounds: for an exact quotient q, min-degree and the
        // per-variable minimum exponents of q are fixed by those of self and
        // d, which makes the division loop terminate on non-divisors
        let mindeg_q = rem.terms.keys().map(|m| m.total_degree()).min().unwrap()
            - d.terms.keys().map(|m| m.total_degree()).min().unwrap();
        let mut vars = self.variables();
        for v in d.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let minexp_q: Vec<(Sym, i32)> = vars
            .iter()
            .map(|v| (v.clone(), self.min_degree_in(v) - d.min_degree_in(v)))
            .collect();
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.terms.iter().next_back().unwrap();
                (m.clone(), c.clone())
            };
            // candidate quotient monomial
            let mut qmap: BTreeMap<Sym, i32> = rm.0.iter().cloned().collect();
            for (s, e) in &dm.0 {
                *qmap.entry(s.clone()).or_insert(0) -= e;
            }
            let qm = Monomial(qmap.into_iter().filter(|(_, e)| *e != 0).collect());
            if qm.total_degree() < mindeg_q
                || minexp_q.iter().any(|(v, lo)| qm.exponent(v) < *lo)
            {
                return None;
            }
            let qc = rc / dc.clone();
            let mut qterm = MPoly::zero();
            qterm.add_term(qm.clone(), qc.clone());
            let sub = &qterm * d;
            // leading terms must cancel or division fails
            let next = rem.clone() - sub;
            if next.terms.iter().next_back().map(|(m, _)| m) >= Some(&rm) && !next.is_zero() {
                return None;
            }
            quot.add_term(qm, qc);
            rem = next;
        }
        Some(quot)
    }

    /// Rational content: gcd of numerators over lcm of denominators of the
    /// real parts (all coefficients must be real and nonzero-real).
    pub fn rational_content(&self) -> Option<BigRational> {
        if self.is_zero() {
            return None;
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::from(1);
        for c in self.terms.values() {
            if !c.is_real() {
                return None;
            }
            g = num::integer::gcd(g, c.re.numer().abs());
            l = num::integer::lcm(l, c.re.denom().abs());
        }
        Some(BigRational::new(g, l))
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl<'a> Add<&'a MPoly> for MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self;
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self + rhs.neg()
    }
}

impl<'a> Sub<&'a MPoly> for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self;
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone().neg());
        }
        out
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .into_iter()
                .map(|(m, c)| (m, c.neg()))
                .collect(),
        }
    }
}

impl<'a, 'b> Mul<&'b MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (s, e) in &m.0 {
                if *e == 1 {
                    write!(f, "*{}", s)?;
                } else {
                    write!(f, "*{}^{}", s, e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::{sym_x, sym_y};

    #[test]
    fn arithmetic_and_canonical_form() {
        let x = MPoly::var("x");
        let y = MPoly::var("y");
        let p = (x.clone() + &y).pow(2);
        let q = x.clone().pow(2) + &(&(&MPoly::int(2) * &x) * &y) + &y.clone().pow(2);
        assert_eq!(p, q);
        assert!((p.clone() - q).is_zero());
    }

    #[test]
    fn diff_and_coeff() {
        let x = MPoly::var("x");
        let y = MPoly::var("y");
        // 3x^2y + 2x^2
        let p = &MPoly::int(3) * &(&x.pow(2) * &y) + &(&MPoly::int(2) * &x.pow(2));
        assert_eq!(p.diff(&sym_x()), {
            let t = &MPoly::int(6) * &(&x * &y);
            t + &(&MPoly::int(4) * &x)
        });
        let c = p.coeff_of(&sym_y(), 1);
        assert_eq!(c, &MPoly::int(3) * &x.pow(2));
    }

    #[test]
    fn laurent_exponents() {
        let x = MPoly::var("x");
        let inv2 = MPoly::var_pow("x", -2);
        let p = &x * &inv2; // x^{-1}
        assert_eq!(p, MPoly::var_pow("x", -1));
        assert_eq!(p.diff(&sym_x()), MPoly::int(-1) * MPoly::var_pow("x", -2));
    }

    #[test]
    fn exact_division() {
        let x = MPoly::var("x");
        let y = MPoly::var("y");
        let a = (x.clone() + &y).pow(3);
        let b = (x.clone() + &y).pow(1);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, (x + &y).pow(2));
        let c = MPoly::var("x") + MPoly::int(1);
        assert!(q.div_exact(&c).is_none());
    }
}
